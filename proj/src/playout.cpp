#include "frogs/playout.hpp"

#include <algorithm>
#include <sstream>

namespace frogs {

Strategy engine_strategy()
{
    return [](const Engine& engine, const Position& p, Rng& rng) {
        auto choice = engine.choose(p, rng);
        if (!choice)
            throw GameError(GameError::Kind::invalid_position, "engine asked to move in a terminal position");
        return *choice;
    };
}

Strategy random_strategy()
{
    return [](const Engine& engine, const Position& p, Rng& rng) {
        auto options = engine.moves(p);
        if (options.empty())
            throw GameError(GameError::Kind::invalid_position, "random player asked to move in a terminal position");
        return options[uniform_index(rng, options.size())];
    };
}

std::pair<int, int> frog_move(const Ruleset& rules, const Position& before, const Position& after)
{
    if (before.frogs == 0)
        return {-1, after.x};
    if (before.frogs == 1)
        return {-1, after.x == before.x && after.frogs == 2 ? after.y : after.x};
    if (rules.ordered())
        return {before.y, after.x};
    const bool x_stays = after.x == before.x || after.y == before.x;
    const int from = x_stays ? before.y : before.x;
    const int stay = x_stays ? before.x : before.y;
    const int to = after.x == stay ? after.y : after.x;
    return {from, to};
}

Transcript play_out(const Engine& engine, const Strategy& alice, const Strategy& bob, std::uint64_t seed,
                    const Position& start)
{
    Rng alice_rng(derive_seed(seed, 1));
    Rng bob_rng(derive_seed(seed, 2));
    Transcript t;
    Position current = start;
    for (;;) {
        auto options = engine.moves(current);
        if (options.empty())
            break;
        const Player mover = current.to_move;
        Position next = mover == Player::alice ? alice(engine, current, alice_rng) : bob(engine, current, bob_rng);
        const bool legal = std::any_of(options.begin(), options.end(), [&](const Position& o) {
            return o.same_state(next) && o.to_move == next.to_move;
        });
        if (!legal)
            throw GameError(GameError::Kind::illegal_move_by_strategy,
                            std::string(to_string(mover)) + " played illegal move " + to_string(current) + " -> " +
                                to_string(next));
        MoveRecord rec;
        rec.player = mover;
        std::tie(rec.frog_from, rec.frog_to) = frog_move(engine.rules(), current, next);
        rec.stones_after = next.stones;
        rec.annotation = engine.evaluate(next).status;
        rec.after = next;
        t.moves.push_back(std::move(rec));
        current = std::move(next);
    }
    t.winner = engine.stuck_winner(current);
    t.final_position = current;
    return t;
}

Transcript play_out(const PointSet& set, const Ruleset& rules, const Strategy& alice, const Strategy& bob,
                    std::uint64_t seed)
{
    Engine engine(set, rules);
    return play_out(engine, alice, bob, seed);
}

std::string transcript_csv(const Transcript& t)
{
    std::ostringstream os;
    os << "player,frog_from,frog_to,stones_after\n";
    for (const auto& m : t.moves) {
        os << to_string(m.player) << ',' << m.frog_from << ',' << m.frog_to << ',';
        for (std::size_t k = 0; k < m.stones_after.size(); ++k)
            os << (k ? ";" : "") << m.stones_after[k];
        os << '\n';
    }
    return os.str();
}

} // namespace frogs
