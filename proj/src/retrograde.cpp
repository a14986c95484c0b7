#include "frogs/retrograde.hpp"

#include <algorithm>

namespace frogs {

Outcome RetrogradeTable::outcome(const Position& position) const
{
    auto it = entries_.find(position);
    if (it == entries_.end())
        throw std::out_of_range("state " + to_string(position) + " is not in the table");
    Outcome out = it->second;
    out.winner = out.status == Status::N ? position.to_move : other(position.to_move);
    if (out.witness)
        out.witness->to_move = other(position.to_move);
    return out;
}

namespace {

std::vector<Position> two_frog_states(const PointSet& set, const Ruleset& rules)
{
    const int n = static_cast<int>(set.size());
    std::vector<Position> states;
    auto add = [&](Position p) {
        try {
            check_position(set, rules, p);
        } catch (const GameError&) {
            return;
        }
        if (rules.kind != Ruleset::Kind::k_stone) {
            states.push_back(std::move(p));
            return;
        }
        // Every stone set of the size a mover would place.
        std::vector<int> free;
        for (int i = 0; i < n; ++i)
            if (i != p.x && i != p.y)
                free.push_back(i);
        const auto count = rules.stone_count(free.size());
        std::vector<int> chosen;
        auto recurse = [&](auto&& self, std::size_t from) -> void {
            if (chosen.size() == count) {
                Position q = p;
                q.stones = chosen;
                states.push_back(std::move(q));
                return;
            }
            for (std::size_t k = from; k < free.size(); ++k) {
                chosen.push_back(free[k]);
                self(self, k + 1);
                chosen.pop_back();
            }
        };
        recurse(recurse, 0);
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b)
                continue;
            if (rules.ordered())
                add(Position::ordered_pair(a, b));
            else if (a < b)
                add(Position::pair(a, b));
        }
    }
    return states;
}

} // namespace

RetrogradeTable solve_retrograde(const PointSet& set, const Ruleset& rules, std::size_t cap)
{
    if (cap == 0)
        cap = rules.kind == Ruleset::Kind::k_stone ? kStoneRetrogradeCap : kRetrogradeCap;
    if (set.size() > cap)
        throw GameError(GameError::Kind::set_too_large,
                        "retrograde analysis is capped at " + std::to_string(cap) + " points for " + rules.name());
    if (rules.needs_colors() && !set.has_colors())
        throw GameError(GameError::Kind::missing_colors, "ruleset " + rules.name() + " needs coloured points");

    RetrogradeTable table;
    auto& entries = table.entries_;

    auto solve = [&](const Position& state) {
        auto moves = legal_moves(set, rules, state);
        Outcome out;
        out.winner = other(state.to_move);
        if (moves.empty()) {
            out.status = rules.misere_play() ? Status::N : Status::P;
        } else {
            out.status = Status::P;
            for (auto& next : moves) {
                auto it = entries.find(next);
                if (it == entries.end())
                    throw std::logic_error("successor " + to_string(next) + " solved out of order");
                if (it->second.status == Status::P) {
                    out.status = Status::N;
                    out.witness = next;
                    break;
                }
            }
        }
        if (out.status == Status::N)
            out.winner = state.to_move;
        entries.emplace(state, std::move(out));
    };

    // Moves strictly shrink the frog distance, so increasing distance is a
    // topological order of the two-frog part of the move graph.
    auto states = two_frog_states(set, rules);
    std::stable_sort(states.begin(), states.end(), [&](const Position& a, const Position& b) {
        return set.squared_distance(a.x, a.y) < set.squared_distance(b.x, b.y);
    });
    for (const auto& s : states)
        solve(s);

    const Position start = Position::start();
    for (auto& one : legal_moves(set, rules, start)) {
        one.to_move = Player::alice;  // stored states are keyed with Alice to move
        solve(one);
    }
    solve(start);
    return table;
}

} // namespace frogs
