#pragma once

#include "frogs/engine.hpp"

#include <functional>
#include <string>
#include <vector>

namespace frogs {

/// Picks the next position among the legal successors of the current one.
using Strategy = std::function<Position(const Engine&, const Position&, Rng&)>;

Strategy engine_strategy();
Strategy random_strategy();

struct MoveRecord {
    Player player = Player::alice;
    int frog_from = -1;  // -1 for a placement
    int frog_to = -1;
    std::vector<int> stones_after;
    Status annotation = Status::P;  // status of the position after the move
    Position after;
};

struct Transcript {
    std::vector<MoveRecord> moves;
    Player winner = Player::alice;
    Position final_position;
};

/// Plays from `start` until the player to move is stuck. Each strategy gets
/// its own generator derived from `seed`. Throws
/// GameError(illegal_move_by_strategy) if a strategy leaves the legal set.
Transcript play_out(const Engine& engine, const Strategy& alice, const Strategy& bob, std::uint64_t seed,
                    const Position& start = Position::start());

Transcript play_out(const PointSet& set, const Ruleset& rules, const Strategy& alice, const Strategy& bob,
                    std::uint64_t seed);

/// Which frog moved between two consecutive positions: {from, to}; from is
/// -1 for placements.
std::pair<int, int> frog_move(const Ruleset& rules, const Position& before, const Position& after);

/// CSV with header "player,frog_from,frog_to,stones_after"; stones are
/// ';'-separated.
std::string transcript_csv(const Transcript& t);

} // namespace frogs
