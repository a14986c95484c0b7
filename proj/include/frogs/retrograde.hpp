#pragma once

#include "frogs/game.hpp"

#include <map>

namespace frogs {

inline constexpr std::size_t kRetrogradeCap = 10;
inline constexpr std::size_t kStoneRetrogradeCap = 7;

/// Exact outcome of every reachable state, found by backward induction over
/// the move graph. Independent of the matching machinery: it only uses
/// legal_moves and the terminal rule of the ruleset.
class RetrogradeTable {
public:
    /// Outcome of `position`, with winner and witness adjusted to its player to move.
    Outcome outcome(const Position& position) const;
    bool contains(const Position& position) const { return entries_.count(position) != 0; }

    /// Keyed by state; stored positions have Alice to move.
    const std::map<Position, Outcome, StateLess>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Who wins from the empty board.
    Player winner() const { return outcome(Position::start()).winner; }

private:
    friend RetrogradeTable solve_retrograde(const PointSet&, const Ruleset&, std::size_t);
    std::map<Position, Outcome, StateLess> entries_;
};

/// `cap` = 0 selects the default cap (kStoneRetrogradeCap for k_stone,
/// kRetrogradeCap otherwise). Throws GameError(set_too_large) above it.
RetrogradeTable solve_retrograde(const PointSet& set, const Ruleset& ruleset, std::size_t cap = 0);

} // namespace frogs
