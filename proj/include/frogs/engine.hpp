#pragma once

#include "frogs/game.hpp"
#include "frogs/retrograde.hpp"
#include "frogs/seeding.hpp"

#include <memory>
#include <optional>

namespace frogs {

class UnsupportedRuleset : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point set, a ruleset and the certificate matching, bundled for play.
///
/// Positions are classified from the certificate. The one case the
/// certificate cannot decide (k_stone with an imperfect (k+1)-matching) falls
/// back to the retrograde table when the set is small enough; larger sets are
/// refused with UnsupportedRuleset.
class Engine {
public:
    Engine(std::shared_ptr<const PointSet> set, Ruleset rules);
    Engine(PointSet set, Ruleset rules) : Engine(std::make_shared<const PointSet>(std::move(set)), rules) {}

    const PointSet& set() const noexcept { return *set_; }
    std::shared_ptr<const PointSet> shared_set() const noexcept { return set_; }
    const Ruleset& rules() const noexcept { return rules_; }
    const Matching& certificate() const noexcept { return certificate_; }
    bool uses_oracle() const noexcept { return oracle_.has_value(); }

    std::vector<Position> moves(const Position& p) const { return legal_moves(*set_, rules_, p); }
    Outcome evaluate(const Position& p) const;

    /// A winning move if the mover has one, otherwise a uniformly random legal
    /// move. Empty when the mover has no legal move.
    std::optional<Position> choose(const Position& p, Rng& rng) const;

    /// Winner when the player to move in `p` has no legal move.
    Player stuck_winner(const Position& p) const
    {
        return rules_.misere_play() ? p.to_move : other(p.to_move);
    }

private:
    std::shared_ptr<const PointSet> set_;
    Ruleset rules_;
    Matching certificate_;
    std::optional<RetrogradeTable> oracle_;
};

} // namespace frogs
