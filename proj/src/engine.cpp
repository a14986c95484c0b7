#include "frogs/engine.hpp"

namespace frogs {

Engine::Engine(std::shared_ptr<const PointSet> set, Ruleset rules)
    : set_(std::move(set)), rules_(rules), certificate_(frogs::certificate(*set_, rules_))
{
    if (rules_.kind == Ruleset::Kind::k_stone && !certificate_.perfect()) {
        if (set_->size() > kStoneRetrogradeCap)
            throw UnsupportedRuleset("the stable " + std::to_string(rules_.stones + 1) +
                                     "-matching of this set is imperfect, so positions cannot be classified from "
                                     "it, and " + std::to_string(set_->size()) +
                                     " points exceeds the exhaustive-analysis cap of " +
                                     std::to_string(kStoneRetrogradeCap));
        oracle_ = solve_retrograde(*set_, rules_);
    }
}

Outcome Engine::evaluate(const Position& p) const
{
    if (oracle_)
        return oracle_->outcome(p);
    return classify(*set_, rules_, p, certificate_);
}

std::optional<Position> Engine::choose(const Position& p, Rng& rng) const
{
    auto options = moves(p);
    if (options.empty())
        return std::nullopt;
    if (!oracle_ && p.frogs < 2) {
        auto placement = opening_move(*set_, rules_, p, certificate_);
        if (placement.winning)
            return placement.result;
    }
    auto outcome = evaluate(p);
    if (outcome.status == Status::N && outcome.witness)
        return outcome.witness;
    return options[uniform_index(rng, options.size())];
}

} // namespace frogs
