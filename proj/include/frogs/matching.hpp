#pragma once

#include "frogs/geometry.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frogs {

struct MatchingVariant {
    enum class Kind { plain, misere, two_color, fussy, multi };

    Kind kind = Kind::plain;
    int m = 1;  // partner capacity; only multi may exceed 1

    static MatchingVariant plain() { return {Kind::plain, 1}; }
    static MatchingVariant misere() { return {Kind::misere, 1}; }
    static MatchingVariant two_color() { return {Kind::two_color, 1}; }
    static MatchingVariant fussy() { return {Kind::fussy, 1}; }
    static MatchingVariant multi(int m);

    int capacity() const noexcept { return m; }
    bool needs_colors() const noexcept { return kind == Kind::two_color || kind == Kind::fussy; }

    /// "plain", "misere", "two_color", "fussy", "multi:3"
    std::string name() const;
    static MatchingVariant parse(const std::string& text);

    friend bool operator==(const MatchingVariant&, const MatchingVariant&) = default;
};

class MatchingError : public std::runtime_error {
public:
    enum class Kind { missing_colors, malformed_matching, set_too_large };
    MatchingError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Partner lists for every point. A point with fewer than `capacity`
/// partners has partner distance infinity.
class Matching {
public:
    Matching(std::size_t n, MatchingVariant variant);

    /// Adds {i, j}. Only checks indices; structure is checked by verify_stability.
    void link(int i, int j);

    std::size_t size() const noexcept { return partners_.size(); }
    const MatchingVariant& variant() const noexcept { return variant_; }

    std::span<const int> partners(int i) const { return partners_.at(static_cast<std::size_t>(i)); }
    /// The partner when capacity is 1.
    std::optional<int> partner(int i) const;
    bool are_partners(int i, int j) const;
    bool complete(int i) const { return partners(i).size() >= static_cast<std::size_t>(variant_.capacity()); }

    /// Points with fewer than `capacity` partners.
    std::vector<int> incomplete_points() const;
    bool perfect() const { return incomplete_points().empty(); }

    /// Each pair once, i < j, lexicographic.
    std::vector<std::pair<int, int>> pairs() const;

    friend bool operator==(const Matching& a, const Matching& b)
    {
        return a.variant_ == b.variant_ && a.partners_ == b.partners_;
    }

private:
    MatchingVariant variant_;
    std::vector<std::vector<int>> partners_;  // kept sorted
};

/// Static part of the variant's pair constraint: colour rules and the
/// misère ban on mutually nearest neighbours of the whole set.
bool pair_eligible(const PointSet& set, const MatchingVariant& variant, int i, int j);

/// Unique stable matching for the variant. Walks pairs in increasing
/// distance and links a pair whenever it is eligible and both ends still have
/// spare capacity.
Matching compute_matching(const PointSet& set, const MatchingVariant& variant);

struct UnstablePair {
    int x = -1;
    int y = -1;
    double distance = 0.0;
    double x_partner_distance = 0.0;  // D(x), may be infinity
    double y_partner_distance = 0.0;
};

/// Every eligible, non-partnered pair whose two ends both strictly prefer
/// each other, by brute force. Throws MatchingError(malformed_matching) if the
/// matching is asymmetric, has self or duplicate partners, exceeds capacity or
/// links a pair the variant forbids.
std::vector<UnstablePair> verify_stability(const PointSet& set, const MatchingVariant& variant,
                                           const Matching& matching);

inline constexpr std::size_t kEnumerationCap = 10;

/// All variant-eligible matchings without unstable pairs, by exhaustive
/// search over edge subsets. Uniqueness oracle for compute_matching.
std::vector<Matching> enumerate_stable_bruteforce(const PointSet& set, const MatchingVariant& variant,
                                                  std::size_t cap = kEnumerationCap);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// D(x): distance to x's farthest partner, infinity while x has spare capacity.
double farthest_partner_distance(const PointSet& set, const Matching& matching, int x);
double farthest_partner_squared(const PointSet& set, const Matching& matching, int x);

/// x desires y when |x - y| <= D(x). For a two-colour matching only points of
/// the other colour can be desired.
bool desires(const PointSet& set, const Matching& matching, int x, int y);

/// Line format: "variant=<name>" then one "i j" line per pair (i < j).
std::string export_matching(const Matching& matching);

} // namespace frogs
