#include "frogs/matching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frogs {

MatchingVariant MatchingVariant::multi(int m)
{
    if (m < 1)
        throw std::invalid_argument("multi-matching needs m >= 1");
    return {Kind::multi, m};
}

std::string MatchingVariant::name() const
{
    switch (kind) {
    case Kind::plain: return "plain";
    case Kind::misere: return "misere";
    case Kind::two_color: return "two_color";
    case Kind::fussy: return "fussy";
    case Kind::multi: return "multi:" + std::to_string(m);
    }
    return "plain";
}

MatchingVariant MatchingVariant::parse(const std::string& text)
{
    if (text == "plain") return plain();
    if (text == "misere") return misere();
    if (text == "two_color" || text == "two-color") return two_color();
    if (text == "fussy") return fussy();
    if (text.rfind("multi:", 0) == 0) {
        std::size_t used = 0;
        int m = std::stoi(text.substr(6), &used);
        if (used != text.size() - 6)
            throw std::invalid_argument("bad multi capacity in '" + text + "'");
        return multi(m);
    }
    throw std::invalid_argument("unknown matching variant '" + text + "'");
}

Matching::Matching(std::size_t n, MatchingVariant variant) : variant_(variant), partners_(n) {}

void Matching::link(int i, int j)
{
    const auto n = static_cast<int>(partners_.size());
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("matching index out of range");
    auto insert = [](std::vector<int>& v, int x) { v.insert(std::upper_bound(v.begin(), v.end(), x), x); };
    insert(partners_[static_cast<std::size_t>(i)], j);
    if (i != j)
        insert(partners_[static_cast<std::size_t>(j)], i);
}

std::optional<int> Matching::partner(int i) const
{
    auto p = partners(i);
    if (p.empty())
        return std::nullopt;
    return p.front();
}

bool Matching::are_partners(int i, int j) const
{
    auto p = partners(i);
    return std::binary_search(p.begin(), p.end(), j);
}

std::vector<int> Matching::incomplete_points() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < partners_.size(); ++i)
        if (partners_[i].size() < static_cast<std::size_t>(variant_.capacity()))
            out.push_back(static_cast<int>(i));
    return out;
}

std::vector<std::pair<int, int>> Matching::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < partners_.size(); ++i)
        for (int j : partners_[i])
            if (static_cast<int>(i) < j)
                out.emplace_back(static_cast<int>(i), j);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_colors(const PointSet& set, const MatchingVariant& variant)
{
    if (variant.needs_colors() && !set.has_colors())
        throw MatchingError(MatchingError::Kind::missing_colors,
                            "variant " + variant.name() + " needs coloured points");
}

} // namespace

bool pair_eligible(const PointSet& set, const MatchingVariant& variant, int i, int j)
{
    if (i == j)
        return false;
    switch (variant.kind) {
    case MatchingVariant::Kind::plain:
    case MatchingVariant::Kind::multi:
        return true;
    case MatchingVariant::Kind::misere:
        return !set.mutually_nearest(i, j);
    case MatchingVariant::Kind::two_color:
        return set.color(i) != set.color(j);
    case MatchingVariant::Kind::fussy:
        return !(set.color(i) == Color::red && set.color(j) == Color::red);
    }
    return false;
}

Matching compute_matching(const PointSet& set, const MatchingVariant& variant)
{
    require_colors(set, variant);
    Matching matching(set.size(), variant);
    const auto cap = static_cast<std::size_t>(variant.capacity());
    std::vector<std::size_t> degree(set.size(), 0);
    std::size_t open = set.size();
    for (const auto& p : set.pairs_by_distance()) {
        if (open < 2)
            break;
        auto& di = degree[static_cast<std::size_t>(p.i)];
        auto& dj = degree[static_cast<std::size_t>(p.j)];
        if (di >= cap || dj >= cap)
            continue;
        if (!pair_eligible(set, variant, p.i, p.j))
            continue;
        matching.link(p.i, p.j);
        if (++di == cap) --open;
        if (++dj == cap) --open;
    }
    return matching;
}

double farthest_partner_squared(const PointSet& set, const Matching& matching, int x)
{
    if (!matching.complete(x))
        return kInfinity;
    double best = 0.0;
    for (int p : matching.partners(x))
        best = std::max(best, set.squared_distance(x, p));
    return best;
}

double farthest_partner_distance(const PointSet& set, const Matching& matching, int x)
{
    return std::sqrt(farthest_partner_squared(set, matching, x));
}

bool desires(const PointSet& set, const Matching& matching, int x, int y)
{
    if (x == y)
        throw std::invalid_argument("desires needs two distinct points");
    if (matching.variant().kind == MatchingVariant::Kind::two_color && set.color(x) == set.color(y))
        return false;
    return set.squared_distance(x, y) <= farthest_partner_squared(set, matching, x);
}

std::vector<UnstablePair> verify_stability(const PointSet& set, const MatchingVariant& variant,
                                           const Matching& matching)
{
    using K = MatchingError::Kind;
    require_colors(set, variant);
    if (matching.size() != set.size())
        throw MatchingError(K::malformed_matching, "matching size differs from point count");
    if (matching.variant().capacity() != variant.capacity())
        throw MatchingError(K::malformed_matching, "matching capacity differs from variant");
    const int n = static_cast<int>(set.size());
    for (int i = 0; i < n; ++i) {
        auto ps = matching.partners(i);
        if (ps.size() > static_cast<std::size_t>(variant.capacity()))
            throw MatchingError(K::malformed_matching, "point " + std::to_string(i) + " exceeds partner capacity");
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const int j = ps[k];
            if (j == i)
                throw MatchingError(K::malformed_matching, "point " + std::to_string(i) + " is its own partner");
            if (k > 0 && ps[k - 1] == j)
                throw MatchingError(K::malformed_matching, "point " + std::to_string(i) + " lists a partner twice");
            if (!matching.are_partners(j, i))
                throw MatchingError(K::malformed_matching, "partner lists of " + std::to_string(i) + " and " +
                                                               std::to_string(j) + " disagree");
            if (!pair_eligible(set, variant, i, j))
                throw MatchingError(K::malformed_matching, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                                               ") is forbidden by variant " + variant.name());
        }
    }

    std::vector<double> reach(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        reach[static_cast<std::size_t>(i)] = farthest_partner_squared(set, matching, i);

    std::vector<UnstablePair> unstable;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!pair_eligible(set, variant, i, j) || matching.are_partners(i, j))
                continue;
            const double d2 = set.squared_distance(i, j);
            if (reach[static_cast<std::size_t>(i)] > d2 && reach[static_cast<std::size_t>(j)] > d2)
                unstable.push_back({i, j, std::sqrt(d2), std::sqrt(reach[static_cast<std::size_t>(i)]),
                                    std::sqrt(reach[static_cast<std::size_t>(j)])});
        }
    }
    return unstable;
}

std::vector<Matching> enumerate_stable_bruteforce(const PointSet& set, const MatchingVariant& variant,
                                                  std::size_t cap)
{
    require_colors(set, variant);
    if (set.size() > cap)
        throw MatchingError(MatchingError::Kind::set_too_large,
                            "exhaustive enumeration is capped at " + std::to_string(cap) + " points");
    const int n = static_cast<int>(set.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pair_eligible(set, variant, i, j))
                edges.emplace_back(i, j);

    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<char> chosen(edges.size(), 0);
    std::vector<Matching> stable;

    // Depth-first over include/exclude decisions in edge index order.
    auto recurse = [&](auto&& self, std::size_t e) -> void {
        if (e == edges.size()) {
            Matching m(set.size(), variant);
            for (std::size_t k = 0; k < edges.size(); ++k)
                if (chosen[k])
                    m.link(edges[k].first, edges[k].second);
            if (verify_stability(set, variant, m).empty())
                stable.push_back(std::move(m));
            return;
        }
        self(self, e + 1);
        auto [i, j] = edges[e];
        auto& di = degree[static_cast<std::size_t>(i)];
        auto& dj = degree[static_cast<std::size_t>(j)];
        if (di < variant.capacity() && dj < variant.capacity()) {
            ++di; ++dj;
            chosen[e] = 1;
            self(self, e + 1);
            chosen[e] = 0;
            --di; --dj;
        }
    };
    recurse(recurse, 0);
    return stable;
}

std::string export_matching(const Matching& matching)
{
    std::ostringstream os;
    os << "variant=" << matching.variant().name() << '\n';
    for (auto [i, j] : matching.pairs())
        os << i << ' ' << j << '\n';
    return os.str();
}

} // namespace frogs
