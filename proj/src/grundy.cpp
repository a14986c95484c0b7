#include "frogs/grundy.hpp"

#include <algorithm>
#include <sstream>

namespace frogs {

unsigned mex(std::span<const unsigned> values)
{
    std::vector<char> seen(values.size() + 1, 0);
    for (unsigned v : values)
        if (v < seen.size())
            seen[v] = 1;
    unsigned m = 0;
    while (seen[m])
        ++m;
    return m;
}

unsigned GrundyTable::value(int i, int j) const
{
    if (i == j || i < 0 || j < 0 || static_cast<std::size_t>(i) >= n_ || static_cast<std::size_t>(j) >= n_)
        throw std::out_of_range("Grundy lookup needs two distinct valid indices");
    return values_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
}

std::vector<std::pair<int, int>> GrundyTable::zero_pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (const auto& e : ranked_)
        if (e.value == 0)
            out.emplace_back(e.i, e.j);
    std::sort(out.begin(), out.end());
    return out;
}

bool GrundyTable::interval_property(int x) const
{
    std::vector<char> seen(n_, 0);
    for (std::size_t y = 0; y < n_; ++y) {
        if (static_cast<int>(y) == x)
            continue;
        const unsigned v = value(x, static_cast<int>(y));
        if (v + 1 >= n_ || seen[v])
            return false;
        seen[v] = 1;
    }
    return true;
}

std::optional<int> GrundyTable::partner_with_value(int x, unsigned v) const
{
    for (std::size_t y = 0; y < n_; ++y)
        if (static_cast<int>(y) != x && value(x, static_cast<int>(y)) == v)
            return static_cast<int>(y);
    return std::nullopt;
}

std::string GrundyTable::export_text() const
{
    std::ostringstream os;
    for (const auto& e : ranked_)
        os << e.i << ' ' << e.j << ' ' << e.value << '\n';
    return os.str();
}

GrundyTable grundy_table(const PointSet& set)
{
    GrundyTable t;
    const std::size_t n = set.size();
    t.n_ = n;
    t.values_.assign(n * n, 0);
    t.ranked_.reserve(n * (n - 1) / 2);
    // used[p] lists values already assigned to pairs through p.
    std::vector<std::vector<unsigned>> used(n);
    std::vector<unsigned> scratch;
    for (const auto& p : set.pairs_by_distance()) {
        const auto& ui = used[static_cast<std::size_t>(p.i)];
        const auto& uj = used[static_cast<std::size_t>(p.j)];
        scratch.assign(ui.begin(), ui.end());
        scratch.insert(scratch.end(), uj.begin(), uj.end());
        const unsigned g = mex(scratch);
        t.values_[static_cast<std::size_t>(p.i) * n + static_cast<std::size_t>(p.j)] = g;
        t.values_[static_cast<std::size_t>(p.j) * n + static_cast<std::size_t>(p.i)] = g;
        t.ranked_.push_back({p.i, p.j, g});
        used[static_cast<std::size_t>(p.i)].push_back(g);
        used[static_cast<std::size_t>(p.j)].push_back(g);
    }
    return t;
}

std::vector<std::pair<int, int>> mex_violations(const PointSet& set, const GrundyTable& table)
{
    std::vector<std::pair<int, int>> bad;
    const int n = static_cast<int>(set.size());
    std::vector<unsigned> options;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = set.squared_distance(i, j);
            options.clear();
            for (int z = 0; z < n; ++z) {
                if (z == i || z == j)
                    continue;
                if (set.squared_distance(i, z) < d)
                    options.push_back(table.value(i, z));
                if (set.squared_distance(j, z) < d)
                    options.push_back(table.value(j, z));
            }
            if (table.value(i, j) != mex(options))
                bad.emplace_back(i, j);
        }
    }
    return bad;
}

unsigned xor_sum(std::span<const unsigned> values)
{
    unsigned acc = 0;
    for (unsigned v : values)
        acc ^= v;
    return acc;
}

namespace {

unsigned pond_sum(const PondPosition& position, std::span<const GrundyTable> tables)
{
    if (position.size() != tables.size())
        throw std::invalid_argument("one Grundy table per pond is required");
    unsigned acc = 0;
    for (std::size_t k = 0; k < position.size(); ++k)
        acc ^= tables[k].value(position[k].x, position[k].y);
    return acc;
}

} // namespace

Outcome kpond_classify(const PondPosition& position, std::span<const GrundyTable> tables, Player to_move)
{
    const Status s = pond_sum(position, tables) == 0 ? Status::P : Status::N;
    return {s, s == Status::N ? to_move : other(to_move), std::nullopt};
}

PondMove kpond_winning_move(const PondPosition& position, std::span<const GrundyTable> tables,
                            std::span<const PointSet> sets)
{
    const unsigned g = pond_sum(position, tables);
    if (g == 0)
        throw NoWinningMove("nim-sum is zero: every move loses");
    if (sets.size() != position.size())
        throw std::invalid_argument("one point set per pond is required");
    unsigned top = 1;
    while ((top << 1) <= g)
        top <<= 1;
    for (std::size_t k = 0; k < position.size(); ++k) {
        const auto [x, y] = position[k];
        const unsigned gi = tables[k].value(x, y);
        if ((gi & top) == 0)
            continue;
        const unsigned target = gi ^ g;
        const auto& set = sets[k];
        const double d = set.squared_distance(x, y);
        // Closest qualifying jump first, so the choice is deterministic.
        std::optional<PondMove> best;
        double best_d = kInfinity;
        for (int z = 0; z < static_cast<int>(set.size()); ++z) {
            if (z == x || z == y)
                continue;
            const double dx = set.squared_distance(x, z);
            if (dx < d && tables[k].value(x, z) == target && dx < best_d) {
                best_d = dx;
                best = PondMove{k, position[k], {std::min(x, z), std::max(x, z)}};
            }
            const double dy = set.squared_distance(y, z);
            if (dy < d && tables[k].value(y, z) == target && dy < best_d) {
                best_d = dy;
                best = PondMove{k, position[k], {std::min(y, z), std::max(y, z)}};
            }
        }
        if (best)
            return *best;
        throw std::logic_error("Grundy table lacks a move to value " + std::to_string(target));
    }
    throw std::logic_error("no pond carries the top bit of the nim-sum");
}

std::optional<int> bob_opening(const PondPosition& full_ponds, int x_last, std::span<const GrundyTable> tables)
{
    if (tables.size() != full_ponds.size() + 1)
        throw std::invalid_argument("bob_opening needs one table per full pond plus the last pond");
    const unsigned h = pond_sum(full_ponds, tables.first(full_ponds.size()));
    return tables.back().partner_with_value(x_last, h);
}

} // namespace frogs
