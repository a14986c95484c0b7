#pragma once

#include "frogs/game.hpp"
#include "frogs/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace frogs {

/// Least natural number not in `values`.
unsigned mex(std::span<const unsigned> values);

/// Sprague-Grundy value of every unordered pair of a point set for plain
/// friendly frogs. Stored as a dense symmetric table; O(n^2) memory.
class GrundyTable {
public:
    std::size_t size() const noexcept { return n_; }
    unsigned value(int i, int j) const;

    /// Pairs with their values in increasing distance order.
    struct Entry {
        int i;
        int j;
        unsigned value;
    };
    const std::vector<Entry>& by_rank() const noexcept { return ranked_; }

    /// Pairs labelled 0; these form the stable matching.
    std::vector<std::pair<int, int>> zero_pairs() const;

    /// Whether {G(x, y) : y != x} is exactly {0, ..., n-2}. Holds a.s. for
    /// Poisson processes but can fail on finite sets.
    bool interval_property(int x) const;

    /// Unique y with G(x, y) == value, if any. Values at a point are distinct.
    std::optional<int> partner_with_value(int x, unsigned value) const;

    /// "i j G" lines in distance order.
    std::string export_text() const;

private:
    friend GrundyTable grundy_table(const PointSet&);
    std::size_t n_ = 0;
    std::vector<unsigned> values_;
    std::vector<Entry> ranked_;
};

/// Walks pairs by increasing distance; each pair gets the mex of the values
/// already on pairs through either of its points, which are exactly the
/// closer pairs sharing one point with it.
GrundyTable grundy_table(const PointSet& set);

/// Re-derives every value from its move set and reports pairs where the
/// stored value is not the mex. Empty for a correct table.
std::vector<std::pair<int, int>> mex_violations(const PointSet& set, const GrundyTable& table);

// ---------------------------------------------------------------------------
// Sums of ponds

unsigned xor_sum(std::span<const unsigned> values);

struct PondFrogs {
    int x = -1;
    int y = -1;
};

/// One pair of frogs per pond; pond i lives on point set i.
using PondPosition = std::vector<PondFrogs>;

Outcome kpond_classify(const PondPosition& position, std::span<const GrundyTable> tables, Player to_move = Player::alice);

class NoWinningMove : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PondMove {
    std::size_t pond = 0;
    PondFrogs before;
    PondFrogs after;
};

/// Move in the pond whose value carries the top bit of the nim-sum, to the
/// pair valued g_i xor g. Throws NoWinningMove for P-positions.
PondMove kpond_winning_move(const PondPosition& position, std::span<const GrundyTable> tables,
                            std::span<const PointSet> sets);

/// Bob's placement in the last pond given Alice's frogs elsewhere and her
/// single frog `x_last` in the last pond: the y with G(x_last, y) equal to
/// the nim-sum of the other ponds. Empty when no such y exists.
std::optional<int> bob_opening(const PondPosition& full_ponds, int x_last, std::span<const GrundyTable> tables);

} // namespace frogs
