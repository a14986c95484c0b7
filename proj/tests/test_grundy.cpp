#include "frogs/grundy.hpp"
#include "frogs/retrograde.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace frogs;
using oracle::line;

TEST_CASE("mex")
{
    CHECK(mex(std::vector<unsigned>{}) == 0);
    CHECK(mex(std::vector<unsigned>{0, 1, 3}) == 2);
    CHECK(mex(std::vector<unsigned>{1, 2}) == 0);
    CHECK(mex(std::vector<unsigned>{3, 0, 2, 1, 1}) == 4);
}

TEST_CASE("values on four points")
{
    const auto set = line({0, 1, 3, 7});
    const auto t = grundy_table(set);
    CHECK(t.value(0, 1) == 0);
    CHECK(t.value(1, 2) == 1);
    CHECK(t.value(0, 2) == 2);
    CHECK(t.value(2, 3) == 0);
    CHECK(t.value(1, 3) == 2);
    CHECK(t.value(0, 3) == 1);
    CHECK(t.value(3, 0) == 1);
    CHECK(t.zero_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    CHECK(t.partner_with_value(1, 2) == 3);
    CHECK_FALSE(t.partner_with_value(1, 3));
    CHECK(t.interval_property(0));
    CHECK(t.export_text() == "0 1 0\n1 2 1\n0 2 2\n2 3 0\n1 3 2\n0 3 1\n");
    CHECK(mex_violations(set, t).empty());
}

TEST_CASE("table equals both independent computations")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 2 + seed % 7;
        const auto set = oracle::random_set(n, 1 + static_cast<int>(seed % 3), seed);
        const auto t = grundy_table(set);
        const auto by_moves = oracle::move_graph_grundy(set);
        const auto by_rounds = oracle::looking_grundy(set);
        for (const auto& [key, g] : by_moves) {
            CHECK(t.value(key.first, key.second) == g);
            CHECK(by_rounds.at(key) == g);
        }
        CHECK(mex_violations(set, t).empty());
    }
}

TEST_CASE("zero set is the stable matching")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 2 + seed * 3;
        const auto set = oracle::random_set(n, 2, seed);
        const auto m = compute_matching(set, MatchingVariant::plain());
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < static_cast<int>(n); ++i)
            if (auto p = m.partner(i); p && *p > i)
                pairs.emplace_back(i, *p);
        auto zeros = grundy_table(set).zero_pairs();
        std::sort(zeros.begin(), zeros.end());
        CHECK(zeros == pairs);
    }
}

TEST_CASE("values at a point are distinct")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto set = oracle::random_set(12, 2, seed);
        const auto t = grundy_table(set);
        for (int x = 0; x < 12; ++x) {
            std::set<unsigned> seen;
            for (int y = 0; y < 12; ++y)
                if (y != x)
                    CHECK(seen.insert(t.value(x, y)).second);
            const bool interval = *seen.rbegin() == 10;
            CHECK(t.interval_property(x) == interval);
        }
    }
}

TEST_CASE("nim-sum algebra")
{
    for (unsigned a = 0; a < 32; ++a) {
        CHECK(xor_sum(std::vector<unsigned>{a, a}) == 0);
        CHECK(xor_sum(std::vector<unsigned>{a, 0}) == a);
        for (unsigned b = 0; b < 32; ++b) {
            CHECK(xor_sum(std::vector<unsigned>{a, b}) == xor_sum(std::vector<unsigned>{b, a}));
            for (unsigned c = 0; c < 8; ++c)
                CHECK(xor_sum(std::vector<unsigned>{xor_sum(std::vector<unsigned>{a, b}), c}) ==
                      xor_sum(std::vector<unsigned>{a, xor_sum(std::vector<unsigned>{b, c})}));
        }
    }
    CHECK(xor_sum(std::vector<unsigned>{}) == 0);
}

TEST_CASE("two ponds on four points")
{
    const auto set = line({0, 1, 3, 7});
    const std::vector<GrundyTable> tables{grundy_table(set), grundy_table(set)};
    const std::vector<PointSet> sets{set, set};
    const PondPosition pos{{0, 2}, {1, 2}};

    const auto out = kpond_classify(pos, tables);
    CHECK(out.status == Status::N);
    CHECK(out.winner == Player::alice);
    oracle::PondSolver solver(sets);
    CHECK(solver.next_player_wins({{0, 2}, {1, 2}}));

    const auto move = kpond_winning_move(pos, tables, sets);
    CHECK(move.pond == 0);
    CHECK(std::minmax(move.after.x, move.after.y) == std::minmax(1, 2));
    PondPosition after = pos;
    after[move.pond] = move.after;
    CHECK(kpond_classify(after, tables).status == Status::P);

    const PondPosition matched{{0, 1}, {2, 3}};
    CHECK(kpond_classify(matched, tables).status == Status::P);
    CHECK_THROWS_AS(kpond_winning_move(matched, tables, sets), NoWinningMove);

    CHECK(bob_opening({{0, 2}}, 1, tables) == 3);
    for (int x = 0; x < 4; ++x)
        CHECK(bob_opening({{0, 1}}, x, tables) == compute_matching(set, MatchingVariant::plain()).partner(x));
}

TEST_CASE("a single pond reduces to the matching rule")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto set = oracle::random_set(7, 2, seed);
        const std::vector<GrundyTable> tables{grundy_table(set)};
        const auto cert = certificate(set, Ruleset::plain());
        for (int a = 0; a < 7; ++a)
            for (int b = a + 1; b < 7; ++b)
                CHECK(kpond_classify({{a, b}}, tables).status ==
                      classify(set, Ruleset::plain(), Position::pair(a, b), cert).status);
    }
}

TEST_CASE("two-pond sums against exhaustive search")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::vector<PointSet> sets{oracle::random_set(3 + seed % 4, 2, seed),
                                         oracle::random_set(3 + (seed / 4) % 4, 2, derive_seed(seed, 9))};
        const std::vector<GrundyTable> tables{grundy_table(sets[0]), grundy_table(sets[1])};
        oracle::PondSolver solver(sets);
        for (const auto& [a, b] : oracle::ordered_pairs(sets[0].size())) {
            if (a > b)
                continue;
            for (const auto& [c, d] : oracle::ordered_pairs(sets[1].size())) {
                if (c > d)
                    continue;
                const PondPosition pos{{a, b}, {c, d}};
                const bool n_pos = kpond_classify(pos, tables).status == Status::N;
                CHECK(n_pos == solver.next_player_wins({{a, b}, {c, d}}));
                if (!n_pos)
                    continue;
                const auto mv = kpond_winning_move(pos, tables, sets);
                PondPosition after = pos;
                after[mv.pond] = mv.after;
                CHECK(kpond_classify(after, tables).status == Status::P);
                const auto moves = legal_moves(sets[mv.pond], Ruleset::plain(),
                                               Position::pair(std::min(pos[mv.pond].x, pos[mv.pond].y),
                                                              std::max(pos[mv.pond].x, pos[mv.pond].y)));
                CHECK(std::any_of(moves.begin(), moves.end(), [&](const Position& p) {
                    return std::minmax(p.x, p.y) == std::minmax(mv.after.x, mv.after.y);
                }));
            }
        }
    }
}

TEST_CASE("Bob's last placement wins when it exists")
{
    int absent = 0;
    int present = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::vector<PointSet> sets{oracle::random_set(5 + seed % 2, 2, seed),
                                         oracle::random_set(3 + seed % 4, 2, derive_seed(seed, 5))};
        const std::vector<GrundyTable> tables{grundy_table(sets[0]), grundy_table(sets[1])};
        oracle::PondSolver solver(sets);
        for (const auto& [a, b] : oracle::ordered_pairs(sets[0].size())) {
            if (a > b)
                continue;
            for (int x = 0; x < static_cast<int>(sets[1].size()); ++x) {
                const auto y = bob_opening({{a, b}}, x, tables);
                if (!y) {
                    ++absent;
                    continue;
                }
                ++present;
                CHECK_FALSE(solver.next_player_wins({{a, b}, {x, *y}}));
            }
        }
    }
    CHECK(present > 0);
    CHECK(absent > 0);
}

TEST_CASE("export lists pairs by distance")
{
    const auto set = oracle::random_set(6, 2, 3);
    const auto t = grundy_table(set);
    std::istringstream in(t.export_text());
    int i = 0;
    int j = 0;
    unsigned g = 0;
    std::size_t k = 0;
    const auto pairs = set.pairs_by_distance();
    while (in >> i >> j >> g) {
        REQUIRE(k < pairs.size());
        CHECK(i == pairs[k].i);
        CHECK(j == pairs[k].j);
        CHECK(g == t.value(i, j));
        ++k;
    }
    CHECK(k == pairs.size());
}
