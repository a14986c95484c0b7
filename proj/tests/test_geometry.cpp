#include "frogs/geometry.hpp"
#include "frogs/pointset_io.hpp"
#include "frogs/seeding.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace frogs;

namespace {

ValidationError::Kind validation_kind(std::vector<Point> pts, Region region, std::vector<Color> colors = {})
{
    try {
        PointSet::validate(std::move(pts), region, std::move(colors));
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return ValidationError::Kind::empty_set;
}

std::vector<Point> on_line(std::initializer_list<double> xs)
{
    std::vector<Point> out;
    for (double x : xs)
        out.push_back(Point{{x}});
    return out;
}

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double>& v)
{
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

} // namespace

TEST_CASE("four points on a line validate with six distinct distances")
{
    const auto set = oracle::line({0, 1, 3, 7});
    REQUIRE(set.size() == 4);
    std::vector<double> d;
    for (const auto& p : set.pairs_by_distance())
        d.push_back(set.distance(p.i, p.j));
    CHECK(d == std::vector<double>{1, 2, 3, 4, 6, 7});
}

TEST_CASE("equal distances are reported as a tie naming both pairs")
{
    try {
        PointSet::validate(on_line({0, 2, 3, 5}), Region::box(6, 1));
        FAIL("tie not detected");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationError::Kind::tied_distances);
        std::set<std::pair<int, int>> pairs{e.first_pair(), e.second_pair()};
        CHECK(pairs == std::set<std::pair<int, int>>{{0, 1}, {2, 3}});
        CHECK(to_string(e.kind()) == "TiedDistances");
    }
}

TEST_CASE("a single point is valid and has no pairs")
{
    const auto set = oracle::line({0});
    CHECK(set.size() == 1);
    CHECK(set.pairs_by_distance().empty());
}

TEST_CASE("validation rejects malformed input")
{
    CHECK(validation_kind({}, Region::box(1, 1)) == ValidationError::Kind::empty_set);
    CHECK(validation_kind({Point{{0.1}}, Point{{0.2, 0.3}}}, Region::box(1, 1)) ==
          ValidationError::Kind::dimension_mismatch);
    CHECK(validation_kind(on_line({0.1, 0.1, 0.5}), Region::box(1, 1)) == ValidationError::Kind::duplicate_point);
    CHECK(validation_kind(on_line({0.1, 1.5}), Region::box(1, 1)) == ValidationError::Kind::outside_region);
    CHECK(validation_kind(on_line({0.1, NAN}), Region::box(1, 1)) == ValidationError::Kind::non_finite);
    CHECK(validation_kind(on_line({0.1, 0.4}), Region::box(1, 1), {Color::amber}) == ValidationError::Kind::bad_colors);
    CHECK(validation_kind(on_line({0.1, 0.4}), Region::box(1, 1), {Color::amber, Color::none}) ==
          ValidationError::Kind::bad_colors);
}

TEST_CASE("torus points must lie in the half-open cube")
{
    CHECK(validation_kind(on_line({0.0, 10.0}), Region::torus(10, 1)) == ValidationError::Kind::outside_region);
    CHECK_NOTHROW(PointSet::validate(on_line({0.0, 10.0}), Region::box(10, 1)));
}

TEST_CASE("distance respects the region metric")
{
    const auto box = oracle::line({0, 1, 3, 7});
    CHECK(box.distance(0, 3) == 7.0);
    CHECK(box.distance(3, 0) == box.distance(0, 3));

    const auto torus = PointSet::validate(on_line({0, 7}), Region::torus(10, 1));
    CHECK(torus.distance(0, 1) == 3.0);

    CHECK_THROWS_AS(box.distance(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(box.distance(0, 4), std::out_of_range);
}

TEST_CASE("torus distance never exceeds box distance and both obey the triangle inequality")
{
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 3; ++k)
            pts.push_back(Point{{uniform01(rng) * 5.0, uniform01(rng) * 5.0, uniform01(rng) * 5.0}});
        const auto box = Region::box(5, 3);
        const auto torus = Region::torus(5, 3);
        auto d = [&](const Region& r, int a, int b) {
            return std::sqrt(r.squared_distance(pts[static_cast<std::size_t>(a)].coords,
                                                pts[static_cast<std::size_t>(b)].coords));
        };
        CHECK(d(torus, 0, 1) <= d(box, 0, 1));
        for (const auto& r : {box, torus})
            CHECK(d(r, 0, 2) <= d(r, 0, 1) + d(r, 1, 2) + 1e-12);
    }
}

TEST_CASE("sorted pair distances are strictly increasing")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto set = sample_uniform(30, Region::torus(3, 2), seed);
        const auto pairs = set.pairs_by_distance();
        REQUIRE(pairs.size() == 30 * 29 / 2);
        for (std::size_t k = 1; k < pairs.size(); ++k)
            CHECK(pairs[k - 1].squared < pairs[k].squared);
    }
}

TEST_CASE("nearest neighbours agree with a direct scan")
{
    const auto set = sample_uniform(40, Region::box(1, 2), 5);
    for (int i = 0; i < 40; ++i) {
        int best = -1;
        for (int j = 0; j < 40; ++j)
            if (j != i && (best < 0 || set.distance(i, j) < set.distance(i, best)))
                best = j;
        CHECK(set.nearest_neighbor(i) == best);
    }
}

TEST_CASE("region parsing round-trips")
{
    const auto r = Region::parse("torus:20:2");
    CHECK(r == Region::torus(20, 2));
    CHECK(Region::parse(r.to_string()) == r);
    CHECK(Region::parse("box:1.5:3") == Region::box(1.5, 3));
    CHECK_THROWS(Region::parse("sphere:1:2"));
    CHECK_THROWS(Region::parse("box:-1:2"));
    CHECK_THROWS(Region::parse("box:1"));
    CHECK(Region::torus(20, 2).volume() == 400.0);
}

TEST_CASE("sampling is a pure function of configuration and seed")
{
    const SampleConfig config{1.0, Region::box(10, 2), 42};
    const auto a = sample_poisson(config);
    const auto b = sample_poisson(config);
    CHECK(a.points() == b.points());
    CHECK(point_set_to_string(a) == point_set_to_string(b));
    auto other = config;
    other.seed = 43;
    CHECK(sample_poisson(other).points() != a.points());
}

TEST_CASE("Poisson counts have mean intensity times volume")
{
    std::vector<double> counts;
    for (std::uint64_t t = 0; t < 500; ++t)
        counts.push_back(static_cast<double>(sample_poisson({1.0, Region::torus(20, 2), derive_seed(7, t)}).size()));
    CHECK(std::abs(mean_of(counts) - 400.0) <= 3.0 * std_error_of(counts));
}

TEST_CASE("Poisson count sampler matches mean and variance for small and large means")
{
    for (double mean : {0.5, 3.0, 40.0, 400.0}) {
        Rng rng(static_cast<std::uint64_t>(mean * 1000));
        std::vector<double> xs;
        for (int k = 0; k < 20000; ++k)
            xs.push_back(static_cast<double>(sample_poisson_count(rng, mean)));
        const double m = mean_of(xs);
        CHECK(std::abs(m - mean) <= 4.0 * std::sqrt(mean / 20000.0));
        double var = 0.0;
        for (double x : xs)
            var += (x - m) * (x - m);
        var /= static_cast<double>(xs.size() - 1);
        CHECK(var == doctest::Approx(mean).epsilon(0.05));
    }
}

TEST_CASE("sparse sampling reports an empty sample")
{
    int empties = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        try {
            sample_poisson({0.001, Region::box(1, 1), seed});
        } catch (const SamplingError& e) {
            CHECK(e.kind() == SamplingError::Kind::empty_sample);
            ++empties;
        }
    }
    CHECK(empties >= 15);
}

TEST_CASE("non-positive intensities are rejected")
{
    CHECK_THROWS_AS(sample_poisson({0.0, Region::box(1, 2), 1}), SamplingError);
    CHECK_THROWS_AS(sample_colored({1.0, 0.0, Region::box(1, 2), 1}), SamplingError);
    CHECK_THROWS_AS(sample_colored({-1.0, 1.0, Region::box(1, 2), 1}), SamplingError);
}

TEST_CASE("two-process colour counts are exchangeable")
{
    std::vector<double> amber, blue;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto s = sample_colored({1.0, 1.0, Region::torus(20, 2), derive_seed(11, t)});
        amber.push_back(static_cast<double>(s.count(Color::amber)));
        blue.push_back(static_cast<double>(s.count(Color::blue)));
    }
    CHECK(std::abs(mean_of(amber) - 400.0) <= 3.0 * std_error_of(amber));
    CHECK(std::abs(mean_of(blue) - 400.0) <= 3.0 * std_error_of(blue));
    std::vector<double> diff;
    for (std::size_t k = 0; k < amber.size(); ++k)
        diff.push_back(amber[k] - blue[k]);
    CHECK(std::abs(mean_of(diff)) <= 3.0 * std_error_of(diff));
}

TEST_CASE("thinning and two independent processes give the same colour-count law")
{
    // Two-sample chi-square homogeneity test on binned amber counts, 1% level.
    const Region region = Region::box(10, 2);
    const std::vector<double> edges{88, 93, 97, 100, 103, 107, 112};  // Poisson(100) bins
    auto bin = [&](std::size_t c) {
        return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), static_cast<double>(c)) -
                                        edges.begin());
    };
    std::vector<double> two(edges.size() + 1, 0.0), thin(edges.size() + 1, 0.0);
    for (std::uint64_t t = 0; t < 500; ++t) {
        two[bin(sample_colored({1.0, 1.0, region, derive_seed(1, t)}).count(Color::amber))] += 1;
        thin[bin(sample_thinned({1.0, 1.0, region, derive_seed(2, t)}).count(Color::amber))] += 1;
    }
    double chi2 = 0.0;
    for (std::size_t b = 0; b < two.size(); ++b) {
        const double expected = (two[b] + thin[b]) / 2.0;
        REQUIRE(expected >= 5.0);
        chi2 += (two[b] - expected) * (two[b] - expected) / expected;
        chi2 += (thin[b] - expected) * (thin[b] - expected) / expected;
    }
    constexpr double kChi2Critical7df1pct = 18.475;
    CHECK(chi2 < kChi2Critical7df1pct);
}

TEST_CASE("uniform samplers give exactly n points")
{
    CHECK(sample_uniform(17, Region::box(1, 3), 3).size() == 17);
    const auto colored = sample_uniform_colored(40, Region::box(1, 2), 3, Color::green, Color::red);
    CHECK(colored.count(Color::green) + colored.count(Color::red) == 40);
    CHECK(colored.count(Color::green) > 0);
    CHECK(colored.count(Color::red) > 0);
}

TEST_CASE("point-set files round-trip exactly")
{
    const auto set = sample_colored({0.5, 0.5, Region::torus(6, 2), 8});
    const auto text = point_set_to_string(set);
    const auto back = parse_point_set(text);
    CHECK(back.points() == set.points());
    CHECK(back.colors() == set.colors());
    CHECK(back.region() == set.region());
    CHECK(point_set_to_string(back) == text);
}

TEST_CASE("point-set parser accepts comments and rejects bad input")
{
    const auto set = parse_point_set("# four frogs\ndim=1 region=box side=8\n0\n1 # near\n3\n\n7\n");
    CHECK(set.size() == 4);
    CHECK(set.distance(0, 3) == 7.0);
    const auto colored = parse_point_set("dim=1 region=box side=8\n0 amber\n1 blue\n");
    CHECK(colored.color(1) == Color::blue);
    CHECK_THROWS(parse_point_set("0\n1\n"));
    CHECK_THROWS(parse_point_set("dim=2 region=box side=8\n0\n"));
    CHECK_THROWS(parse_point_set("dim=1 region=box side=8\nzero\n"));
    CHECK_THROWS_AS(parse_point_set("dim=1 region=box side=8\n0\n2\n3\n5\n"), ValidationError);
}

TEST_CASE("format_decimal is the shortest round-tripping form")
{
    CHECK(format_decimal(0.1) == "0.1");
    CHECK(format_decimal(5.0) == "5");
    CHECK(format_decimal(-2.5) == "-2.5");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_decimal(x)) == x);
}

TEST_CASE("derived seeds differ across indices and are stable")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 30; ++a)
        for (std::uint64_t b = 0; b < 30; ++b)
            seen.insert(derive_seed(5, a, b));
    CHECK(seen.size() == 900);
    static_assert(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}
