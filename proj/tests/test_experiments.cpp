#include "frogs/experiments.hpp"
#include "frogs/seeding.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

using namespace frogs;

namespace {

ExperimentSpec small(ExperimentId id, std::size_t trials = 4)
{
    auto s = ExperimentSpec::defaults(id);
    s.trials = trials;
    s.seed = 31;
    return s;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const std::vector<ExperimentId> kAll = {ExperimentId::parity,           ExperimentId::perfectness,
                                        ExperimentId::two_color_phase,  ExperimentId::shy_desire_growth,
                                        ExperimentId::fussy_scan,       ExperimentId::grundy_interval};

} // namespace

TEST_CASE("grid syntax")
{
    const auto g = parse_grid("alpha=0.5,alpha=1,beta=1");
    CHECK(g.at("alpha") == std::vector<double>{0.5, 1.0});
    CHECK(g.at("beta") == std::vector<double>{1.0});
    CHECK(parse_grid("").empty());
    CHECK_THROWS_AS(parse_grid("alpha"), SpecError);
    CHECK_THROWS_AS(parse_grid("=1"), SpecError);
    CHECK_THROWS_AS(parse_grid("alpha=x"), SpecError);
    CHECK_THROWS_AS(parse_grid("alpha=1.5y"), SpecError);
}

TEST_CASE("experiment ids")
{
    for (auto id : kAll)
        CHECK(parse_experiment_id(to_string(id)) == id);
    CHECK_THROWS(parse_experiment_id("nope"));
}

TEST_CASE("spec validation")
{
    auto s = ExperimentSpec::defaults(ExperimentId::parity);
    CHECK_NOTHROW(s.validate());

    auto zero = s;
    zero.trials = 0;
    CHECK_THROWS_AS(zero.validate(), SpecError);

    auto empty = s;
    empty.grid["n"] = {};
    CHECK_THROWS_AS(empty.validate(), SpecError);

    auto unknown = s;
    unknown.grid["alpha"] = {1};
    CHECK_THROWS_AS(unknown.validate(), SpecError);

    auto fractional = s;
    fractional.grid["n"] = {2.5};
    CHECK_THROWS_AS(fractional.validate(), SpecError);

    auto negative = ExperimentSpec::defaults(ExperimentId::two_color_phase);
    negative.grid["alpha"] = {-1};
    CHECK_THROWS_AS(negative.validate(), SpecError);

    auto missing = ExperimentSpec::defaults(ExperimentId::two_color_phase);
    missing.grid.erase("beta");
    CHECK_THROWS_AS(missing.validate(), SpecError);

    auto region = s;
    region.region.side = 0;
    CHECK_THROWS_AS(region.validate(), SpecError);

    CHECK_THROWS_AS(run(zero), SpecError);
}

TEST_CASE("cells are the cartesian product of the grid")
{
    auto s = small(ExperimentId::two_color_phase, 2);
    s.grid["alpha"] = {0.5, 1.0};
    s.grid["beta"] = {1.0, 2.0};
    s.region = Region::torus(5, 2);
    const auto r = run(s);
    REQUIRE(r.cells.size() == 4);
    CHECK(r.records.size() == 8);
    std::set<std::pair<double, double>> seen;
    for (const auto& c : r.cells)
        seen.insert({c.param("alpha"), c.param("beta")});
    CHECK(seen.size() == 4);
}

TEST_CASE("trial seeds are derived from the spec seed")
{
    const auto r = run(small(ExperimentId::parity, 3));
    for (const auto& rec : r.records)
        CHECK(rec.seed == derive_seed(31, rec.cell, rec.trial));
}

TEST_CASE("serial and parallel runs agree")
{
    for (auto id : kAll) {
        auto s = small(id, 3);
        if (id == ExperimentId::parity)
            s.grid["n"] = {3, 6, 8};
        const auto a = run(s, Execution::parallel);
        const auto b = run(s, Execution::serial);
        CAPTURE(to_string(id));
        CHECK(report_to_json(a) == report_to_json(b));
        CHECK(report_to_csv(a) == report_to_csv(b));
    }
}

TEST_CASE("re-runs are byte-identical on disk")
{
    const auto dir = std::filesystem::temp_directory_path() / ("frogmatch-exp-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto s = small(ExperimentId::fussy_scan, 5);
    for (auto format : {ReportFormat::json, ReportFormat::csv}) {
        emit(run(s), format, (dir / "a").string());
        emit(run(s), format, (dir / "b").string());
        CHECK(read_file(dir / "a") == read_file(dir / "b"));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("timing is left out unless asked for")
{
    const auto r = run(small(ExperimentId::parity, 2));
    CHECK(report_to_json(r).find("wall_seconds") == std::string::npos);
    CHECK(report_to_json(r, {true}).find("wall_seconds") != std::string::npos);
    CHECK(report_to_csv(r).find("wall_seconds") == std::string::npos);
}

TEST_CASE("aggregates are recomputable from the records")
{
    const auto r = run(small(ExperimentId::perfectness, 12));
    REQUIRE(r.cells.size() == 1);
    const auto& cell = r.cells[0];
    std::vector<double> values;
    for (const auto& rec : r.records)
        for (const auto& [k, v] : rec.values)
            if (k == "unmatched")
                values.push_back(v);
    REQUIRE(values.size() == 12);
    double mean = 0;
    for (double v : values)
        mean += v;
    mean /= 12;
    double ss = 0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / 11) / std::sqrt(12.0);
    const auto& agg = cell.aggregate("unmatched");
    CHECK(agg.count == 12);
    CHECK(agg.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(agg.std_error == doctest::Approx(se).epsilon(1e-12));
    CHECK_THROWS(cell.aggregate("nothing"));
}

TEST_CASE("JSON and CSV carry the same aggregates")
{
    const auto r = run(small(ExperimentId::two_color_phase, 3));
    const auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["schema"] == "frogmatch.report/1");
    CHECK(j["cells"].size() == r.cells.size());
    CHECK(j["records"].size() == r.records.size());
    CHECK(j["passed"] == r.passed());

    std::istringstream csv(report_to_csv(r));
    std::string line;
    std::size_t aggregates = 0;
    while (std::getline(csv, line)) {
        if (line.rfind("aggregate,", 0) != 0)
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            f.push_back(cell);
        REQUIRE(f.size() >= 8);
        const auto cell = std::stoul(f[1]);
        const auto& from_json = j["cells"][cell]["aggregates"][f[4]];
        CHECK(std::stod(f[5]) == doctest::Approx(from_json["mean"].get<double>()).epsilon(1e-12));
        CHECK(std::stoul(f[7]) == from_json["count"].get<std::size_t>());
        ++aggregates;
    }
    std::size_t expected = 0;
    for (const auto& c : r.cells)
        expected += c.aggregates.size();
    CHECK(aggregates == expected);
}

TEST_CASE("trial failures name the cell and trial")
{
    ExperimentSpec s;
    s.id = ExperimentId::perfectness;
    s.grid["lambda"] = {1e-9};
    s.trials = 2;
    s.region = Region::torus(1, 1);
    for (auto exec : {Execution::parallel, Execution::serial}) {
        try {
            run(s, exec);
            FAIL("empty sample accepted");
        } catch (const TrialError& e) {
            CHECK(e.cell() == 0);
            CHECK(e.trial() == 0);
        }
    }
}

TEST_CASE("mean absolute Poisson difference")
{
    CHECK(expected_abs_poisson_difference(0, 0) == 0.0);
    CHECK(expected_abs_poisson_difference(2, 0) == doctest::Approx(2.0).epsilon(1e-9));
    // Symmetric, and at least the difference of the means.
    CHECK(expected_abs_poisson_difference(3, 5) == doctest::Approx(expected_abs_poisson_difference(5, 3)));
    CHECK(expected_abs_poisson_difference(3, 5) > 2.0);

    // Monte Carlo with an independent generator.
    for (auto [mu1, mu2] : {std::pair{1.0, 1.0}, std::pair{4.0, 6.0}, std::pair{400.0, 400.0}}) {
        std::mt19937_64 gen(42);
        std::poisson_distribution<long> p1(mu1), p2(mu2);
        const int n = 200000;
        double sum = 0, sq = 0;
        for (int i = 0; i < n; ++i) {
            const double d = std::abs(static_cast<double>(p1(gen) - p2(gen)));
            sum += d;
            sq += d * d;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sq / n - mean * mean) / n);
        CHECK(std::abs(expected_abs_poisson_difference(mu1, mu2) - mean) < 4 * se);
    }
    // Large equal means approach the normal value 2 sqrt(mu / pi).
    CHECK(expected_abs_poisson_difference(400, 400) == doctest::Approx(2 * std::sqrt(400 / M_PI)).epsilon(0.01));
}

TEST_CASE("small runs of each experiment pass their checks")
{
    {
        auto s = small(ExperimentId::parity, 10);
        s.grid["n"] = {1, 2, 3, 4, 5, 6, 7};
        const auto r = run(s);
        CHECK(r.passed());
        for (const auto& c : r.cells)
            CHECK(c.aggregate("matches_parity").mean == 1.0);
    }
    {
        const auto r = run(small(ExperimentId::perfectness, 10));
        CHECK(r.passed());
        CHECK(r.cells[0].aggregate("parity_ok").mean == 1.0);
    }
    {
        const auto r = run(small(ExperimentId::two_color_phase, 5));
        for (const auto& c : r.cells) {
            CHECK(c.aggregate("structure_ok").mean == 1.0);
            CHECK(c.aggregate("sample_minority_unmatched").mean == 0.0);
        }
    }
    {
        const auto r = run(small(ExperimentId::grundy_interval, 10));
        for (const auto& c : r.cells)
            CHECK(c.aggregate("zero_set_is_matching").mean == 1.0);
        for (const auto& ch : r.checks)
            if (ch.name.rfind("interval property", 0) == 0)
                CHECK(ch.status == CheckStatus::exploratory);
    }
    {
        const auto r = run(small(ExperimentId::fussy_scan, 5));
        for (const auto& ch : r.checks)
            if (ch.name.find("rho=0.5") != std::string::npos)
                CHECK(ch.status == CheckStatus::exploratory);
    }
    {
        auto s = small(ExperimentId::shy_desire_growth, 5);
        const auto r = run(s);
        for (const auto& c : r.cells)
            CHECK(c.aggregate("monotone_ok").mean == 1.0);
    }
}

TEST_CASE("failed checks make the report fail")
{
    ExperimentReport r;
    CHECK(r.passed());
    r.checks.push_back({"x", CheckStatus::exploratory, ""});
    CHECK(r.passed());
    r.checks.push_back({"y", CheckStatus::fail, ""});
    CHECK_FALSE(r.passed());
}
