#include "frogs/experiments.hpp"

#include "frogs/game.hpp"
#include "frogs/grundy.hpp"
#include "frogs/matching.hpp"
#include "frogs/pointset_io.hpp"
#include "frogs/retrograde.hpp"
#include "frogs/seeding.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>

namespace frogs {

std::string_view to_string(ExperimentId id)
{
    switch (id) {
    case ExperimentId::parity: return "parity";
    case ExperimentId::perfectness: return "perfectness";
    case ExperimentId::two_color_phase: return "two_color_phase";
    case ExperimentId::shy_desire_growth: return "shy_desire_growth";
    case ExperimentId::fussy_scan: return "fussy_scan";
    case ExperimentId::grundy_interval: return "grundy_interval";
    }
    return "parity";
}

ExperimentId parse_experiment_id(std::string_view text)
{
    for (auto id : {ExperimentId::parity, ExperimentId::perfectness, ExperimentId::two_color_phase,
                    ExperimentId::shy_desire_growth, ExperimentId::fussy_scan, ExperimentId::grundy_interval})
        if (to_string(id) == text)
            return id;
    throw SpecError("unknown experiment '" + std::string(text) + "'");
}

std::string_view to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::exploratory: return "exploratory";
    }
    return "fail";
}

namespace {

struct KeyRule {
    std::string key;
    bool required;
    bool integer;
    bool measurement;  // measured inside each trial rather than spanning cells
};

std::vector<KeyRule> key_rules(ExperimentId id)
{
    switch (id) {
    case ExperimentId::parity:
    case ExperimentId::grundy_interval:
        return {{"n", true, true, false}};
    case ExperimentId::perfectness:
        return {{"lambda", true, false, false}};
    case ExperimentId::two_color_phase:
        return {{"alpha", true, false, false}, {"beta", true, false, false}};
    case ExperimentId::shy_desire_growth:
        return {{"lambda", true, false, false}, {"radius", true, false, true}};
    case ExperimentId::fussy_scan:
        return {{"rho", true, false, false}, {"green", false, false, false}};
    }
    return {};
}

std::string param_label(const NamedValues& params)
{
    std::ostringstream os;
    for (std::size_t k = 0; k < params.size(); ++k)
        os << (k ? " " : "") << params[k].first << '=' << format_decimal(params[k].second);
    return os.str();
}

double value_of(const NamedValues& values, std::string_view name)
{
    for (const auto& [k, v] : values)
        if (k == name)
            return v;
    throw std::out_of_range("no value named '" + std::string(name) + "'");
}

std::string radius_key(double r)
{
    return "desirers_r=" + format_decimal(r);
}

// ---------------------------------------------------------------------------
// Trials. Each is a pure function of (parameters, region, seed).

NamedValues parity_trial(double n, const Region& region, std::uint64_t seed)
{
    const auto count = static_cast<std::size_t>(n);
    auto set = sample_uniform(count, region, seed);
    auto table = solve_retrograde(set, Ruleset::plain(), std::max<std::size_t>(count, kRetrogradeCap));
    const bool alice = table.winner() == Player::alice;
    const bool predicted_alice = count % 2 == 1;
    return {{"n", n}, {"alice_wins", alice ? 1.0 : 0.0}, {"matches_parity", alice == predicted_alice ? 1.0 : 0.0}};
}

NamedValues perfectness_trial(double lambda, const Region& region, std::uint64_t seed)
{
    const auto torus_set = sample_poisson({lambda, region, seed});
    const auto m = compute_matching(torus_set, MatchingVariant::plain());
    const auto unmatched = m.incomplete_points().size();

    // Same intensity in a box window, for contrast.
    Region box = region;
    box.kind = RegionKind::box;
    const auto box_set = sample_poisson({lambda, box, derive_seed(seed, 0xb0c5)});
    const auto box_unmatched = compute_matching(box_set, MatchingVariant::plain()).incomplete_points().size();

    return {{"points", static_cast<double>(torus_set.size())},
            {"unmatched", static_cast<double>(unmatched)},
            {"parity_ok", unmatched == torus_set.size() % 2 ? 1.0 : 0.0},
            {"box_points", static_cast<double>(box_set.size())},
            {"box_unmatched", static_cast<double>(box_unmatched)}};
}

NamedValues two_color_trial(double alpha, double beta, const Region& region, std::uint64_t seed)
{
    ColoredSampleConfig config{alpha, beta, region, seed, Color::amber, Color::blue};
    const auto set = sample_colored(config);
    const auto m = compute_matching(set, MatchingVariant::two_color());
    std::size_t ua = 0, ub = 0;
    for (int p : m.incomplete_points())
        (set.color(p) == Color::amber ? ua : ub) += 1;
    const auto na = set.count(Color::amber);
    const auto nb = set.count(Color::blue);
    const auto imbalance = na > nb ? na - nb : nb - na;
    const bool single_color = ua == 0 || ub == 0;
    const std::size_t minority_unmatched = na < nb ? ua : (nb < na ? ub : ua + ub);
    const double volume = region.volume();
    return {{"n_amber", static_cast<double>(na)},
            {"n_blue", static_cast<double>(nb)},
            {"unmatched_amber", static_cast<double>(ua)},
            {"unmatched_blue", static_cast<double>(ub)},
            {"structure_ok", single_color && ua + ub == imbalance ? 1.0 : 0.0},
            {"sample_minority_unmatched", static_cast<double>(minority_unmatched)},
            {"surplus_density", (static_cast<double>(ub) - static_cast<double>(ua)) / volume},
            {"unmatched_density", static_cast<double>(ua + ub) / volume},
            {"bob_wins", ua == 0 ? 1.0 : 0.0}};
}

int nearest_to_center(const PointSet& set)
{
    const auto& r = set.region();
    std::vector<double> center(static_cast<std::size_t>(r.dim), r.side / 2.0);
    int best = 0;
    double best_d = kInfinity;
    for (int i = 0; i < static_cast<int>(set.size()); ++i) {
        const double d = r.squared_distance(set.point(i).coords, center);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

NamedValues desire_trial(double lambda, std::span<const double> radii, const Region& region, std::uint64_t seed)
{
    const auto set = sample_poisson({lambda, region, seed});
    const auto m = compute_matching(set, MatchingVariant::plain());
    const int target = nearest_to_center(set);
    std::vector<double> desirer_distance;
    for (int y = 0; y < static_cast<int>(set.size()); ++y)
        if (y != target && desires(set, m, y, target))
            desirer_distance.push_back(set.distance(y, target));

    NamedValues out{{"points", static_cast<double>(set.size())}};
    bool monotone = true;
    double previous = -1.0;
    std::vector<double> sorted_radii(radii.begin(), radii.end());
    for (double r : radii) {
        const auto c = std::count_if(desirer_distance.begin(), desirer_distance.end(), [r](double d) { return d <= r; });
        out.emplace_back(radius_key(r), static_cast<double>(c));
    }
    std::sort(sorted_radii.begin(), sorted_radii.end());
    for (double r : sorted_radii) {
        const double c = value_of(out, radius_key(r));
        monotone = monotone && c >= previous;
        previous = c;
    }
    out.emplace_back("monotone_ok", monotone ? 1.0 : 0.0);
    return out;
}

NamedValues fussy_trial(double rho, double green, const Region& region, std::uint64_t seed)
{
    ColoredSampleConfig config{green, rho, region, seed, Color::green, Color::red};
    const auto set = sample_colored(config);
    const auto m = compute_matching(set, MatchingVariant::fussy());
    std::size_t ur = 0, ug = 0;
    for (int p : m.incomplete_points())
        (set.color(p) == Color::red ? ur : ug) += 1;
    return {{"n_green", static_cast<double>(set.count(Color::green))},
            {"n_red", static_cast<double>(set.count(Color::red))},
            {"unmatched_green", static_cast<double>(ug)},
            {"unmatched_red", static_cast<double>(ur)},
            {"has_unmatched_red", ur > 0 ? 1.0 : 0.0}};
}

NamedValues grundy_trial(double n, const Region& region, std::uint64_t seed)
{
    const auto set = sample_uniform(static_cast<std::size_t>(n), region, seed);
    const auto table = grundy_table(set);
    std::size_t interval = 0;
    for (int x = 0; x < static_cast<int>(set.size()); ++x)
        interval += table.interval_property(x) ? 1 : 0;
    const bool zero_ok = table.zero_pairs() == compute_matching(set, MatchingVariant::plain()).pairs();
    return {{"n", n},
            {"interval_fraction", static_cast<double>(interval) / n},
            {"all_interval", interval == set.size() ? 1.0 : 0.0},
            {"zero_set_is_matching", zero_ok ? 1.0 : 0.0}};
}

struct Cell {
    NamedValues params;
};

std::vector<Cell> expand_cells(const ExperimentSpec& spec)
{
    std::vector<Cell> cells{{}};
    for (const auto& rule : key_rules(spec.id)) {
        if (rule.measurement)
            continue;
        auto it = spec.grid.find(rule.key);
        if (it == spec.grid.end())
            continue;
        std::vector<Cell> next;
        for (const auto& c : cells) {
            for (double v : it->second) {
                Cell d = c;
                d.params.emplace_back(rule.key, v);
                next.push_back(std::move(d));
            }
        }
        cells = std::move(next);
    }
    return cells;
}

double param_or(const NamedValues& params, std::string_view key, double fallback)
{
    for (const auto& [k, v] : params)
        if (k == key)
            return v;
    return fallback;
}

NamedValues run_trial(const ExperimentSpec& spec, const NamedValues& params, std::uint64_t seed)
{
    switch (spec.id) {
    case ExperimentId::parity:
        return parity_trial(value_of(params, "n"), spec.region, seed);
    case ExperimentId::perfectness:
        return perfectness_trial(value_of(params, "lambda"), spec.region, seed);
    case ExperimentId::two_color_phase:
        return two_color_trial(value_of(params, "alpha"), value_of(params, "beta"), spec.region, seed);
    case ExperimentId::shy_desire_growth:
        return desire_trial(value_of(params, "lambda"), spec.grid.at("radius"), spec.region, seed);
    case ExperimentId::fussy_scan:
        return fussy_trial(value_of(params, "rho"), param_or(params, "green", 1.0), spec.region, seed);
    case ExperimentId::grundy_interval:
        return grundy_trial(value_of(params, "n"), spec.region, seed);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Checks

bool all_equal(std::span<const TrialRecord> records, std::string_view key, double expected)
{
    return std::all_of(records.begin(), records.end(),
                       [&](const TrialRecord& r) { return value_of(r.values, key) == expected; });
}

std::string band_text(double mean, double se, double target)
{
    std::ostringstream os;
    os << "mean " << mean << " vs " << target << " (|diff| " << std::abs(mean - target) << ", "
       << kStatisticalBand << " SE = " << kStatisticalBand * se << ")";
    return os.str();
}

Check band_check(std::string name, const Statistic& s, double target)
{
    const bool ok = std::abs(s.mean - target) <= kStatisticalBand * s.std_error;
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, band_text(s.mean, s.std_error, target)};
}

Check exact_check(std::string name, bool ok, std::string detail)
{
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

void add_checks(ExperimentReport& report, const std::vector<std::span<const TrialRecord>>& by_cell)
{
    const auto& spec = report.spec;
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        const auto& cell = report.cells[c];
        const auto records = by_cell[c];
        const std::string label = param_label(cell.params);
        switch (spec.id) {
        case ExperimentId::parity: {
            const auto& s = cell.aggregate("matches_parity");
            report.checks.push_back(exact_check("parity " + label, s.mean == 1.0,
                                                "winner matched parity in " + format_decimal(s.mean * double(s.count)) +
                                                    "/" + std::to_string(s.count) + " trials"));
            break;
        }
        case ExperimentId::perfectness: {
            const bool ok = all_equal(records, "parity_ok", 1.0);
            report.checks.push_back(exact_check("perfect up to parity " + label, ok,
                                                ok ? "unmatched count = point count mod 2 in every trial"
                                                   : "some trial left two or more points unmatched"));
            break;
        }
        case ExperimentId::two_color_phase: {
            const double alpha = cell.param("alpha");
            const double beta = cell.param("beta");
            const bool structure = all_equal(records, "structure_ok", 1.0) &&
                                   all_equal(records, "sample_minority_unmatched", 0.0);
            report.checks.push_back(exact_check("two-color structure " + label, structure,
                                                structure ? "unmatched points single-coloured, count = |N_A - N_B|"
                                                          : "an unmatched point of the minority colour appeared"));
            report.checks.push_back(band_check("unmatched surplus density " + label, cell.aggregate("surplus_density"),
                                               beta - alpha));
            if (alpha == beta) {
                const double volume = spec.region.volume();
                const double expected = expected_abs_poisson_difference(alpha * volume, beta * volume) / volume;
                report.checks.push_back(band_check("balanced unmatched density " + label,
                                                   cell.aggregate("unmatched_density"), expected));
            }
            break;
        }
        case ExperimentId::shy_desire_growth: {
            const bool monotone = all_equal(records, "monotone_ok", 1.0);
            report.checks.push_back(exact_check("desire count monotone in radius " + label, monotone,
                                                monotone ? "nondecreasing in every trial" : "a trial decreased"));
            const auto& radii = spec.grid.at("radius");
            const double lo = *std::min_element(radii.begin(), radii.end());
            const double hi = *std::max_element(radii.begin(), radii.end());
            const double mlo = cell.aggregate(radius_key(lo)).mean;
            const double mhi = cell.aggregate(radius_key(hi)).mean;
            report.checks.push_back(exact_check("desire count grows " + label, lo < hi && mhi > mlo,
                                                "mean " + format_decimal(mlo) + " at r=" + format_decimal(lo) +
                                                    ", " + format_decimal(mhi) + " at r=" + format_decimal(hi)));
            break;
        }
        case ExperimentId::fussy_scan: {
            const auto& s = cell.aggregate("has_unmatched_red");
            const double rho = cell.param("rho");
            const double green = param_or(cell.params, "green", 1.0);
            std::ostringstream detail;
            detail << "unmatched red in " << s.mean * 100.0 << "% of trials (+/- " << kStatisticalBand * s.std_error * 100.0
                   << "%)";
            if (rho > green)
                report.checks.push_back(exact_check("unmatched red present " + label, s.mean >= kFussyPresenceThreshold,
                                                    detail.str() + ", threshold " +
                                                        format_decimal(kFussyPresenceThreshold * 100.0) + "%"));
            else
                report.checks.push_back({"unmatched red present " + label, CheckStatus::exploratory, detail.str()});
            break;
        }
        case ExperimentId::grundy_interval: {
            const bool ok = all_equal(records, "zero_set_is_matching", 1.0);
            report.checks.push_back(exact_check("zero set is the stable matching " + label, ok, ""));
            const auto& s = cell.aggregate("all_interval");
            report.checks.push_back({"interval property " + label, CheckStatus::exploratory,
                                     "every point had values {0..n-2} in " + format_decimal(s.mean * 100.0) +
                                         "% of trials"});
            break;
        }
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------

ExperimentSpec ExperimentSpec::defaults(ExperimentId id)
{
    ExperimentSpec s;
    s.id = id;
    switch (id) {
    case ExperimentId::parity:
        s.grid["n"] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        s.trials = 200;
        s.region = Region::box(1.0, 2);
        break;
    case ExperimentId::perfectness:
        s.grid["lambda"] = {1.0};
        s.trials = 100;
        s.region = Region::torus(20.0, 2);
        break;
    case ExperimentId::two_color_phase:
        s.grid["alpha"] = {0.5, 0.75, 1.0, 1.25};
        s.grid["beta"] = {1.0};
        s.trials = 50;
        s.region = Region::torus(20.0, 2);
        break;
    case ExperimentId::shy_desire_growth:
        s.grid["lambda"] = {1.0};
        s.grid["radius"] = {5, 10, 15, 20};
        s.trials = 100;
        s.region = Region::torus(42.0, 2);
        break;
    case ExperimentId::fussy_scan:
        s.grid["rho"] = {0.25, 0.5, 0.75, 1.0, 1.5};
        s.trials = 100;
        s.region = Region::torus(20.0, 2);
        break;
    case ExperimentId::grundy_interval:
        s.grid["n"] = {4, 6, 8, 10, 12};
        s.trials = 100;
        s.region = Region::box(1.0, 2);
        break;
    }
    return s;
}

void ExperimentSpec::validate() const
{
    if (trials < 1)
        throw SpecError("trials must be at least 1");
    if (!(region.side > 0.0) || region.dim < 1)
        throw SpecError("region needs side > 0 and dim >= 1");
    const auto rules = key_rules(id);
    for (const auto& [key, values] : grid) {
        auto it = std::find_if(rules.begin(), rules.end(), [&](const KeyRule& r) { return r.key == key; });
        if (it == rules.end())
            throw SpecError("experiment " + std::string(to_string(id)) + " has no parameter '" + key + "'");
        if (values.empty())
            throw SpecError("grid list for '" + key + "' is empty");
        for (double v : values) {
            if (!std::isfinite(v) || v <= 0.0)
                throw SpecError("grid value " + key + "=" + format_decimal(v) + " must be positive");
            if (it->integer && v != std::floor(v))
                throw SpecError("grid value " + key + "=" + format_decimal(v) + " must be an integer");
        }
    }
    for (const auto& r : rules)
        if (r.required && grid.count(r.key) == 0)
            throw SpecError("experiment " + std::string(to_string(id)) + " needs grid key '" + r.key + "'");
}

std::map<std::string, std::vector<double>> parse_grid(std::string_view text)
{
    std::map<std::string, std::vector<double>> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        const auto item = text.substr(start, end - start);
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw SpecError("grid entries look like key=value, got '" + std::string(item) + "'");
            const std::string key(item.substr(0, eq));
            const std::string value(item.substr(eq + 1));
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size())
                throw SpecError("grid value '" + value + "' is not a number");
            grid[key].push_back(v);
        }
        start = end + 1;
    }
    return grid;
}

const Statistic& CellReport::aggregate(std::string_view name) const
{
    for (const auto& [k, s] : aggregates)
        if (k == name)
            return s;
    throw std::out_of_range("no aggregate named '" + std::string(name) + "'");
}

double CellReport::param(std::string_view name) const
{
    return value_of(params, name);
}

bool ExperimentReport::passed() const
{
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

TrialError::TrialError(std::size_t cell, std::size_t trial, const std::string& what)
    : std::runtime_error("cell " + std::to_string(cell) + ", trial " + std::to_string(trial) + ": " + what),
      cell_(cell), trial_(trial)
{
}

std::vector<std::pair<std::string, Statistic>> aggregate(std::span<const TrialRecord> records)
{
    std::vector<std::pair<std::string, Statistic>> out;
    if (records.empty())
        return out;
    for (const auto& [key, unused] : records.front().values) {
        (void)unused;
        double sum = 0.0;
        for (const auto& r : records)
            sum += value_of(r.values, key);
        const double n = static_cast<double>(records.size());
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : records) {
            const double d = value_of(r.values, key) - mean;
            ss += d * d;
        }
        const double se = records.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
        out.emplace_back(key, Statistic{mean, se, records.size()});
    }
    return out;
}

double expected_abs_poisson_difference(double mu1, double mu2)
{
    if (!(mu1 >= 0.0) || !(mu2 >= 0.0) || !std::isfinite(mu1) || !std::isfinite(mu2))
        throw std::invalid_argument("Poisson means must be finite and non-negative");
    auto pmf = [](double mu) {
        if (mu == 0.0)
            return std::vector<double>{1.0};
        const double sd = std::sqrt(mu);
        const auto hi = static_cast<std::size_t>(mu + 12.0 * sd + 30.0);
        std::vector<double> p(hi + 1);
        for (std::size_t k = 0; k <= hi; ++k)
            p[k] = std::exp(static_cast<double>(k) * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0));
        return p;
    };
    const auto p1 = pmf(mu1);
    const auto p2 = pmf(mu2);
    double total = 0.0;
    for (std::size_t a = 0; a < p1.size(); ++a) {
        if (p1[a] < 1e-300)
            continue;
        double inner = 0.0;
        for (std::size_t b = 0; b < p2.size(); ++b)
            inner += p2[b] * std::abs(static_cast<double>(a) - static_cast<double>(b));
        total += p1[a] * inner;
    }
    return total;
}

ExperimentReport run(const ExperimentSpec& spec, Execution execution)
{
    spec.validate();
    const auto started = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.spec = spec;
    const auto cells = expand_cells(spec);
    const std::size_t jobs = cells.size() * spec.trials;
    report.records.resize(jobs);
    std::vector<std::exception_ptr> errors(jobs);

    auto do_job = [&](std::size_t job) {
        const std::size_t c = job / spec.trials;
        const std::size_t t = job % spec.trials;
        auto& rec = report.records[job];
        rec.cell = c;
        rec.trial = t;
        rec.seed = derive_seed(spec.seed, c, t);
        try {
            rec.values = run_trial(spec, cells[c].params, rec.seed);
        } catch (...) {
            errors[job] = std::current_exception();
        }
    };

    if (execution == Execution::parallel) {
        const auto n = static_cast<long long>(jobs);
#pragma omp parallel for schedule(dynamic)
        for (long long job = 0; job < n; ++job)
            do_job(static_cast<std::size_t>(job));
    } else {
        for (std::size_t job = 0; job < jobs; ++job)
            do_job(job);
    }

    for (std::size_t job = 0; job < jobs; ++job) {
        if (!errors[job])
            continue;
        try {
            std::rethrow_exception(errors[job]);
        } catch (const std::exception& e) {
            throw TrialError(job / spec.trials, job % spec.trials, e.what());
        }
    }

    std::vector<std::span<const TrialRecord>> by_cell;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::span<const TrialRecord> slice(report.records.data() + c * spec.trials, spec.trials);
        by_cell.push_back(slice);
        report.cells.push_back({cells[c].params, aggregate(slice)});
    }
    add_checks(report, by_cell);

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace frogs
