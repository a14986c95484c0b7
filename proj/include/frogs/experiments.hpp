#pragma once

#include "frogs/geometry.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frogs {

enum class ExperimentId { parity, perfectness, two_color_phase, shy_desire_growth, fussy_scan, grundy_interval };

std::string_view to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view text);

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Grid keys per experiment (lists multiply out into cells, except `radius`,
/// which is measured within every trial):
///
///   parity             n                 uniform points in a box
///   perfectness        lambda            Poisson on a torus
///   two_color_phase    alpha, beta       amber/blue Poisson on a torus
///   shy_desire_growth  lambda, radius    Poisson on a torus
///   fussy_scan         rho, green        green/red Poisson on a torus
///   grundy_interval    n                 uniform points in a box
struct ExperimentSpec {
    ExperimentId id = ExperimentId::parity;
    std::map<std::string, std::vector<double>> grid;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    Region region;

    /// Grid and region the acceptance suite uses for `id`.
    static ExperimentSpec defaults(ExperimentId id);

    /// Throws SpecError: empty lists, missing or unknown keys, bad values, zero trials.
    void validate() const;
};

/// "k=v,k=v2,..."; repeated keys accumulate into a list.
std::map<std::string, std::vector<double>> parse_grid(std::string_view text);

struct Statistic {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
    std::size_t count = 0;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct TrialRecord {
    std::size_t cell = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    NamedValues values;
};

struct CellReport {
    NamedValues params;
    std::vector<std::pair<std::string, Statistic>> aggregates;

    const Statistic& aggregate(std::string_view name) const;
    double param(std::string_view name) const;
};

enum class CheckStatus { pass, fail, exploratory };
std::string_view to_string(CheckStatus s);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<CellReport> cells;
    std::vector<TrialRecord> records;
    std::vector<Check> checks;
    double wall_seconds = 0.0;

    bool passed() const;
};

class TrialError : public std::runtime_error {
public:
    TrialError(std::size_t cell, std::size_t trial, const std::string& what);
    std::size_t cell() const noexcept { return cell_; }
    std::size_t trial() const noexcept { return trial_; }

private:
    std::size_t cell_;
    std::size_t trial_;
};

enum class Execution { parallel, serial };

/// Runs every (cell, trial) with seed derive_seed(spec.seed, cell, trial).
/// The parallel and serial paths produce identical records.
ExperimentReport run(const ExperimentSpec& spec, Execution execution = Execution::parallel);

/// Per-key mean and standard error over a cell's records, in first-seen key order.
std::vector<std::pair<std::string, Statistic>> aggregate(std::span<const TrialRecord> records);

/// E|X - Y| for independent X ~ Poisson(mu1), Y ~ Poisson(mu2), by direct summation.
double expected_abs_poisson_difference(double mu1, double mu2);

// Pinned acceptance thresholds.
inline constexpr double kStatisticalBand = 3.0;        // standard errors
inline constexpr double kFussyPresenceThreshold = 0.95;

// ---------------------------------------------------------------------------
// Report files

enum class ReportFormat { json, csv };

struct EmitOptions {
    bool include_timing = false;  // wall-clock breaks byte-identity, so it is opt-in
};

std::string report_to_json(const ExperimentReport& report, const EmitOptions& options = {});
std::string report_to_csv(const ExperimentReport& report, const EmitOptions& options = {});
void emit(const ExperimentReport& report, ReportFormat format, const std::string& path,
          const EmitOptions& options = {});

} // namespace frogs
