// Serial vs OpenMP timing of the experiment runner. Also confirms both paths
// produce the same report.

#include "frogs/experiments.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>

using namespace frogs;

namespace {

double seconds_of(const ExperimentSpec& spec, Execution exec, ExperimentReport& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    out = run(spec, exec);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv)
{
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-20s %10s %10s %8s %s\n", "experiment", "serial_s", "parallel_s", "speedup", "identical");

    int mismatches = 0;
    for (auto id : {ExperimentId::parity, ExperimentId::perfectness, ExperimentId::two_color_phase,
                    ExperimentId::shy_desire_growth, ExperimentId::fussy_scan, ExperimentId::grundy_interval}) {
        auto spec = ExperimentSpec::defaults(id);
        spec.seed = 2024;
        if (quick)
            spec.trials = std::max<std::size_t>(1, spec.trials / 10);
        ExperimentReport serial, parallel;
        const double ts = seconds_of(spec, Execution::serial, serial);
        const double tp = seconds_of(spec, Execution::parallel, parallel);
        const bool same = report_to_json(serial) == report_to_json(parallel);
        mismatches += same ? 0 : 1;
        std::printf("%-20s %10.3f %10.3f %8.2f %s\n", std::string(to_string(id)).c_str(), ts, tp, ts / tp,
                    same ? "yes" : "NO");
    }
    return mismatches == 0 ? 0 : 1;
}
