#include "frogs/seeding.hpp"

#include <cmath>

namespace frogs {

// Counts are drawn by inversion for small means and by the sum of
// independent small-mean pieces otherwise, so the result depends only on the
// raw engine output and not on the standard library's poisson_distribution.
std::uint64_t sample_poisson_count(Rng& rng, double mean)
{
    constexpr double chunk = 16.0;
    std::uint64_t total = 0;
    while (mean > 0.0) {
        const double mu = mean > chunk ? chunk : mean;
        mean -= mu;
        const double u = uniform01(rng);
        double p = std::exp(-mu);
        double cdf = p;
        std::uint64_t k = 0;
        while (u >= cdf && k < 1000) {
            ++k;
            p *= mu / static_cast<double>(k);
            cdf += p;
        }
        total += k;
    }
    return total;
}

} // namespace frogs
