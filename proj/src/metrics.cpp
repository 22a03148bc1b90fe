#include "icmlab/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace icmlab {

namespace {
double sample_error(const SampleSummary& s) {
    const double denom = s.mean_sigma_ph + s.mean_sigma_o;
    if (denom <= 0.0)
        throw std::invalid_argument("relative_error: zero denominator in sample " +
                                    std::to_string(s.sample_id));
    return std::abs(denom - s.mean_sigma_p) / denom;
}
}  // namespace

double relative_error(std::span<const SampleSummary> summaries) {
    if (summaries.empty())
        throw std::invalid_argument("relative_error: no samples");
    double sum = 0.0;
    for (const auto& s : summaries) sum += sample_error(s);
    return sum / static_cast<double>(summaries.size());
}

RelativeError relative_error_ci(std::span<const SampleSummary> summaries) {
    const double v = static_cast<double>(summaries.size());
    double sum = 0.0, sumsq = 0.0;
    for (const auto& s : summaries) {
        const double e = sample_error(s);
        sum += e;
        sumsq += e * e;
    }
    RelativeError out;
    out.mean = sum / v;
    double half = 0.0;
    if (summaries.size() > 1) {
        const double var = (sumsq - sum * sum / v) / (v - 1.0);
        half = 1.959963984540054 * std::sqrt(std::max(0.0, var) / v);
    }
    out.ci_low = out.mean - half;
    out.ci_high = out.mean + half;
    return out;
}

std::vector<double> convergence_zscores(std::span<const double> run_sizes) {
    const std::size_t r_max = run_sizes.size();
    if (r_max < 2)
        throw std::invalid_argument("convergence_zscores: need at least 2 runs");

    double sum = 0.0, sumsq = 0.0;
    for (double x : run_sizes) {
        sum += x;
        sumsq += x * x;
    }
    const double n = static_cast<double>(r_max);
    const double final_mean = sum / n;
    const double var = sumsq / n - final_mean * final_mean;  // population variance
    const double stddev = var > 0.0 ? std::sqrt(var) : 0.0;

    std::vector<double> z(r_max, 0.0);
    if (stddev == 0.0) return z;  // all runs identical
    double prefix = 0.0;
    for (std::size_t r = 1; r <= r_max; ++r) {
        prefix += run_sizes[r - 1];
        z[r - 1] = (prefix / static_cast<double>(r) - final_mean) / stddev;
    }
    z[r_max - 1] = 0.0;  // definitional
    return z;
}

}  // namespace icmlab
