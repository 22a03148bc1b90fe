#ifndef ICMLAB_METRICS_HPP
#define ICMLAB_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace icmlab {

// Per-sample expectations over r diffusion runs.
struct SampleSummary {
    std::uint64_t sample_id = 0;
    double rho = 0.0;
    double gamma = 0.0;
    double mean_sigma = 0.0;
    double mean_sigma_o = 0.0;
    double mean_sigma_ph = 0.0;
    double mean_sigma_h = 0.0;
    double mean_sigma_p = 0.0;
    double mean_first_hop = 0.0;
    int run_count = 0;
};

// Mean over samples of |(E(sigma_ph)+E(sigma_o)) - E(sigma_p)| /
// (E(sigma_ph)+E(sigma_o)).
double relative_error(std::span<const SampleSummary> summaries);

// Same, with a normal-approximation 95% confidence interval over samples.
struct RelativeError {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};
RelativeError relative_error_ci(std::span<const SampleSummary> summaries);

// z_r = (mean of first r values - mean at r_max) / population std at r_max.
// All-identical inputs yield all zeros; z at r_max is exactly 0.
std::vector<double> convergence_zscores(std::span<const double> run_sizes);

}  // namespace icmlab

#endif
