#ifndef ICMLAB_CORRECTION_HPP
#define ICMLAB_CORRECTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "icmlab/diffusion.hpp"
#include "icmlab/graph.hpp"

namespace icmlab {

// Per-level observables of one diffusion on the partial graph.
struct PartialCascadeProfile {
    std::vector<double> per_level_sizes;        // sigma_p^t, t = 0..horizon
    std::vector<double> per_level_mean_degree;  // E(deg^t) of step-t activators
    double seed_count = 0.0;                    // sigma_p^0
    double rho = 0.0;
    double p = 0.0;                             // transmission probability
    double fallback_mean_degree = 0.0;          // partial-graph global mean degree

    double total() const;  // sigma_p
};

PartialCascadeProfile profile_from_trace(const DiffusionTrace& trace,
                                         const Graph& g_partial, double rho,
                                         double p);

enum class CorrectionMethod { partial, sice, rece };

struct CorrectionEstimate {
    CorrectionMethod method = CorrectionMethod::partial;
    double sigma_hat = 0.0;
    std::vector<double> per_level;  // filled for rece
    bool literal = false;           // sice aggregate mode sigma_p/(1-rho)
};

// Simple expansion. Default per-node reading keeps the seed level exact:
// sigma_hat = |S| + (sigma_p - |S|)/(1-rho). Literal mode: sigma_p/(1-rho).
CorrectionEstimate sice(const PartialCascadeProfile& profile, bool literal = false);

// Recursive level-by-level expansion: level 0 uncorrected, level 1 inflated
// by 1/(1-rho), and for t >= 2 the inferred surplus of level t-1 spreads on
// with E(deg^{t-1}) * p expected extra activations per inferred node.
CorrectionEstimate rece(const PartialCascadeProfile& profile);

// |sigma - sigma_hat| / sigma
double correction_error(double sigma, double sigma_hat);

const char* method_name(CorrectionMethod m);

// Profile CSV: comment metadata, then header "level,size,mean_degree".
void save_profile(const PartialCascadeProfile& profile, const std::string& path);
PartialCascadeProfile load_profile(const std::string& path);

}  // namespace icmlab

#endif
