#ifndef ICMLAB_CASCADE_HPP
#define ICMLAB_CASCADE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "icmlab/diffusion.hpp"
#include "icmlab/graph.hpp"
#include "icmlab/partial_view.hpp"

namespace icmlab {

// How observed mass propagates through multi-parent activations.
//   fractional: a node inherits the mean observed fraction of its parents
//               (hidden parents contribute 0); generalizes the one-hop
//               half/half split to arbitrary depth.
//   strict_phantom: any hidden ancestor on any activation path makes the
//               node fully phantom.
enum class AttributionRule { fractional, strict_phantom };

struct StepRecord {
    std::uint32_t step = 0;
    std::uint32_t new_activations = 0;
    double observed_fraction_new = 0.0;  // mean observed label of the step's nodes
};

struct CascadeDecomposition {
    double sigma = 0.0;     // total activated (integer-valued)
    double sigma_o = 0.0;   // observed mass (fractional)
    double sigma_ph = 0.0;  // phantom mass (fractional)
    double sigma_h = 0.0;   // activated hidden nodes (integer-valued)
    std::vector<StepRecord> per_step;
    double first_hop_observed_fraction = 0.0;  // observed mass at t<=1 over sigma
};

CascadeDecomposition decompose(const DiffusionTrace& trace, const PartialView& view,
                               AttributionRule rule = AttributionRule::fractional);

// Mean new activations per step; the mean at step t runs over the traces
// whose horizon reaches t.
std::vector<double> shape_histogram(std::span<const DiffusionTrace> traces);

struct LevelStats {
    std::vector<std::uint32_t> steps;
    std::vector<double> mean_clustering;
    std::vector<double> mean_degree;
    std::vector<std::uint32_t> counts;
};

// Per activation step: mean local clustering and mean degree (in g) of the
// nodes newly activated at that step.
LevelStats level_stats(const DiffusionTrace& trace, const Graph& g);
LevelStats level_stats(const DiffusionTrace& trace, const Graph& g,
                       std::span<const double> clustering);

}  // namespace icmlab

#endif
