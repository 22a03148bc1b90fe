#ifndef ICMLAB_GENERATORS_HPP
#define ICMLAB_GENERATORS_HPP

#include <cstdint>

#include "icmlab/graph.hpp"

namespace icmlab {

struct ToshkParams {
    NodeId n = 0;             // target node count (>= 2)
    double p_neighbor = 0.0;  // probability of linking to a contact's neighbor
    double k_target = 0.0;    // target average degree (> 0, < n)
};

// G(n, p) sample via geometric skip-sampling; expected cost O(n + |E|).
Graph erdos_renyi(NodeId n, double p_edge, std::uint64_t rng_seed);

// Social-network growth model: seed clique, then node-by-node arrivals that
// pick one or two uniform initial contacts and attach to the contacts'
// neighbors with probability p_neighbor, capped so the realized average
// degree tracks k_target.
Graph toshk(const ToshkParams& params, std::uint64_t rng_seed);

}  // namespace icmlab

#endif
