#ifndef ICMLAB_DIFFUSION_HPP
#define ICMLAB_DIFFUSION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "icmlab/graph.hpp"
#include "icmlab/partial_view.hpp"

namespace icmlab {

// Symmetric per-edge transmission probabilities over a global default.
struct EdgeProbabilities {
    double global_p = 0.01;
    std::unordered_map<std::uint64_t, double> per_edge;  // key (min<<32)|max

    static std::uint64_t key(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }
    void set(NodeId u, NodeId v, double p) { per_edge[key(u, v)] = p; }
    double prob(NodeId u, NodeId v) const {
        if (per_edge.empty()) return global_p;
        auto it = per_edge.find(key(u, v));
        return it == per_edge.end() ? global_p : it->second;
    }
};

// Weights file: lines "u v p".
EdgeProbabilities load_edge_probabilities(const std::string& path, double global_p);

struct Activation {
    NodeId node;
    std::uint32_t time;
    std::vector<NodeId> parents;  // neighbors that succeeded; empty for seeds
};

struct DiffusionTrace {
    NodeId node_count = 0;
    std::vector<Activation> activations;  // ordered by (time, node)
    std::uint32_t horizon = 0;            // last step with any activation

    std::size_t size() const { return activations.size(); }
};

// Synchronous-round ICM. Every node activated at round t-1 gets one coin per
// neighbor not yet active at the start of round t; all coins for a round are
// resolved before activations commit, so several parents can succeed on the
// same node. The coin for the directed attempt i->j is a pure function of
// (rng_seed, i, j): reruns are reproducible regardless of traversal order,
// and raising p under the same seed can only grow the activated set.
DiffusionTrace run_icm(const Graph& g, std::span<const NodeId> seeds,
                       const EdgeProbabilities& probs, std::uint64_t rng_seed);

// Exact expectations of the decomposition quantities by enumerating every
// live-edge world (one shared coin per undirected edge, which is
// distribution-equivalent to the directed coins above). Test oracle; the
// oracle graph must have at most 25 edges.
struct ExactExpectations {
    double sigma = 0.0;
    double sigma_o = 0.0;
    double sigma_ph = 0.0;
    double sigma_h = 0.0;
    double sigma_p = 0.0;  // expected activation count on the partial graph
};

ExactExpectations exact_icm_expectations(const Graph& g,
                                         std::span<const NodeId> seeds,
                                         const EdgeProbabilities& probs,
                                         const PartialView& view);

}  // namespace icmlab

#endif
