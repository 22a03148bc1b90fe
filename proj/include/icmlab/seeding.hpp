#ifndef ICMLAB_SEEDING_HPP
#define ICMLAB_SEEDING_HPP

#include <cstdint>
#include <vector>

#include "icmlab/graph.hpp"

namespace icmlab {

struct SeedSet {
    std::vector<NodeId> seeds;  // distinct, in the id space of the seeding graph
    double gamma = 0.0;         // seed fraction that produced |seeds| (0 if direct k)
};

// max(1, round-half-up(gamma * visible_count))
NodeId seed_count_for_gamma(double gamma, NodeId visible_count);

// Discounted-degree heuristic: greedy k picks, score
//   dd(v) = d(v) - 2 t(v) - (d(v) - t(v)) t(v) p
// with t(v) = already-selected neighbors of v. Ties break to the lower id.
SeedSet degree_discount_seeds(const Graph& g_partial, NodeId k, double p);

// k distinct nodes, uniform without replacement.
SeedSet random_seeds(const Graph& g_partial, NodeId k, std::uint64_t rng_seed);

void save_seeds(const SeedSet& s, const std::string& path);
std::vector<NodeId> load_seeds(const std::string& path);

}  // namespace icmlab

#endif
