#ifndef ICMLAB_PARTIAL_VIEW_HPP
#define ICMLAB_PARTIAL_VIEW_HPP

#include <cstdint>
#include <vector>

#include "icmlab/graph.hpp"

namespace icmlab {

// Hidden-node mask over the oracle id space.
struct PartialView {
    std::vector<std::uint8_t> hidden;  // size = oracle node_count
    double rho = 0.0;
    std::uint64_t sample_id = 0;
    NodeId hidden_count = 0;

    bool is_hidden(NodeId v) const { return hidden[v] != 0; }
    NodeId visible_count() const {
        return static_cast<NodeId>(hidden.size()) - hidden_count;
    }
};

// Exactly round-half-up(rho * |V|) nodes, uniform without replacement.
PartialView sample_hidden(const Graph& g, double rho, std::uint64_t rng_seed,
                          std::uint64_t sample_id = 0);

// Induced visible graph plus the id mappings linking it to the oracle.
struct PartialGraph {
    Graph graph;                       // node ids 0..|V_p|-1
    std::vector<NodeId> to_oracle;     // partial id -> oracle id
    std::vector<NodeId> from_oracle;   // oracle id -> partial id, kInvalidNode if hidden
};

PartialGraph partial_graph(const Graph& g, const PartialView& view);

// View file: first non-comment line "<rho> <sample_id>", then one hidden
// oracle id per line.
void save_view(const PartialView& view, const std::string& path);
PartialView load_view(const Graph& g, const std::string& path);

}  // namespace icmlab

#endif
