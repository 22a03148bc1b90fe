#ifndef ICMLAB_GRAPH_HPP
#define ICMLAB_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace icmlab {

using NodeId = std::uint32_t;
inline constexpr NodeId kInvalidNode = 0xFFFFFFFFu;

// Undirected simple graph in CSR form. Immutable after construction;
// safe for concurrent reads.
class Graph {
public:
    Graph() = default;

    // Builds from an undirected edge list. Self-loops and duplicate edges
    // are dropped. node_count may exceed the largest endpoint (isolated
    // nodes are kept).
    static Graph from_edges(NodeId node_count,
                            std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    NodeId degree(NodeId u) const {
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }
    bool has_edge(NodeId u, NodeId v) const;

    // Each edge once, with u < v, in lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    // Mapping from compacted ids back to the ids found in the source file.
    // Empty means identity.
    const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }
    void set_original_ids(std::vector<std::uint64_t> ids) { original_ids_ = std::move(ids); }

private:
    NodeId node_count_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::vector<std::uint64_t> original_ids_;
};

struct TopologyReport {
    double avg_degree = 0.0;
    double avg_clustering = 0.0;
    std::uint32_t diameter = 0;
    std::uint32_t radius = 0;
    double assortativity = 0.0;
    bool estimated = false;          // diameter/radius from sampled sources
    NodeId component_size = 0;       // size of the component used for dia/rad
};

// Edge-list file: one "u v" pair per line, '#' comments ignored, arbitrary
// whitespace. Parallel edges and self-loops collapse; node ids compact to a
// contiguous 0-based range (mapping kept on the graph).
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

double local_clustering(const Graph& g, NodeId v);
std::vector<double> all_clustering(const Graph& g);

// Nodes of the largest connected component, ascending.
std::vector<NodeId> largest_component(const Graph& g);

// Induced subgraph on `keep` (ascending, distinct). Ids compact to 0..k-1
// in `keep` order; to_parent (optional) receives the reverse mapping.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep,
                       std::vector<NodeId>* to_parent = nullptr);

// Diameter/radius over the largest connected component: exact all-pairs BFS
// when diameter_sample is empty, else eccentricities from that many sampled
// sources. Degree-regular graphs report assortativity 0 (zero variance).
TopologyReport topology_report(const Graph& g,
                               std::optional<std::uint32_t> diameter_sample = {},
                               std::uint64_t rng_seed = 0,
                               unsigned workers = 1);

}  // namespace icmlab

#endif
