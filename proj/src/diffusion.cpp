#include "icmlab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "icmlab/cascade.hpp"
#include "icmlab/rng.hpp"

namespace icmlab {

EdgeProbabilities load_edge_probabilities(const std::string& path, double global_p) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights: " + path);
    EdgeProbabilities probs;
    probs.global_p = global_p;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        NodeId u, v;
        double p;
        if (!(ss >> u >> v >> p) || p < 0.0 || p > 1.0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed weight line");
        probs.set(u, v, p);
    }
    return probs;
}

DiffusionTrace run_icm(const Graph& g, std::span<const NodeId> seeds,
                       const EdgeProbabilities& probs, std::uint64_t rng_seed) {
    const NodeId n = g.node_count();
    DiffusionTrace trace;
    trace.node_count = n;

    std::vector<std::uint8_t> active(n, 0);
    std::vector<NodeId> frontier;
    for (NodeId s : seeds) {
        if (s >= n) throw std::invalid_argument("run_icm: seed outside graph");
        if (active[s]) continue;
        active[s] = 1;
        frontier.push_back(s);
    }
    std::sort(frontier.begin(), frontier.end());
    for (NodeId s : frontier) trace.activations.push_back({s, 0, {}});

    std::vector<NodeId> pending_slot(n, kInvalidNode);
    std::vector<Activation> newly;
    const bool uniform = probs.per_edge.empty();
    const double global_p = probs.global_p;

    for (std::uint32_t t = 1; !frontier.empty(); ++t) {
        newly.clear();
        for (NodeId i : frontier) {
            for (NodeId j : g.neighbors(i)) {
                if (active[j]) continue;
                const double p = uniform ? global_p : probs.prob(i, j);
                if (rng::to_unit(rng::derive(rng_seed, i, j)) < p) {
                    if (pending_slot[j] == kInvalidNode) {
                        pending_slot[j] = static_cast<NodeId>(newly.size());
                        newly.push_back({j, t, {}});
                    }
                    newly[pending_slot[j]].parents.push_back(i);
                }
            }
        }
        frontier.clear();
        if (newly.empty()) break;
        // frontier iterates ascending ids: newly is filled per ascending
        // activator but targets arrive unordered, so sort by node id
        std::sort(newly.begin(), newly.end(),
                  [](const Activation& a, const Activation& b) { return a.node < b.node; });
        for (Activation& a : newly) {
            active[a.node] = 1;
            pending_slot[a.node] = kInvalidNode;
            frontier.push_back(a.node);
            trace.horizon = t;
            trace.activations.push_back(std::move(a));
        }
    }
    return trace;
}

namespace {

struct WeightedEdge {
    NodeId u, v;
    double p;
};

// Enumerates every subset of live edges, builds the induced BFS trace
// (parents = live neighbors one level closer), and hands it to the sink
// together with the world's probability.
template <class Sink>
void enumerate_worlds(NodeId node_count, const std::vector<WeightedEdge>& edges,
                      std::span<const NodeId> seeds, Sink&& sink) {
    const std::size_t m = edges.size();
    std::vector<std::vector<NodeId>> adj(node_count);
    std::vector<std::uint32_t> dist(node_count);
    std::vector<NodeId> queue;
    DiffusionTrace trace;
    trace.node_count = node_count;

    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double weight = 1.0;
        for (std::size_t e = 0; e < m; ++e)
            weight *= (mask >> e) & 1 ? edges[e].p : 1.0 - edges[e].p;
        if (weight == 0.0) continue;

        for (auto& a : adj) a.clear();
        for (std::size_t e = 0; e < m; ++e)
            if ((mask >> e) & 1) {
                adj[edges[e].u].push_back(edges[e].v);
                adj[edges[e].v].push_back(edges[e].u);
            }

        std::fill(dist.begin(), dist.end(), kInvalidNode);
        queue.clear();
        for (NodeId s : seeds)
            if (dist[s] == kInvalidNode) {
                dist[s] = 0;
                queue.push_back(s);
            }
        std::sort(queue.begin(), queue.end());
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            for (NodeId v : adj[u])
                if (dist[v] == kInvalidNode) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }

        trace.activations.clear();
        trace.horizon = 0;
        std::sort(queue.begin(), queue.end(), [&](NodeId a, NodeId b) {
            return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
        });
        for (NodeId v : queue) {
            Activation a{v, dist[v], {}};
            if (dist[v] > 0) {
                for (NodeId w : adj[v])
                    if (dist[w] + 1 == dist[v]) a.parents.push_back(w);
                std::sort(a.parents.begin(), a.parents.end());
            }
            trace.horizon = std::max(trace.horizon, dist[v]);
            trace.activations.push_back(std::move(a));
        }
        sink(trace, weight);
    }
}

}  // namespace

ExactExpectations exact_icm_expectations(const Graph& g,
                                         std::span<const NodeId> seeds,
                                         const EdgeProbabilities& probs,
                                         const PartialView& view) {
    if (g.edge_count() > 25)
        throw std::invalid_argument("exact_icm_expectations: graph too large");
    if (view.hidden.size() != g.node_count())
        throw std::invalid_argument("exact_icm_expectations: view/graph mismatch");

    std::vector<WeightedEdge> edges;
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v, probs.prob(u, v)});

    ExactExpectations out;
    enumerate_worlds(g.node_count(), edges, seeds,
                     [&](const DiffusionTrace& trace, double w) {
                         CascadeDecomposition d = decompose(trace, view);
                         out.sigma += w * d.sigma;
                         out.sigma_o += w * d.sigma_o;
                         out.sigma_ph += w * d.sigma_ph;
                         out.sigma_h += w * d.sigma_h;
                     });

    PartialGraph pg = partial_graph(g, view);
    std::vector<WeightedEdge> p_edges;
    for (const auto& [u, v] : pg.graph.edges())
        p_edges.push_back({u, v, probs.prob(pg.to_oracle[u], pg.to_oracle[v])});
    std::vector<NodeId> p_seeds;
    for (NodeId s : seeds) {
        if (view.is_hidden(s)) continue;  // hidden seeds cannot exist on the partial side
        p_seeds.push_back(pg.from_oracle[s]);
    }
    enumerate_worlds(pg.graph.node_count(), p_edges, p_seeds,
                     [&](const DiffusionTrace& trace, double w) {
                         out.sigma_p += w * static_cast<double>(trace.size());
                     });
    return out;
}

}  // namespace icmlab
