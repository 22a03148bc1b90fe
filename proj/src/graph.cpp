#include "icmlab/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "icmlab/rng.hpp"

namespace icmlab {

Graph Graph::from_edges(NodeId node_count,
                        std::vector<std::pair<NodeId, NodeId>> edges) {
    for (auto& e : edges) {
        if (e.first >= node_count || e.second >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.node_count_ = node_count;
    g.edge_count_ = edges.size();
    std::vector<std::size_t> deg(node_count + 1, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u + 1];
        ++deg[v + 1];
    }
    for (std::size_t i = 1; i <= node_count; ++i) deg[i] += deg[i - 1];
    g.offsets_ = deg;
    g.adj_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (NodeId u = 0; u < node_count; ++u) {
        auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
        auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
        std::sort(begin, end);
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const char* s = line.c_str();
        const char* end = s + line.size();
        while (s < end && std::isspace(static_cast<unsigned char>(*s))) ++s;
        if (s == end || *s == '#') continue;

        std::uint64_t ids[2];
        for (int k = 0; k < 2; ++k) {
            auto [ptr, ec] = std::from_chars(s, end, ids[k]);
            if (ec != std::errc{})
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": malformed edge line");
            s = ptr;
            while (s < end && std::isspace(static_cast<unsigned char>(*s))) ++s;
        }
        if (s != end)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": trailing tokens on edge line");
        raw.emplace_back(ids[0], ids[1]);
    }
    if (raw.empty()) throw std::runtime_error(path + ": zero nodes after parsing");

    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [u, v] : raw) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > std::numeric_limits<NodeId>::max())
        throw std::runtime_error(path + ": too many nodes");

    std::unordered_map<std::uint64_t, NodeId> compact;
    compact.reserve(ids.size());
    for (NodeId i = 0; i < ids.size(); ++i) compact.emplace(ids[i], i);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v] : raw)
        edges.emplace_back(compact.at(u), compact.at(v));

    Graph g = Graph::from_edges(static_cast<NodeId>(ids.size()), std::move(edges));
    g.set_original_ids(std::move(ids));
    return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    const auto& orig = g.original_ids();
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) {
                if (orig.empty())
                    out << u << ' ' << v << '\n';
                else
                    out << orig[u] << ' ' << orig[v] << '\n';
            }
    if (!out) throw std::runtime_error("write failed: " + path);
}

double local_clustering(const Graph& g, NodeId v) {
    const NodeId d = g.degree(v);
    if (d < 2) return 0.0;
    auto nbrs = g.neighbors(v);
    std::size_t links = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        auto inner = g.neighbors(nbrs[i]);
        // count common neighbors with rank above i to get each pair once
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (std::binary_search(inner.begin(), inner.end(), nbrs[j])) ++links;
    }
    return 2.0 * static_cast<double>(links) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
}

std::vector<double> all_clustering(const Graph& g) {
    std::vector<double> c(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) c[v] = local_clustering(g, v);
    return c;
}

namespace {

// BFS from src; returns eccentricity within its component and visited count.
std::pair<std::uint32_t, std::size_t> bfs_eccentricity(const Graph& g, NodeId src,
                                                       std::vector<std::uint32_t>& dist,
                                                       std::vector<NodeId>& queue) {
    std::fill(dist.begin(), dist.end(), kInvalidNode);
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    std::uint32_t ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (NodeId v : g.neighbors(u))
            if (dist[v] == kInvalidNode) {
                dist[v] = dist[u] + 1;
                ecc = std::max(ecc, dist[v]);
                queue.push_back(v);
            }
    }
    return {ecc, queue.size()};
}

}  // namespace

std::vector<NodeId> largest_component(const Graph& g) {
    std::vector<NodeId> comp(g.node_count(), kInvalidNode);
    std::vector<NodeId> queue;
    NodeId best_root = 0;
    std::size_t best_size = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (comp[s] != kInvalidNode) continue;
        queue.clear();
        queue.push_back(s);
        comp[s] = s;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeId v : g.neighbors(queue[head]))
                if (comp[v] == kInvalidNode) {
                    comp[v] = s;
                    queue.push_back(v);
                }
        if (queue.size() > best_size) {
            best_size = queue.size();
            best_root = s;
        }
    }
    std::vector<NodeId> out;
    out.reserve(best_size);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (comp[v] == best_root) out.push_back(v);
    return out;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep,
                       std::vector<NodeId>* to_parent) {
    std::vector<NodeId> from_parent(g.node_count(), kInvalidNode);
    for (NodeId i = 0; i < keep.size(); ++i) from_parent[keep[i]] = i;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < keep.size(); ++i)
        for (NodeId v : g.neighbors(keep[i]))
            if (keep[i] < v && from_parent[v] != kInvalidNode)
                edges.emplace_back(i, from_parent[v]);
    if (to_parent) to_parent->assign(keep.begin(), keep.end());
    return Graph::from_edges(static_cast<NodeId>(keep.size()), std::move(edges));
}

TopologyReport topology_report(const Graph& g,
                               std::optional<std::uint32_t> diameter_sample,
                               std::uint64_t rng_seed, unsigned workers) {
    if (g.node_count() == 0) throw std::invalid_argument("empty graph");

    TopologyReport rep;
    const double n = g.node_count();
    rep.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / n;

    double clu_sum = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) clu_sum += local_clustering(g, v);
    rep.avg_clustering = clu_sum / n;

    // degree assortativity: Pearson over ordered endpoint-degree pairs
    double sx = 0, sxx = 0, sxy = 0;
    double m = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const double du = g.degree(u);
        for (NodeId v : g.neighbors(u)) {
            const double dv = g.degree(v);
            sx += du;
            sxx += du * du;
            sxy += du * dv;
            m += 1.0;
        }
    }
    if (m > 0) {
        const double mean = sx / m;
        const double var = sxx / m - mean * mean;
        const double cov = sxy / m - mean * mean;
        rep.assortativity = var > 1e-12 ? cov / var : 0.0;
    }

    std::vector<NodeId> lcc = largest_component(g);
    rep.component_size = static_cast<NodeId>(lcc.size());

    std::vector<NodeId> sources;
    if (diameter_sample && *diameter_sample < lcc.size()) {
        rep.estimated = true;
        rng::Engine eng(rng::derive(rng_seed, 0x70706f6cull));
        std::vector<NodeId> pool = lcc;
        for (std::uint32_t i = 0; i < *diameter_sample; ++i) {
            std::size_t j = i + static_cast<std::size_t>(
                                    rng::uniform_index(eng, pool.size() - i));
            std::swap(pool[i], pool[j]);
            sources.push_back(pool[i]);
        }
    } else {
        sources = lcc;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint32_t> dia{0};
    std::atomic<std::uint32_t> rad{kInvalidNode};
    auto work = [&] {
        std::vector<std::uint32_t> dist(g.node_count());
        std::vector<NodeId> queue;
        queue.reserve(lcc.size());
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= sources.size()) break;
            auto [ecc, reached] = bfs_eccentricity(g, sources[i], dist, queue);
            (void)reached;
            std::uint32_t cur = dia.load();
            while (ecc > cur && !dia.compare_exchange_weak(cur, ecc)) {}
            cur = rad.load();
            while (ecc < cur && !rad.compare_exchange_weak(cur, ecc)) {}
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    rep.diameter = dia.load();
    rep.radius = rad.load() == kInvalidNode ? 0 : rad.load();
    return rep;
}

}  // namespace icmlab
