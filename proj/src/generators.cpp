#include "icmlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "icmlab/rng.hpp"

namespace icmlab {

Graph erdos_renyi(NodeId n, double p_edge, std::uint64_t rng_seed) {
    if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
    if (p_edge < 0.0 || p_edge > 1.0)
        throw std::invalid_argument("erdos_renyi: p_edge must be in [0,1]");

    std::vector<std::pair<NodeId, NodeId>> edges;
    if (p_edge > 0.0) {
        rng::Engine eng(rng::derive(rng_seed, 0x6572ull));
        if (p_edge >= 1.0) {
            edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        } else {
            // Batagelj-Brandes skip sampling over the lower triangle.
            const double log1mp = std::log1p(-p_edge);
            std::int64_t v = 1, w = -1;
            while (v < static_cast<std::int64_t>(n)) {
                double u = rng::uniform_real(eng);
                // u in [0,1); guard against log(0)
                double skip = std::floor(std::log1p(-u) / log1mp);
                w += 1 + static_cast<std::int64_t>(skip);
                while (w >= v && v < static_cast<std::int64_t>(n)) {
                    w -= v;
                    ++v;
                }
                if (v < static_cast<std::int64_t>(n))
                    edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph toshk(const ToshkParams& params, std::uint64_t rng_seed) {
    const NodeId n = params.n;
    const double p = params.p_neighbor;
    const double k = params.k_target;
    if (n < 2) throw std::invalid_argument("toshk: n must be >= 2");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("toshk: p_neighbor must be in [0,1]");
    if (k <= 0.0) throw std::invalid_argument("toshk: k_target must be > 0");
    if (k >= static_cast<double>(n))
        throw std::invalid_argument("toshk: k_target unreachable for given n");

    rng::Engine eng(rng::derive(rng_seed, 0x746f73686bull));

    // Expected initial-contact count: m_r = 1 with probability q, else 2.
    // When p_neighbor*k is large the secondary budget dominates and the
    // calibration clamps to a single contact.
    const double m_bar = std::clamp(0.5 * k / (1.0 + p * k), 1.0, 2.0);
    const double q = 2.0 - m_bar;

    const NodeId clique_size =
        std::min<NodeId>(n, static_cast<NodeId>(std::ceil(k / 2.0)) + 1);

    std::vector<std::vector<NodeId>> adj(n);
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto add_edge = [&](NodeId a, NodeId b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        edges.emplace_back(a, b);
    };

    for (NodeId u = 0; u < clique_size; ++u)
        for (NodeId v = u + 1; v < clique_size; ++v) add_edge(u, v);

    std::unordered_set<NodeId> linked;
    std::vector<NodeId> candidates;
    for (NodeId v = clique_size; v < n; ++v) {
        const NodeId existing = v;
        NodeId m_r = rng::uniform_real(eng) < q ? 1 : 2;
        m_r = std::min<NodeId>(m_r, existing);

        double budget_real = std::max(0.0, 0.5 * k - static_cast<double>(m_r));
        std::size_t budget = static_cast<std::size_t>(budget_real);
        if (rng::uniform_real(eng) < budget_real - std::floor(budget_real)) ++budget;

        linked.clear();
        NodeId contacts[2] = {kInvalidNode, kInvalidNode};
        for (NodeId i = 0; i < m_r; ++i) {
            NodeId c;
            do {
                c = static_cast<NodeId>(rng::uniform_index(eng, existing));
            } while (linked.count(c));
            contacts[i] = c;
            linked.insert(c);
            add_edge(v, c);
        }
        for (NodeId i = 0; i < m_r && budget > 0; ++i) {
            candidates = adj[contacts[i]];
            rng::shuffle(eng, candidates.data(), candidates.size());
            for (NodeId w : candidates) {
                if (budget == 0) break;
                if (w == v || linked.count(w)) continue;
                if (rng::uniform_real(eng) < p) {
                    linked.insert(w);
                    add_edge(v, w);
                    --budget;
                }
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace icmlab
