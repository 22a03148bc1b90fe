#include "icmlab/seeding.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "icmlab/rng.hpp"

namespace icmlab {

NodeId seed_count_for_gamma(double gamma, NodeId visible_count) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    const auto k = static_cast<NodeId>(
        std::floor(gamma * static_cast<double>(visible_count) + 0.5));
    return std::max<NodeId>(1, k);
}

SeedSet degree_discount_seeds(const Graph& g_partial, NodeId k, double p) {
    const NodeId n = g_partial.node_count();
    if (k == 0 || k > n)
        throw std::invalid_argument("degree_discount_seeds: k must be in [1, |V_p|]");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("degree_discount_seeds: p must be in [0,1]");

    std::vector<NodeId> selected_neighbors(n, 0);  // t(v)
    std::vector<std::uint8_t> picked(n, 0);
    auto score = [&](NodeId v) {
        const double d = g_partial.degree(v);
        const double t = selected_neighbors[v];
        return d - 2.0 * t - (d - t) * t * p;
    };

    // Lazy max-heap; stale entries are re-pushed with the current score.
    struct Entry {
        double score;
        NodeId id;
        bool operator<(const Entry& o) const {
            return score < o.score || (score == o.score && id > o.id);
        }
    };
    std::priority_queue<Entry> heap;
    for (NodeId v = 0; v < n; ++v) heap.push({score(v), v});

    SeedSet out;
    out.seeds.reserve(k);
    while (out.seeds.size() < k) {
        Entry e = heap.top();
        heap.pop();
        if (picked[e.id]) continue;
        const double cur = score(e.id);
        if (e.score != cur) {
            heap.push({cur, e.id});
            continue;
        }
        picked[e.id] = 1;
        out.seeds.push_back(e.id);
        for (NodeId u : g_partial.neighbors(e.id))
            if (!picked[u]) {
                ++selected_neighbors[u];
                heap.push({score(u), u});
            }
    }
    return out;
}

SeedSet random_seeds(const Graph& g_partial, NodeId k, std::uint64_t rng_seed) {
    const NodeId n = g_partial.node_count();
    if (k == 0 || k > n)
        throw std::invalid_argument("random_seeds: k must be in [1, |V_p|]");
    rng::Engine eng(rng::derive(rng_seed, 0x73656564ull));
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    SeedSet out;
    out.seeds.reserve(k);
    for (NodeId i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng::uniform_index(eng, n - i));
        std::swap(pool[i], pool[j]);
        out.seeds.push_back(pool[i]);
    }
    return out;
}

void save_seeds(const SeedSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write seeds: " + path);
    out << "# k=" << s.seeds.size() << " gamma=" << s.gamma
        << " rounding=half-up\n";
    for (NodeId v : s.seeds) out << v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<NodeId> load_seeds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open seeds: " + path);
    std::vector<NodeId> seeds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        NodeId v;
        if (!(ss >> v)) throw std::runtime_error(path + ": bad seed line");
        seeds.push_back(v);
    }
    if (seeds.empty()) throw std::runtime_error(path + ": no seeds");
    return seeds;
}

}  // namespace icmlab
