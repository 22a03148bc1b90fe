#include "icmlab/partial_view.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "icmlab/rng.hpp"

namespace icmlab {

PartialView sample_hidden(const Graph& g, double rho, std::uint64_t rng_seed,
                          std::uint64_t sample_id) {
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("sample_hidden: rho must be in [0,1)");
    const NodeId n = g.node_count();
    const auto count = static_cast<NodeId>(
        std::floor(rho * static_cast<double>(n) + 0.5));  // round half up
    if (count >= n && count > 0)
        throw std::invalid_argument("sample_hidden: partial network would be empty");

    PartialView view;
    view.rho = rho;
    view.sample_id = sample_id;
    view.hidden.assign(n, 0);
    view.hidden_count = count;

    if (count > 0) {
        rng::Engine eng(rng::derive(rng_seed, 0x68696465ull));
        std::vector<NodeId> pool(n);
        std::iota(pool.begin(), pool.end(), 0u);
        for (NodeId i = 0; i < count; ++i) {
            std::size_t j = i + static_cast<std::size_t>(
                                    rng::uniform_index(eng, n - i));
            std::swap(pool[i], pool[j]);
            view.hidden[pool[i]] = 1;
        }
    }
    return view;
}

PartialGraph partial_graph(const Graph& g, const PartialView& view) {
    if (view.hidden.size() != g.node_count())
        throw std::invalid_argument("partial_graph: view/graph size mismatch");

    std::vector<NodeId> visible;
    visible.reserve(view.visible_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!view.is_hidden(v)) visible.push_back(v);

    PartialGraph pg;
    pg.graph = induced_subgraph(g, visible, &pg.to_oracle);
    pg.from_oracle.assign(g.node_count(), kInvalidNode);
    for (NodeId i = 0; i < pg.to_oracle.size(); ++i)
        pg.from_oracle[pg.to_oracle[i]] = i;
    return pg;
}

void save_view(const PartialView& view, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write view: " + path);
    out << "# rho sample_id, then one hidden node id per line\n";
    out << view.rho << ' ' << view.sample_id << '\n';
    for (NodeId v = 0; v < view.hidden.size(); ++v)
        if (view.hidden[v]) out << v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

PartialView load_view(const Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open view: " + path);
    PartialView view;
    view.hidden.assign(g.node_count(), 0);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (!header_seen) {
            if (!(ss >> view.rho >> view.sample_id))
                throw std::runtime_error(path + ": malformed view header");
            header_seen = true;
            continue;
        }
        NodeId v;
        if (!(ss >> v) || v >= g.node_count())
            throw std::runtime_error(path + ": bad hidden node id");
        if (!view.hidden[v]) {
            view.hidden[v] = 1;
            ++view.hidden_count;
        }
    }
    if (!header_seen) throw std::runtime_error(path + ": missing view header");
    return view;
}

}  // namespace icmlab
