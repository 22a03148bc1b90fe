#include "icmlab/cascade.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace icmlab {

CascadeDecomposition decompose(const DiffusionTrace& trace, const PartialView& view,
                               AttributionRule rule) {
    if (trace.node_count != view.hidden.size())
        throw std::invalid_argument("decompose: trace/view mismatch");

    CascadeDecomposition out;
    std::unordered_map<NodeId, double> observed;  // f_o per activated node
    observed.reserve(trace.size());

    double first_hop_mass = 0.0;
    std::uint32_t cur_step = 0;
    std::uint32_t step_count = 0;
    double step_mass = 0.0;
    auto flush_step = [&] {
        if (step_count > 0)
            out.per_step.push_back(
                {cur_step, step_count, step_mass / static_cast<double>(step_count)});
    };

    for (const Activation& a : trace.activations) {
        if (a.time != cur_step) {
            flush_step();
            cur_step = a.time;
            step_count = 0;
            step_mass = 0.0;
        }
        double f;
        if (view.is_hidden(a.node)) {
            f = 0.0;
            out.sigma_h += 1.0;
        } else if (a.parents.empty()) {
            f = 1.0;  // seed
            out.sigma_o += 1.0;
        } else {
            if (rule == AttributionRule::fractional) {
                double sum = 0.0;
                for (NodeId p : a.parents)
                    if (!view.is_hidden(p)) sum += observed.at(p);
                f = sum / static_cast<double>(a.parents.size());
            } else {
                f = 1.0;
                for (NodeId p : a.parents)
                    if (view.is_hidden(p) || observed.at(p) != 1.0) {
                        f = 0.0;
                        break;
                    }
            }
            out.sigma_o += f;
            out.sigma_ph += 1.0 - f;
        }
        observed.emplace(a.node, f);
        out.sigma += 1.0;
        step_mass += f;
        ++step_count;
        if (a.time <= 1) first_hop_mass += f;
    }
    flush_step();
    if (out.sigma > 0.0) out.first_hop_observed_fraction = first_hop_mass / out.sigma;
    return out;
}

std::vector<double> shape_histogram(std::span<const DiffusionTrace> traces) {
    if (traces.empty()) throw std::invalid_argument("shape_histogram: no traces");
    std::uint32_t max_horizon = 0;
    for (const auto& t : traces) max_horizon = std::max(max_horizon, t.horizon);

    std::vector<double> sums(max_horizon + 1, 0.0);
    std::vector<std::size_t> counts(max_horizon + 1, 0);
    for (const auto& t : traces) {
        for (std::uint32_t s = 0; s <= t.horizon; ++s) ++counts[s];
        for (const Activation& a : t.activations) sums[a.time] += 1.0;
    }
    std::vector<double> mean(max_horizon + 1, 0.0);
    for (std::uint32_t s = 0; s <= max_horizon; ++s)
        mean[s] = sums[s] / static_cast<double>(counts[s]);
    return mean;
}

LevelStats level_stats(const DiffusionTrace& trace, const Graph& g) {
    // clustering only for nodes the trace actually touched
    std::vector<double> full(g.node_count(), -1.0);
    for (const Activation& a : trace.activations)
        if (full[a.node] < 0.0) full[a.node] = local_clustering(g, a.node);
    return level_stats(trace, g, full);
}

LevelStats level_stats(const DiffusionTrace& trace, const Graph& g,
                       std::span<const double> clustering) {
    LevelStats out;
    std::uint32_t cur = 0;
    double clu = 0.0, deg = 0.0;
    std::uint32_t count = 0;
    auto flush = [&] {
        if (count > 0) {
            out.steps.push_back(cur);
            out.mean_clustering.push_back(clu / count);
            out.mean_degree.push_back(deg / count);
            out.counts.push_back(count);
        }
    };
    for (const Activation& a : trace.activations) {
        if (a.time != cur) {
            flush();
            cur = a.time;
            clu = deg = 0.0;
            count = 0;
        }
        clu += clustering[a.node];
        deg += g.degree(a.node);
        ++count;
    }
    flush();
    return out;
}

}  // namespace icmlab
