#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "icmlab/cascade.hpp"
#include "icmlab/diffusion.hpp"
#include "icmlab/generators.hpp"
#include "icmlab/rng.hpp"

using namespace icmlab;

namespace {

PartialView all_visible(const Graph& g) {
    PartialView view;
    view.hidden.assign(g.node_count(), 0);
    return view;
}

struct MonteCarlo {
    double sigma = 0, sigma_o = 0, sigma_ph = 0, sigma_h = 0, sigma_p = 0;
    double se_sigma = 0, se_sigma_o = 0, se_sigma_ph = 0, se_sigma_h = 0, se_sigma_p = 0;
};

// Monte Carlo means and standard errors of the decomposition quantities on
// the oracle plus the activation count on the partial graph, run for run.
MonteCarlo monte_carlo(const Graph& g, const std::vector<NodeId>& seeds,
                       const EdgeProbabilities& probs, const PartialView& view,
                       int runs, std::uint64_t rng_seed) {
    PartialGraph pg = partial_graph(g, view);
    std::vector<NodeId> p_seeds;
    for (NodeId s : seeds) p_seeds.push_back(pg.from_oracle[s]);

    double sum[5] = {0}, sq[5] = {0};
    for (int run = 0; run < runs; ++run) {
        DiffusionTrace trace = run_icm(g, seeds, probs, rng::derive(rng_seed, 2 * run));
        CascadeDecomposition d = decompose(trace, view);
        DiffusionTrace pt =
            run_icm(pg.graph, p_seeds, probs, rng::derive(rng_seed, 2 * run + 1));
        const double vals[5] = {d.sigma, d.sigma_o, d.sigma_ph, d.sigma_h,
                                static_cast<double>(pt.size())};
        for (int i = 0; i < 5; ++i) {
            sum[i] += vals[i];
            sq[i] += vals[i] * vals[i];
        }
    }
    const double n = runs;
    MonteCarlo mc;
    double* means[5] = {&mc.sigma, &mc.sigma_o, &mc.sigma_ph, &mc.sigma_h, &mc.sigma_p};
    double* ses[5] = {&mc.se_sigma, &mc.se_sigma_o, &mc.se_sigma_ph, &mc.se_sigma_h,
                      &mc.se_sigma_p};
    for (int i = 0; i < 5; ++i) {
        *means[i] = sum[i] / n;
        const double var = std::max(0.0, sq[i] / n - (sum[i] / n) * (sum[i] / n));
        *ses[i] = std::sqrt(var / n);
    }
    return mc;
}

}  // namespace

TEST_CASE("p=0 activates exactly the seeds") {
    Graph g = erdos_renyi(30, 0.2, 1);
    EdgeProbabilities probs;
    probs.global_p = 0.0;
    std::vector<NodeId> seeds{3, 7};
    DiffusionTrace trace = run_icm(g, seeds, probs, 5);
    CHECK(trace.size() == 2);
    CHECK(trace.horizon == 0);
    for (const auto& a : trace.activations) {
        CHECK(a.time == 0);
        CHECK(a.parents.empty());
    }
}

TEST_CASE("p=1 floods a connected graph along BFS distances") {
    Graph g = toshk({200, 0.5, 6.0}, 3);
    EdgeProbabilities probs;
    probs.global_p = 1.0;
    std::vector<NodeId> seeds{0};
    DiffusionTrace trace = run_icm(g, seeds, probs, 11);
    REQUIRE(trace.size() == largest_component(g).size());

    std::vector<std::uint32_t> dist(g.node_count(), kInvalidNode);
    std::vector<NodeId> queue{0};
    dist[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (NodeId v : g.neighbors(queue[h]))
            if (dist[v] == kInvalidNode) {
                dist[v] = dist[queue[h]] + 1;
                queue.push_back(v);
            }
    for (const auto& a : trace.activations) {
        CHECK(a.time == dist[a.node]);
        if (a.time > 0) {
            // parents are all one-step-closer neighbors
            std::size_t closer = 0;
            for (NodeId w : g.neighbors(a.node))
                if (dist[w] + 1 == dist[a.node]) ++closer;
            CHECK(a.parents.size() == closer);
        }
    }
}

TEST_CASE("every parent activated exactly one step before its child") {
    Graph g = erdos_renyi(300, 0.02, 9);
    EdgeProbabilities probs;
    probs.global_p = 0.4;
    DiffusionTrace trace = run_icm(g, std::vector<NodeId>{0, 1, 2}, probs, 21);
    std::vector<std::uint32_t> time(g.node_count(), kInvalidNode);
    for (const auto& a : trace.activations) {
        CHECK(time[a.node] == kInvalidNode);  // no node activates twice
        time[a.node] = a.time;
    }
    for (const auto& a : trace.activations) {
        if (a.time == 0) continue;
        CHECK(a.parents.size() >= 1);
        for (NodeId p : a.parents) CHECK(time[p] + 1 == a.time);
    }
}

TEST_CASE("runs are deterministic in the seed") {
    Graph g = erdos_renyi(100, 0.05, 4);
    EdgeProbabilities probs;
    probs.global_p = 0.3;
    std::vector<NodeId> seeds{5};
    DiffusionTrace a = run_icm(g, seeds, probs, 77);
    DiffusionTrace b = run_icm(g, seeds, probs, 77);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.activations[i].node == b.activations[i].node);
        CHECK(a.activations[i].time == b.activations[i].time);
        CHECK(a.activations[i].parents == b.activations[i].parents);
    }
}

TEST_CASE("raising p under a fixed seed never shrinks the activated set") {
    Graph g = erdos_renyi(150, 0.03, 8);
    std::vector<NodeId> seeds{0, 1};
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        EdgeProbabilities lo, hi;
        lo.global_p = 0.15;
        hi.global_p = 0.55;
        std::set<NodeId> small, big;
        for (const auto& a : run_icm(g, seeds, lo, trial).activations)
            small.insert(a.node);
        for (const auto& a : run_icm(g, seeds, hi, trial).activations)
            big.insert(a.node);
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

TEST_CASE("seed outside the graph is rejected") {
    Graph g = erdos_renyi(10, 0.1, 0);
    EdgeProbabilities probs;
    CHECK_THROWS_AS(run_icm(g, std::vector<NodeId>{10}, probs, 0),
                    std::invalid_argument);
}

TEST_CASE("exact expectation on a single edge") {
    Graph g = Graph::from_edges(2, {{0, 1}});
    EdgeProbabilities probs;
    probs.global_p = 0.01;
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0}, probs, all_visible(g));
    CHECK(e.sigma == doctest::Approx(1.01));
    CHECK(e.sigma_o == doctest::Approx(1.01));
    CHECK(e.sigma_ph == doctest::Approx(0.0));
    CHECK(e.sigma_h == doctest::Approx(0.0));
    CHECK(e.sigma_p == doctest::Approx(1.01));
}

TEST_CASE("exact expectation on a deterministic hidden bridge") {
    // path s-h-v with h hidden, p=1
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    PartialView view = all_visible(g);
    view.hidden[1] = 1;
    view.hidden_count = 1;
    EdgeProbabilities probs;
    probs.global_p = 1.0;
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0}, probs, view);
    CHECK(e.sigma == doctest::Approx(3.0));
    CHECK(e.sigma_o == doctest::Approx(1.0));
    CHECK(e.sigma_h == doctest::Approx(1.0));
    CHECK(e.sigma_ph == doctest::Approx(1.0));
    CHECK(e.sigma_p == doctest::Approx(1.0));
}

TEST_CASE("exact expectation with p=0 counts only the seeds") {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    EdgeProbabilities probs;
    probs.global_p = 0.0;
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0, 2}, probs, all_visible(g));
    CHECK(e.sigma == doctest::Approx(2.0));
    CHECK(e.sigma_o == doctest::Approx(2.0));
    CHECK(e.sigma_p == doctest::Approx(2.0));
}

TEST_CASE("path expectation matches the hand value and Monte Carlo") {
    // s-a-b with p=0.5: E(sigma) = 1 + 0.5 + 0.25
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    EdgeProbabilities probs;
    probs.global_p = 0.5;
    PartialView view = all_visible(g);
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0}, probs, view);
    CHECK(e.sigma == doctest::Approx(1.75));

    MonteCarlo mc = monte_carlo(g, {0}, probs, view, 100000, 1234);
    CHECK(std::abs(mc.sigma - 1.75) < 3.0 * mc.se_sigma + 1e-12);
}

TEST_CASE("Monte Carlo matches exact expectations on a hidden-mask grid") {
    // 2x3 grid with two hidden nodes and p=0.3
    Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5},
                                    {0, 3}, {1, 4}, {2, 5}});
    PartialView view = all_visible(g);
    view.hidden[1] = view.hidden[4] = 1;
    view.hidden_count = 2;
    EdgeProbabilities probs;
    probs.global_p = 0.3;
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0}, probs, view);
    MonteCarlo mc = monte_carlo(g, {0}, probs, view, 100000, 777);
    CHECK(std::abs(mc.sigma - e.sigma) < 3 * mc.se_sigma + 1e-12);
    CHECK(std::abs(mc.sigma_o - e.sigma_o) < 3 * mc.se_sigma_o + 1e-12);
    CHECK(std::abs(mc.sigma_ph - e.sigma_ph) < 3 * mc.se_sigma_ph + 1e-12);
    CHECK(std::abs(mc.sigma_h - e.sigma_h) < 3 * mc.se_sigma_h + 1e-12);
    CHECK(std::abs(mc.sigma_p - e.sigma_p) < 3 * mc.se_sigma_p + 1e-12);
}

TEST_CASE("per-edge probabilities override the global p") {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    EdgeProbabilities probs;
    probs.global_p = 0.0;
    probs.set(0, 1, 1.0);
    DiffusionTrace trace = run_icm(g, std::vector<NodeId>{0}, probs, 3);
    CHECK(trace.size() == 2);  // 0 and 1 but never 2
    auto e = exact_icm_expectations(g, std::vector<NodeId>{0}, probs, all_visible(g));
    CHECK(e.sigma == doctest::Approx(2.0));
}

TEST_CASE("enumeration rejects oversized graphs") {
    Graph g = erdos_renyi(40, 0.2, 1);
    REQUIRE(g.edge_count() > 25);
    EdgeProbabilities probs;
    CHECK_THROWS_AS(
        exact_icm_expectations(g, std::vector<NodeId>{0}, probs, all_visible(g)),
        std::invalid_argument);
}
