#include <doctest.h>

#include <stdexcept>

#include <filesystem>

#include "icmlab/generators.hpp"
#include "icmlab/partial_view.hpp"

using namespace icmlab;

TEST_CASE("rho=0 hides nothing and the partial graph equals the oracle") {
    Graph g = erdos_renyi(50, 0.1, 1);
    PartialView view = sample_hidden(g, 0.0, 0);
    CHECK(view.hidden_count == 0);
    PartialGraph pg = partial_graph(g, view);
    CHECK(pg.graph.edges() == g.edges());
    for (NodeId v = 0; v < g.node_count(); ++v) CHECK(pg.to_oracle[v] == v);
}

TEST_CASE("hidden count is round-half-up of rho * n") {
    Graph g10 = erdos_renyi(10, 0.0, 0);
    CHECK(sample_hidden(g10, 0.3, 1).hidden_count == 3);
    Graph g16619 = erdos_renyi(16619, 0.0, 0);
    CHECK(sample_hidden(g16619, 0.5, 1).hidden_count == 8310);  // 8309.5 rounds up
}

TEST_CASE("sampling is deterministic per seed and rejects rho >= 1") {
    Graph g = erdos_renyi(100, 0.05, 2);
    CHECK(sample_hidden(g, 0.4, 7).hidden == sample_hidden(g, 0.4, 7).hidden);
    CHECK(sample_hidden(g, 0.4, 7).hidden != sample_hidden(g, 0.4, 8).hidden);
    CHECK_THROWS_AS(sample_hidden(g, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_hidden(g, -0.1, 0), std::invalid_argument);
}

TEST_CASE("triangle with node 2 hidden induces a single edge") {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    PartialView view;
    view.hidden = {0, 0, 1};
    view.hidden_count = 1;
    view.rho = 1.0 / 3.0;
    PartialGraph pg = partial_graph(g, view);
    CHECK(pg.graph.node_count() == 2);
    CHECK(pg.graph.edge_count() == 1);
    CHECK(pg.graph.has_edge(0, 1));
    CHECK(pg.to_oracle == std::vector<NodeId>{0, 1});
    CHECK(pg.from_oracle[2] == kInvalidNode);
}

TEST_CASE("path 0-1-2 with the middle hidden leaves two isolated nodes") {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    PartialView view;
    view.hidden = {0, 1, 0};
    view.hidden_count = 1;
    PartialGraph pg = partial_graph(g, view);
    CHECK(pg.graph.node_count() == 2);
    CHECK(pg.graph.edge_count() == 0);
}

TEST_CASE("partial edges are oracle edges and avoid hidden endpoints") {
    Graph g = erdos_renyi(200, 0.03, 3);
    PartialView view = sample_hidden(g, 0.35, 4);
    PartialGraph pg = partial_graph(g, view);
    CHECK(pg.graph.node_count() + view.hidden_count == g.node_count());
    for (auto [u, v] : pg.graph.edges()) {
        NodeId uo = pg.to_oracle[u], vo = pg.to_oracle[v];
        CHECK_FALSE(view.is_hidden(uo));
        CHECK_FALSE(view.is_hidden(vo));
        CHECK(g.has_edge(uo, vo));
    }
}

TEST_CASE("per-node hidden frequency approaches rho over many samples") {
    Graph g = erdos_renyi(40, 0.0, 0);
    const double rho = 0.3;
    const int trials = 2000;
    std::vector<int> hits(g.node_count(), 0);
    for (int t = 0; t < trials; ++t) {
        PartialView view = sample_hidden(g, rho, 1000 + t);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (view.is_hidden(v)) ++hits[v];
    }
    // ~4.5 sigma band for Binomial(2000, 0.3)
    for (int h : hits) CHECK(std::abs(h / double(trials) - rho) < 0.047);
}

TEST_CASE("view file round trip") {
    Graph g = erdos_renyi(64, 0.05, 5);
    PartialView view = sample_hidden(g, 0.25, 9, 3);
    auto path = std::filesystem::temp_directory_path() / "icmlab_view_test.view";
    save_view(view, path.string());
    PartialView loaded = load_view(g, path.string());
    CHECK(loaded.hidden == view.hidden);
    CHECK(loaded.hidden_count == view.hidden_count);
    CHECK(loaded.rho == doctest::Approx(view.rho));
    CHECK(loaded.sample_id == view.sample_id);
    std::filesystem::remove(path);
}

TEST_CASE("partial_graph rejects a mismatched view") {
    Graph g = erdos_renyi(10, 0.2, 0);
    PartialView view;
    view.hidden.assign(9, 0);
    CHECK_THROWS_AS(partial_graph(g, view), std::invalid_argument);
}
