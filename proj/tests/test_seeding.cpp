#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "icmlab/generators.hpp"
#include "icmlab/seeding.hpp"

using namespace icmlab;

namespace {
Graph star(NodeId leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, std::move(edges));
}
}  // namespace

TEST_CASE("gamma to k conversion rounds half up with a floor of one") {
    CHECK(seed_count_for_gamma(0.0001, 100) == 1);
    CHECK(seed_count_for_gamma(0.01, 100) == 1);
    CHECK(seed_count_for_gamma(0.25, 10) == 3);    // 2.5 rounds up
    CHECK(seed_count_for_gamma(0.5, 9) == 5);      // 4.5 rounds up
    CHECK(seed_count_for_gamma(0.0, 100000) == 1);
}

TEST_CASE("degree discount picks the star center first") {
    SeedSet s = degree_discount_seeds(star(5), 1, 0.01);
    CHECK(s.seeds == std::vector<NodeId>{0});
}

TEST_CASE("degree discount penalizes neighbors of chosen seeds") {
    // star with center 0 and leaves 1..5, plus disjoint edge 6-7.
    // after picking 0, each leaf scores 1-2 = -1 while 6 and 7 score 1;
    // the 6 vs 7 tie breaks to the lower id.
    Graph g = Graph::from_edges(
        8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {6, 7}});
    SeedSet s = degree_discount_seeds(g, 2, 0.01);
    CHECK(s.seeds == std::vector<NodeId>{0, 6});
}

TEST_CASE("k equal to the node count selects everyone") {
    Graph g = star(4);
    SeedSet s = degree_discount_seeds(g, 5, 0.01);
    std::vector<NodeId> sorted = s.seeds;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(s.seeds.front() == 0);  // max degree goes first
}

TEST_CASE("degree discount with p=0 and spread-out picks is top-k degree") {
    // two stars of different sizes, far apart
    Graph g = Graph::from_edges(9, {{0, 1}, {0, 2}, {0, 3}, {0, 4},
                                    {5, 6}, {5, 7}, {5, 8}});
    SeedSet s = degree_discount_seeds(g, 2, 0.0);
    CHECK(s.seeds == std::vector<NodeId>{0, 5});
}

TEST_CASE("seed selection rejects k outside [1, n]") {
    Graph g = star(3);
    CHECK_THROWS_AS(degree_discount_seeds(g, 0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(degree_discount_seeds(g, 5, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(random_seeds(g, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_seeds(g, 5, 1), std::invalid_argument);
}

TEST_CASE("random seeds are distinct and deterministic per seed") {
    Graph g = erdos_renyi(100, 0.05, 1);
    SeedSet a = random_seeds(g, 20, 42);
    SeedSet b = random_seeds(g, 20, 42);
    SeedSet c = random_seeds(g, 20, 43);
    CHECK(a.seeds == b.seeds);
    CHECK(a.seeds != c.seeds);
    std::vector<NodeId> sorted = a.seeds;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("random seeds with k=n cover all nodes") {
    Graph g = star(4);
    SeedSet s = random_seeds(g, 5, 7);
    std::vector<NodeId> sorted = s.seeds;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<NodeId>{0, 1, 2, 3, 4});
}
