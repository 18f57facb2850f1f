#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cocite/community.hpp"
#include "oracles.hpp"

using namespace cocite;

namespace {

Graph triangle() {
    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    b.add_edge("a", "c");
    return std::move(b).build();
}

Graph bow_tie() {
    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    b.add_edge("a", "c");
    b.add_edge("c", "d");
    b.add_edge("c", "e");
    b.add_edge("d", "e");
    return std::move(b).build();
}

Graph two_k4_bridge() {
    Graph::Builder b;
    const char* left[] = {"a", "b", "c", "d"};
    const char* right[] = {"e", "f", "g", "h"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            b.add_edge(left[i], left[j]);
            b.add_edge(right[i], right[j]);
        }
    b.add_edge("d", "e");
    return std::move(b).build();
}

}  // namespace

TEST_CASE("maximal cliques of small graphs") {
    CHECK(maximal_cliques(triangle()) == std::vector<std::vector<NodeId>>{{"a", "b", "c"}});

    Graph::Builder path;
    path.add_edge("a", "b");
    path.add_edge("b", "c");
    CHECK(maximal_cliques(std::move(path).build()) == std::vector<std::vector<NodeId>>{{"a", "b"}, {"b", "c"}});

    CHECK(maximal_cliques(bow_tie()) == std::vector<std::vector<NodeId>>{{"a", "b", "c"}, {"c", "d", "e"}});
}

TEST_CASE("bow-tie percolates into two overlapping triangles") {
    auto cover = k_clique_communities(bow_tie(), 3);
    REQUIRE(cover.communities.size() == 2);
    CHECK(cover.communities[0] == std::vector<NodeId>{"a", "b", "c"});
    CHECK(cover.communities[1] == std::vector<NodeId>{"c", "d", "e"});
    CHECK(cover.membership.at("c") == std::set<int>{0, 1});
    CHECK(cover.uncovered.empty());
}

TEST_CASE("triangles sharing an edge merge into one community") {
    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("a", "c");
    b.add_edge("b", "c");
    b.add_edge("b", "d");
    b.add_edge("c", "d");
    auto cover = k_clique_communities(std::move(b).build(), 3);
    REQUIRE(cover.communities.size() == 1);
    CHECK(cover.communities[0] == std::vector<NodeId>{"a", "b", "c", "d"});
}

TEST_CASE("clique size below two is rejected") {
    CHECK_THROWS_AS(k_clique_communities(triangle(), 1), InfeasibleError);
}

TEST_CASE("percolation matches the brute-force oracle") {
    std::mt19937 rng(67);
    for (int rep = 0; rep < 60; ++rep) {
        std::size_t n = 3 + rng() % 10;
        Graph g = oracle::gnp(n, 0.2 + 0.5 * (rng() % 100) / 100.0, rng);
        for (int k = 2; k <= 4; ++k) {
            auto cover = k_clique_communities(g, k);
            CHECK(cover.communities == oracle::percolation(g, k));
        }
    }
}

TEST_CASE("cover invariants hold on random graphs") {
    std::mt19937 rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = oracle::gnp(4 + rng() % 12, 0.4, rng);
        int k = 2 + static_cast<int>(rng() % 3);
        auto cover = k_clique_communities(g, k);
        std::set<NodeId> seen;
        for (std::size_t i = 0; i < cover.communities.size(); ++i) {
            CHECK(cover.communities[i].size() >= static_cast<std::size_t>(k));
            for (const auto& id : cover.communities[i]) {
                CHECK(cover.membership.at(id).count(static_cast<int>(i)) == 1);
                seen.insert(id);
            }
        }
        for (const auto& [id, comms] : cover.membership)
            for (int c : comms)
                CHECK(std::binary_search(cover.communities[static_cast<std::size_t>(c)].begin(),
                                         cover.communities[static_cast<std::size_t>(c)].end(), id));
        for (const auto& id : cover.uncovered) CHECK(seen.count(id) == 0);
        CHECK(seen.size() + cover.uncovered.size() == g.n());
    }
}

TEST_CASE("modularity of reference partitions") {
    Graph tri = triangle();
    std::map<NodeId, int> one{{"a", 0}, {"b", 0}, {"c", 0}};
    CHECK(modularity(tri, one) == 0.0);

    std::map<NodeId, int> singletons{{"a", 0}, {"b", 1}, {"c", 2}};
    CHECK(modularity(tri, singletons) == Catch::Approx(-1.0 / 3.0).margin(1e-12));

    Graph k4s = two_k4_bridge();
    std::map<NodeId, int> planted;
    for (const char* id : {"a", "b", "c", "d"}) planted[id] = 0;
    for (const char* id : {"e", "f", "g", "h"}) planted[id] = 1;
    CHECK(modularity(k4s, planted) == Catch::Approx(11.0 / 26.0).margin(1e-12));
}

TEST_CASE("modularity rejects edgeless graphs and partial partitions") {
    Graph::Builder b;
    b.add_node("a");
    b.add_node("b");
    Graph g = std::move(b).build();
    CHECK_THROWS_AS(modularity(g, {{"a", 0}, {"b", 0}}), UndefinedMetricError);

    Graph tri = triangle();
    CHECK_THROWS_AS(modularity(tri, {{"a", 0}, {"b", 0}}), ValidationError);
}

TEST_CASE("modularity is invariant under uniform weight scaling") {
    std::mt19937 rng(73);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = oracle::gnp(4 + rng() % 20, 0.3, rng, /*weighted=*/true);
        if (g.m() == 0) continue;
        std::map<NodeId, int> assignment;
        for (const auto& id : g.nodes()) assignment[id] = static_cast<int>(rng() % 3);
        Graph::Builder scaled;
        for (const auto& id : g.nodes()) scaled.add_node(id);
        for (const auto& [u, v, w] : g.edges()) scaled.add_edge(g.id_of(u), g.id_of(v), w * 4.25);
        CHECK(modularity(g, assignment) ==
              Catch::Approx(modularity(std::move(scaled).build(), assignment)).margin(1e-12));
    }
}

TEST_CASE("modularity agrees with the adjacency-matrix oracle") {
    std::mt19937 rng(79);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = oracle::gnp(3 + rng() % 15, 0.4, rng, /*weighted=*/true);
        if (g.m() == 0) continue;
        std::map<NodeId, int> assignment;
        for (const auto& id : g.nodes()) assignment[id] = static_cast<int>(rng() % 4);
        CHECK(modularity(g, assignment) == Catch::Approx(oracle::modularity(g, assignment)).margin(1e-12));
    }
}

TEST_CASE("louvain recovers the planted two-clique split") {
    Graph g = two_k4_bridge();
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        Partition part = louvain(g, seed);
        CHECK(part.community_count == 2);
        CHECK(part.modularity == Catch::Approx(11.0 / 26.0).margin(1e-5));
        CHECK(part.assignment.at("a") == part.assignment.at("d"));
        CHECK(part.assignment.at("e") == part.assignment.at("h"));
        CHECK(part.assignment.at("a") != part.assignment.at("e"));
    }
}

TEST_CASE("louvain keeps a triangle together") {
    Partition part = louvain(triangle(), 9);
    CHECK(part.community_count == 1);
    CHECK(part.assignment.at("a") == 0);
}

TEST_CASE("louvain rejects edgeless graphs and bad resolutions") {
    Graph::Builder b;
    b.add_node("a");
    Graph g = std::move(b).build();
    CHECK_THROWS_AS(louvain(g, 1), UndefinedMetricError);
    CHECK_THROWS_AS(louvain(triangle(), 1, 0.0), InfeasibleError);
}

TEST_CASE("partition invariants: total, contiguous, matching Q") {
    std::mt19937 rng(83);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = oracle::gnp(5 + rng() % 25, 0.2, rng, /*weighted=*/true);
        if (g.m() == 0) continue;
        Partition part = louvain(g, static_cast<unsigned>(rep));
        CHECK(part.assignment.size() == g.n());
        std::set<int> ids;
        for (const auto& [_, c] : part.assignment) ids.insert(c);
        CHECK(static_cast<int>(ids.size()) == part.community_count);
        CHECK(*ids.begin() == 0);
        CHECK(*ids.rbegin() == part.community_count - 1);
        CHECK(part.modularity == Catch::Approx(modularity(g, part.assignment)).margin(1e-12));
    }
}

TEST_CASE("modularity never decreases across phases") {
    std::mt19937 rng(89);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = oracle::gnp(6 + rng() % 30, 0.15, rng, /*weighted=*/true);
        if (g.m() == 0) continue;
        std::vector<double> trace;
        louvain(g, static_cast<unsigned>(rep), 1.0, &trace);
        REQUIRE(!trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1] - 1e-12);
    }
}

TEST_CASE("best-of-n keeps the highest modularity run") {
    Graph g = two_k4_bridge();
    Partition best = louvain_best_of(g, 1, 10);
    CHECK(best.modularity == Catch::Approx(11.0 / 26.0).margin(1e-5));
    CHECK_THROWS_AS(louvain_best_of(g, 1, 0), InfeasibleError);
}
