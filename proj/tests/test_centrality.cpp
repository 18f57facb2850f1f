#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cocite/centrality.hpp"
#include "oracles.hpp"

using namespace cocite;

namespace {

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

}  // namespace

TEST_CASE("betweenness of a path puts everything on the middle node") {
    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    Graph g = std::move(b).build();
    auto table = betweenness_all(g, /*normalized=*/true);
    CHECK(table.values.at("b") == Catch::Approx(1.0));
    CHECK(table.values.at("a") == 0.0);
    CHECK(table.values.at("c") == 0.0);
}

TEST_CASE("betweenness of the bow-tie center is 4/6") {
    auto table = betweenness_all(bow_tie(), /*normalized=*/true);
    CHECK(table.values.at("c") == Catch::Approx(4.0 / 6.0));
    CHECK(table.values.at("a") == 0.0);
    CHECK(table.values.at("d") == 0.0);
}

TEST_CASE("normalized betweenness needs at least three nodes") {
    Graph::Builder b;
    b.add_edge("a", "b");
    CHECK_THROWS_AS(betweenness_all(std::move(b).build(), true), UndefinedMetricError);
}

TEST_CASE("degree-one nodes and complete graphs carry no betweenness") {
    std::mt19937 rng(37);
    Graph g = oracle::gnp(20, 0.2, rng);
    auto table = betweenness_all(g, false);
    for (const auto& id : g.nodes())
        if (g.degree(id) <= 1) CHECK(table.values.at(id) == 0.0);

    Graph::Builder k5;
    const char* names[] = {"a", "b", "c", "d", "e"};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.add_edge(names[i], names[j]);
    auto complete = betweenness_all(std::move(k5).build(), true);
    for (const auto& [_, v] : complete.values) CHECK(v == 0.0);
}

TEST_CASE("betweenness matches the all-pairs path-counting oracle") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        std::size_t n = 3 + rng() % 48;
        Graph g = oracle::gnp(n, 0.05 + 0.4 * (rng() % 100) / 100.0, rng);
        auto mine = betweenness_all(g, /*normalized=*/true);
        auto ref = oracle::betweenness(g, /*normalized=*/true);
        for (const auto& [id, v] : ref)
            CHECK(mine.values.at(id) == Catch::Approx(v).margin(1e-9));
    }
}

TEST_CASE("normalized values stay within [0,1] and cover every node") {
    std::mt19937 rng(43);
    Graph g = oracle::gnp(30, 0.15, rng);
    auto table = betweenness_all(g, true);
    CHECK(table.values.size() == g.n());
    for (const auto& [_, v] : table.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("worker count does not change the result bits") {
    std::mt19937 rng(47);
    Graph g = oracle::gnp(60, 0.1, rng);
    auto one = betweenness_all(g, true, 1);
    auto four = betweenness_all(g, true, 4);
    for (const auto& [id, v] : one.values) CHECK(four.values.at(id) == v);
}
