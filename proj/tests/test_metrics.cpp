#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cocite/construct.hpp"
#include "cocite/metrics.hpp"
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

Graph scaled(const Graph& g, double factor) {
    Graph::Builder b;
    for (const auto& id : g.nodes()) b.add_node(id);
    for (const auto& [u, v, w] : g.edges()) b.add_edge(g.id_of(u), g.id_of(v), w * factor);
    return std::move(b).build();
}

}  // namespace

TEST_CASE("components split an edgeless graph into singletons") {
    Graph::Builder b;
    b.add_node("x");
    b.add_node("y");
    b.add_node("z");
    Graph g = std::move(b).build();
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<NodeId>{"x"});
}

TEST_CASE("components are ordered by size then smallest member") {
    Graph::Builder b;
    b.add_edge("m", "n");
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    Graph g = std::move(b).build();
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<NodeId>{"a", "b", "c"});
    CHECK(comps[1] == std::vector<NodeId>{"m", "n"});
}

TEST_CASE("components match the brute-force oracle and cover all nodes") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 25; ++rep) {
        Graph g = oracle::gnp(2 + rng() % 40, 0.08, rng);
        auto mine = connected_components(g);
        auto ref = oracle::components(g);
        CHECK(mine == ref);
        std::size_t covered = 0;
        for (const auto& c : mine) covered += c.size();
        CHECK(covered == g.n());
        for (const auto& [u, v, w] : g.edges()) {
            static_cast<void>(w);
            bool same = false;
            for (const auto& c : mine)
                if (std::binary_search(c.begin(), c.end(), g.id_of(u)) &&
                    std::binary_search(c.begin(), c.end(), g.id_of(v)))
                    same = true;
            CHECK(same);
        }
    }
}

TEST_CASE("density of small graphs") {
    CHECK(density(triangle()) == 1.0);

    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    CHECK(density(std::move(b).build()) == Catch::Approx(2.0 / 3.0));

    Graph::Builder single;
    single.add_node("a");
    CHECK_THROWS_AS(density(std::move(single).build()), UndefinedMetricError);
}

TEST_CASE("bipartite density uses both formulas") {
    BipartiteGraph::Builder b;
    b.add_edge("p1", "d1");
    b.add_edge("p1", "d2");
    b.add_edge("p2", "d1");
    BipartiteGraph bg = std::move(b).build();
    CHECK(density(bg) == Catch::Approx(3.0 / 4.0));
    CHECK(density_union(bg) == Catch::Approx(2.0 * 3.0 / (4.0 * 3.0)));
}

TEST_CASE("transitivity of small graphs") {
    CHECK(transitivity(triangle()) == 1.0);

    Graph::Builder path;
    path.add_edge("a", "b");
    path.add_edge("b", "c");
    CHECK(transitivity(std::move(path).build()) == 0.0);

    CHECK(transitivity(bow_tie()) == Catch::Approx(0.6));

    Graph::Builder pair;
    pair.add_edge("a", "b");
    CHECK_THROWS_AS(transitivity(std::move(pair).build()), UndefinedMetricError);
}

TEST_CASE("assortativity of a star is -1 and regular graphs are undefined") {
    Graph::Builder star;
    for (const char* leaf : {"l1", "l2", "l3", "l4"}) star.add_edge("hub", leaf);
    CHECK(degree_assortativity(std::move(star).build()) == Catch::Approx(-1.0).margin(1e-12));

    Graph::Builder k4;
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(names[i], names[j]);
    CHECK_THROWS_AS(degree_assortativity(std::move(k4).build()), UndefinedMetricError);
}

TEST_CASE("metrics agree with brute force on random graphs") {
    std::mt19937 rng(29);
    int done = 0;
    while (done < 40) {
        Graph g = oracle::gnp(3 + rng() % 48, 0.05 + 0.3 * (rng() % 100) / 100.0, rng);
        if (g.m() < 2) continue;
        ++done;
        CHECK(density(g) == Catch::Approx(oracle::density(g)).margin(1e-12));
        try {
            double mine = transitivity(g);
            CHECK(mine == Catch::Approx(oracle::transitivity(g)).margin(1e-9));
        } catch (const UndefinedMetricError&) {
        }
        try {
            double mine = degree_assortativity(g);
            CHECK(mine == Catch::Approx(oracle::assortativity(g)).margin(1e-9));
        } catch (const UndefinedMetricError&) {
        }
    }
}

TEST_CASE("density and transitivity ignore edge weights") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = oracle::gnp(4 + rng() % 20, 0.4, rng, /*weighted=*/true);
        if (g.m() == 0) continue;
        Graph h = scaled(g, 7.5);
        CHECK(density(g) == density(h));
        try {
            CHECK(transitivity(g) == transitivity(h));
        } catch (const UndefinedMetricError&) {
        }
    }
}
