#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cocite/construct.hpp"
#include "cocite/corpus.hpp"
#include "cocite/graph.hpp"
#include "oracles.hpp"

using namespace cocite;

namespace {

Graph path_abc() {
    Graph::Builder b;
    b.add_edge("a", "b");
    b.add_edge("b", "c");
    return std::move(b).build();
}

}  // namespace

TEST_CASE("graph builder rejects self-loops and bad weights") {
    Graph::Builder b;
    CHECK_THROWS_AS(b.add_edge("a", "a"), ValidationError);
    CHECK_THROWS_AS(b.add_edge("a", "b", 0.0), ValidationError);
    CHECK_THROWS_AS(b.add_edge("a", "b", -1.0), ValidationError);
}

TEST_CASE("repeated edge insertions accumulate weight") {
    Graph::Builder b;
    b.add_edge("a", "b", 1.0);
    b.add_edge("b", "a", 2.0);
    Graph g = std::move(b).build();
    CHECK(g.m() == 1);
    CHECK(g.strength("a") == 3.0);
}

TEST_CASE("degree and strength basics") {
    Graph g = path_abc();
    CHECK(g.degree("b") == 2);
    CHECK(g.degree("a") == 1);
    CHECK_THROWS_AS(g.degree("zz"), LookupError);

    Graph::Builder b;
    b.add_edge("a", "b", 2.5);
    Graph h = std::move(b).build();
    CHECK(h.strength("a") == 2.5);
}

TEST_CASE("sum of degrees is twice the edge count") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = oracle::gnp(2 + rng() % 40, 0.2, rng);
        std::size_t total = 0;
        for (const auto& id : g.nodes()) total += g.degree(id);
        CHECK(total == 2 * g.m());
    }
}

TEST_CASE("bipartite sides must be disjoint") {
    BipartiteGraph::Builder b;
    b.add_edge("x", "y");
    b.add_edge("y", "x");
    CHECK_THROWS_AS(std::move(b).build(), ValidationError);
}

TEST_CASE("citing two studies of one series makes one edge") {
    std::vector<StudyRecord> studies(2);
    studies[0].study_id = "S1";
    studies[0].series_id = "A";
    studies[1].study_id = "S2";
    studies[1].series_id = "A";
    auto datasets = group_into_datasets(studies);
    std::vector<CitationLink> links{{"P1", "S1"}, {"P1", "S2"}};
    BipartiteGraph b = build_citation_network(links, datasets);
    CHECK(b.m() == 1);
    CHECK(b.left() == std::vector<NodeId>{"P1"});
    CHECK(b.right() == std::vector<NodeId>{"A"});

    SECTION("no links make an empty network") {
        BipartiteGraph empty = build_citation_network({}, datasets);
        CHECK(empty.m() == 0);
        CHECK(empty.left().empty());
    }
}

TEST_CASE("co-citation projection counts shared citing publications") {
    BipartiteGraph::Builder b;
    b.add_edge("P1", "D1");
    b.add_edge("P1", "D2");
    b.add_edge("P2", "D1");
    b.add_edge("P2", "D2");
    b.add_edge("P3", "D2");
    b.add_edge("P3", "D3");
    b.add_edge("P4", "D4");  // cites one dataset only
    Graph s = project_cocitation(std::move(b).build());

    CHECK(s.n() == 4);  // isolated D4 retained
    CHECK(s.m() == 2);
    auto edges = s.edges();
    CHECK(s.id_of(std::get<0>(edges[0])) == "D1");
    CHECK(s.id_of(std::get<1>(edges[0])) == "D2");
    CHECK(std::get<2>(edges[0]) == 2.0);
    CHECK(std::get<2>(edges[1]) == 1.0);
    CHECK(s.degree("D4") == 0);
}

TEST_CASE("projection weights equal brute-force common neighbor counts") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        BipartiteGraph::Builder builder;
        std::size_t nl = 20 + rng() % 180, nr = 5 + rng() % 20;
        for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t r = 0; r < nr; ++r)
                if (rng() % 100 < 10) builder.add_edge("p" + std::to_string(l), "d" + std::to_string(r));
        BipartiteGraph b = std::move(builder).build();
        Graph s = project_cocitation(b);
        for (std::size_t i = 0; i < b.right().size(); ++i)
            for (std::size_t j = i + 1; j < b.right().size(); ++j) {
                const auto& ni = b.left_neighbors_of_right(static_cast<int>(i));
                const auto& nj = b.left_neighbors_of_right(static_cast<int>(j));
                std::vector<int> common;
                std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
                double expected = static_cast<double>(common.size());
                int u = s.index_of(b.right()[i]);
                int v = s.index_of(b.right()[j]);
                double actual = 0;
                for (const auto& [nbr, w] : s.neighbors(u))
                    if (nbr == v) actual = w;
                CHECK(actual == expected);
            }
    }
}

TEST_CASE("field bipartite network links publications to their tags") {
    std::vector<PublicationRecord> pubs(2);
    pubs[0].publication_id = "P1";
    pubs[0].for_codes = {"Fa", "Fb"};
    pubs[1].publication_id = "P2";  // no codes: isolated left node
    BipartiteGraph b = build_field_network(pubs);
    CHECK(b.m() == 2);
    CHECK(b.left().size() == 2);
    CHECK(b.right() == std::vector<NodeId>{"Fa", "Fb"});
}

TEST_CASE("field projection weights sum cited-study counts") {
    std::vector<PublicationRecord> pubs(2);
    pubs[0].publication_id = "P1";
    pubs[0].for_codes = {"Fa", "Fb"};
    pubs[1].publication_id = "P2";
    pubs[1].for_codes = {"Fa"};

    std::vector<CitationLink> links{{"P1", "S1"}, {"P1", "S2"}, {"P2", "S1"}};
    Graph f = project_fields(pubs, links);
    REQUIRE(f.m() == 1);
    auto [u, v, w] = f.edges()[0];
    CHECK(f.id_of(u) == "Fa");
    CHECK(f.id_of(v) == "Fb");
    CHECK(w == 2.0);  // P1 cites two studies; P2 has a single field

    SECTION("two co-tagged publications citing 1 and 3 studies give weight 4") {
        pubs[1].for_codes = {"Fa", "Fb"};
        std::vector<CitationLink> more{{"P1", "S1"}, {"P2", "S1"}, {"P2", "S2"}, {"P2", "S3"}};
        Graph f2 = project_fields(pubs, more);
        CHECK(std::get<2>(f2.edges()[0]) == 4.0);
    }
}

TEST_CASE("threshold removes light edges and optionally isolated nodes") {
    Graph::Builder b;
    b.add_edge("a", "b", 1.0);
    b.add_edge("b", "c", 5.0);
    Graph g = std::move(b).build();

    Graph cut = threshold_edges(g, 2.0, true);
    CHECK(cut.n() == 2);
    CHECK(cut.m() == 1);
    CHECK(cut.has_node("b"));
    CHECK(cut.has_node("c"));

    SECTION("zero threshold is the identity") {
        Graph same = threshold_edges(g, 0.0, true);
        CHECK(same.n() == g.n());
        CHECK(same.m() == g.m());
    }
    SECTION("keeping isolated nodes preserves the node set") {
        Graph kept = threshold_edges(g, 2.0, false);
        CHECK(kept.n() == 3);
        CHECK(kept.m() == 1);
    }
}

TEST_CASE("thresholding is monotone and idempotent") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = oracle::gnp(3 + rng() % 30, 0.3, rng, /*weighted=*/true);
        double w1 = 1 + static_cast<double>(rng() % 5);
        double w2 = w1 + 1 + static_cast<double>(rng() % 3);
        Graph a = threshold_edges(g, w1, true);
        Graph b = threshold_edges(g, w2, true);
        CHECK(b.m() <= a.m());
        CHECK(b.n() <= a.n());
        Graph again = threshold_edges(a, w1, true);
        CHECK(again.n() == a.n());
        CHECK(again.m() == a.m());
    }
}
