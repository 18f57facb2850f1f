#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cocite/corpus.hpp"
#include "test_util.hpp"

using namespace cocite;

namespace {

Corpus tiny_corpus(const testutil::TempDir& dir, const std::string& citations) {
    testutil::spit(dir.file("studies.csv"),
                   "study_id,title,series_id,release_date,subject_terms,investigators,restricted\n"
                   "D1,First,,2000-01-01,alpha;beta,Someone,0\n"
                   "D2,Second,,2001-01-01,beta,Someone Else,1\n");
    testutil::spit(dir.file("publications.csv"),
                   "publication_id,year,type,for_codes\n"
                   "P1,1999,journal-article,\n"
                   "P2,2005,report,\n");
    testutil::spit(dir.file("citations.csv"), citations);
    return parse_corpus(dir.file("citations.csv"), dir.file("studies.csv"), dir.file("publications.csv"));
}

}  // namespace

TEST_CASE("duplicate citation rows collapse to one link") {
    testutil::TempDir dir;
    Corpus c = tiny_corpus(dir,
                           "publication_id,study_id\n"
                           "P1,D1\n"
                           "P1,D1\n"
                           "P2,D2\n");
    CHECK(c.links.size() == 2);
    CHECK(c.stats.duplicate_links == 1);
    CHECK(c.stats.citation_rows == 3);
}

TEST_CASE("citation referencing an unknown study fails naming it") {
    testutil::TempDir dir;
    REQUIRE_THROWS_WITH(tiny_corpus(dir,
                                    "publication_id,study_id\n"
                                    "P1,S999\n"),
                        Catch::Matchers::ContainsSubstring("S999"));
}

TEST_CASE("malformed citation row reports its line number") {
    testutil::TempDir dir;
    try {
        tiny_corpus(dir,
                    "publication_id,study_id\n"
                    "P1,D1\n"
                    "oops\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("parsing is deterministic") {
    std::string real = testutil::fixture_dir();
    Corpus a = parse_corpus(real + "/citations.csv", real + "/studies.csv", real + "/publications.csv");
    Corpus b = parse_corpus(real + "/citations.csv", real + "/studies.csv", real + "/publications.csv");
    REQUIRE(a.links.size() == b.links.size());
    for (std::size_t i = 0; i < a.links.size(); ++i) CHECK(a.links[i] == b.links[i]);
    CHECK(a.studies.size() == 20);
    CHECK(a.publications.size() == 60);
    CHECK(a.stats.duplicate_links == 1);
}

TEST_CASE("study records keep terms deduplicated and flags parsed") {
    testutil::TempDir dir;
    testutil::spit(dir.file("studies.csv"),
                   "study_id,title,series_id,release_date,subject_terms,investigators,restricted\n"
                   "D1,\"Title, with comma\",SER,2000-01-01,alpha;beta;alpha,A;B,1\n");
    auto studies = parse_studies(dir.file("studies.csv"));
    REQUIRE(studies.size() == 1);
    CHECK(studies[0].title == "Title, with comma");
    CHECK(studies[0].series_id == "SER");
    CHECK(studies[0].subject_terms == std::vector<std::string>{"alpha", "beta"});
    CHECK(studies[0].investigators == std::vector<std::string>{"A", "B"});
    CHECK(studies[0].is_restricted);
}

TEST_CASE("json-lines input parses like delimited input") {
    testutil::TempDir dir;
    testutil::spit(dir.file("studies.jsonl"),
                   R"({"study_id":"D1","title":"First","series_id":"SER","release_date":"2000-01-01","subject_terms":["alpha","beta"],"investigators":["X"],"restricted":0})"
                   "\n"
                   R"({"study_id":"D2","title":"Second","subject_terms":"gamma;delta","restricted":true})"
                   "\n");
    testutil::spit(dir.file("pubs.jsonl"),
                   R"({"publication_id":"P1","year":2001,"type":"report","for_codes":["16"]})"
                   "\n"
                   R"({"publication_id":"P2","type":"journal-article"})"
                   "\n");
    testutil::spit(dir.file("cites.jsonl"),
                   R"({"publication_id":"P1","study_id":"D1"})"
                   "\n"
                   R"({"publication_id":"P2","study_id":"D2"})"
                   "\n");
    Corpus c = parse_corpus(dir.file("cites.jsonl"), dir.file("studies.jsonl"), dir.file("pubs.jsonl"));
    CHECK(c.studies[0].series_id == "SER");
    CHECK(c.studies[1].subject_terms == std::vector<std::string>{"gamma", "delta"});
    CHECK(c.studies[1].is_restricted);
    CHECK(c.publications[0].year == 2001);
    CHECK_FALSE(c.publications[1].year.has_value());
    CHECK(c.links.size() == 2);
}

TEST_CASE("unknown publication type maps to other and is tallied") {
    bool known = true;
    CHECK(parse_pub_type("preprint", &known) == PubType::other);
    CHECK_FALSE(known);
    CHECK(parse_pub_type("thesis", &known) == PubType::thesis);
    CHECK(known);
}

TEST_CASE("year filter keeps the boundary year and unknown years") {
    std::vector<PublicationRecord> pubs(3);
    pubs[0].publication_id = "A";
    pubs[0].year = 1950;
    pubs[1].publication_id = "B";
    pubs[1].year = 1962;
    pubs[2].publication_id = "C";
    pubs[2].year = 2001;
    std::vector<CitationLink> links{{"A", "s"}, {"B", "s"}, {"C", "s"}};

    auto filtered = filter_by_year(links, pubs, 1962);
    REQUIRE(filtered.links.size() == 2);
    CHECK(filtered.links[0].publication_id == "B");
    CHECK(filtered.links[1].publication_id == "C");
    CHECK(filtered.dropped == 1);

    SECTION("min_year zero is the identity") {
        auto all = filter_by_year(links, pubs, 0);
        CHECK(all.links.size() == 3);
        CHECK(all.dropped == 0);
    }

    SECTION("missing year is retained and tallied") {
        pubs[0].year.reset();
        auto kept = filter_by_year(links, pubs, 1962);
        CHECK(kept.links.size() == 3);
        CHECK(kept.year_unknown == 1);
    }
}

TEST_CASE("year filter is idempotent and monotone") {
    std::mt19937 rng(7);
    std::vector<PublicationRecord> pubs;
    std::vector<CitationLink> links;
    for (int i = 0; i < 200; ++i) {
        PublicationRecord p;
        p.publication_id = "P" + std::to_string(i);
        if (i % 7 != 0) p.year = 1900 + static_cast<int>(rng() % 150);
        pubs.push_back(p);
        links.push_back({p.publication_id, "s"});
    }
    auto once = filter_by_year(links, pubs, 1962);
    auto twice = filter_by_year(once.links, pubs, 1962);
    CHECK(once.links.size() == twice.links.size());
    CHECK(twice.dropped == 0);
    auto higher = filter_by_year(links, pubs, 1990);
    CHECK(higher.links.size() <= once.links.size());
}

TEST_CASE("grouping into datasets partitions the studies") {
    std::vector<StudyRecord> studies(3);
    studies[0].study_id = "S1";
    studies[0].series_id = "A";
    studies[0].subject_terms = {"x"};
    studies[1].study_id = "S2";
    studies[1].series_id = "A";
    studies[1].subject_terms = {"x", "y"};
    studies[2].study_id = "S3";
    studies[2].title = "Standalone";

    auto index = group_into_datasets(studies);
    REQUIRE(index.datasets.size() == 2);
    const auto& series = index.at("A");
    CHECK(series.kind == DatasetKind::series);
    CHECK(series.member_study_ids == std::vector<std::string>{"S1", "S2"});
    CHECK(series.subject_terms.at("x") == 2);
    CHECK(series.subject_terms.at("y") == 1);
    const auto& lone = index.at("S3");
    CHECK(lone.kind == DatasetKind::standalone_study);
    CHECK(lone.display_name == "Standalone");
    CHECK(index.study_to_dataset.at("S1") == "A");
    CHECK(index.study_to_dataset.at("S3") == "S3");

    SECTION("empty input gives empty output") {
        CHECK(group_into_datasets({}).datasets.empty());
    }
}

TEST_CASE("single-member series is still a series") {
    std::vector<StudyRecord> studies(1);
    studies[0].study_id = "S1";
    studies[0].series_id = "SOLO";
    auto index = group_into_datasets(studies);
    CHECK(index.at("SOLO").kind == DatasetKind::series);
}

TEST_CASE("grouping is a partition on random inputs") {
    std::mt19937 rng(3);
    std::vector<StudyRecord> studies;
    for (int i = 0; i < 300; ++i) {
        StudyRecord s;
        s.study_id = "S" + std::to_string(i);
        if (rng() % 3 != 0) s.series_id = "SER" + std::to_string(rng() % 20);
        studies.push_back(s);
    }
    auto index = group_into_datasets(studies);
    std::size_t members = 0;
    std::set<std::string> seen;
    for (const auto& d : index.datasets) {
        members += d.member_study_ids.size();
        for (const auto& id : d.member_study_ids) CHECK(seen.insert(id).second);
    }
    CHECK(members == studies.size());
    for (const auto& s : studies) CHECK(index.study_to_dataset.count(s.study_id) == 1);
}

TEST_CASE("taxonomy resolves codes to their division") {
    Taxonomy tax = Taxonomy::load(testutil::taxonomy_path());
    CHECK(tax.divisions().size() == 22);

    const FieldCode& education = tax.parent_division("1302");
    CHECK(education.code == "13");
    CHECK(education.name == "Education");
    CHECK(tax.at("1302").name == "Curriculum and Pedagogy");

    SECTION("a division resolves to itself") {
        CHECK(tax.parent_division("16").code == "16");
    }
    SECTION("prefix rule picks the two-digit division") {
        CHECK(tax.parent_division("1303").code == "13");
    }
    SECTION("unknown code is a lookup error") {
        CHECK_THROWS_AS(tax.parent_division("9999"), LookupError);
    }
}
