#include <doctest.h>

#include <map>
#include <random>

#include "botscope/csv.hpp"
#include "botscope/errors.hpp"
#include "botscope/graph.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace botscope;
using helpers::TempDir;
using helpers::write_file;

TEST_CASE("parallel edges merge by summing weights") {
    TempDir dir("graph_merge");
    write_file(dir.file("edges.csv"), "a,b,2\na,b,3\nb,c,1\n");
    IngestReport rep;
    SocialGraph g = ingest_edge_list(dir.file("edges.csv"), EdgeRole::Retweet, {}, &rep);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(rep.parallel_merged == 1);
    uint32_t a = *g.find("a"), b = *g.find("b"), c = *g.find("c");
    REQUIRE(g.out_neighbors(a).size() == 1);
    CHECK(g.out_neighbors(a)[0] == b);
    CHECK(g.out_weights(a)[0] == 5.0);
    CHECK(g.out_weights(b)[0] == 1.0);
    CHECK(g.out_neighbors(b)[0] == c);
}

TEST_CASE("self-loops are dropped but the node is kept") {
    TempDir dir("graph_selfloop");
    write_file(dir.file("edges.csv"), "a,a,7\n");
    IngestReport rep;
    SocialGraph g = ingest_edge_list(dir.file("edges.csv"), EdgeRole::Retweet, {}, &rep);
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(rep.self_loops_dropped == 1);
}

TEST_CASE("missing weight defaults to 1") {
    TempDir dir("graph_defaultw");
    write_file(dir.file("edges.csv"), "a,b\nb,a\n");
    SocialGraph g = ingest_edge_list(dir.file("edges.csv"), EdgeRole::Retweet, {});
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.out_weights(*g.find("a"))[0] == 1.0);
    CHECK(g.out_weights(*g.find("b"))[0] == 1.0);
}

TEST_CASE("ingestion errors name the offending line") {
    TempDir dir("graph_errors");
    write_file(dir.file("bad_cols.csv"), "a,b,1\nonly_one_field\n");
    CHECK_THROWS_WITH_AS(ingest_edge_list(dir.file("bad_cols.csv"), EdgeRole::Retweet, {}),
                         doctest::Contains(":2:"), io_error);
    write_file(dir.file("neg.csv"), "a,b,-3\n");
    CHECK_THROWS_AS(ingest_edge_list(dir.file("neg.csv"), EdgeRole::Retweet, {}), io_error);
    write_file(dir.file("badw.csv"), "a,b,xyz\n");
    CHECK_THROWS_AS(ingest_edge_list(dir.file("badw.csv"), EdgeRole::Retweet, {}), io_error);
    CHECK_THROWS_AS(ingest_edge_list(dir.file("nonexistent.csv"), EdgeRole::Retweet, {}), io_error);
}

TEST_CASE("empty file yields an empty graph") {
    TempDir dir("graph_empty");
    write_file(dir.file("edges.csv"), "");
    IngestReport rep;
    SocialGraph g = ingest_edge_list(dir.file("edges.csv"), EdgeRole::Retweet, {}, &rep);
    CHECK(g.node_count() == 0);
    CHECK(rep.rows_read == 0);
}

TEST_CASE("tab delimiter and header row") {
    TempDir dir("graph_tab");
    write_file(dir.file("edges.tsv"), "src\tdst\tweight\na\tb\t2\n");
    IngestOptions opt;
    opt.delimiter = '\t';
    opt.has_header = true;
    SocialGraph g = ingest_edge_list(dir.file("edges.tsv"), EdgeRole::Retweet, opt);
    CHECK(g.node_count() == 2);
    CHECK(g.out_weights(*g.find("a"))[0] == 2.0);
}

TEST_CASE("interning is a bijection") {
    GraphBuilder b(EdgeRole::Retweet);
    uint32_t a1 = b.intern("alpha");
    uint32_t b1 = b.intern("beta");
    CHECK(b.intern("alpha") == a1);
    CHECK(a1 != b1);
    b.add_edge("alpha", "beta", 1.0);
    SocialGraph g = b.build();
    CHECK(g.id(*g.find("alpha")) == "alpha");
    CHECK(!g.find("gamma").has_value());
}

TEST_CASE("degree percentile uses nearest rank") {
    // strengths [0,0,10,100]
    SocialGraph g = helpers::make_retweet(4, {{2, 0, 10.0}, {3, 1, 100.0}});
    CHECK(degree_percentile(g, StrengthKind::Out, 50) == 0.0);
    CHECK(degree_percentile(g, StrengthKind::Out, 75) == 10.0);
    CHECK(degree_percentile(g, StrengthKind::Out, 100) == 100.0);

    SocialGraph single = helpers::make_retweet(1, {});
    CHECK(degree_percentile(single, StrengthKind::Out, 1) == 0.0);
    CHECK(degree_percentile(single, StrengthKind::In, 99) == 0.0);

    // strengths 1..100: node k has out-strength k+1 via a weighted edge
    {
        GraphBuilder b(EdgeRole::Retweet);
        for (uint32_t i = 0; i < 100; ++i) b.intern("n" + std::to_string(i));
        for (uint32_t i = 0; i < 100; ++i) b.add_edge(i, (i + 1) % 100, i + 1.0);
        SocialGraph h = b.build();
        CHECK(degree_percentile(h, StrengthKind::Out, 99) == 99.0);
        CHECK(degree_percentile(h, StrengthKind::Out, 50) == 50.0);
    }

    SocialGraph empty = helpers::make_retweet(0, {});
    CHECK_THROWS_AS(degree_percentile(empty, StrengthKind::Out, 50), invalid_parameter_error);
}

TEST_CASE("export and re-ingest round-trips graphs without isolated nodes") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        SocialGraph g = oracles::random_retweet_graph(rng, 2 + rep % 17, 0.2);
        TempDir dir("graph_roundtrip");
        write_edge_list(g, dir.file("out.csv"));
        SocialGraph h = ingest_edge_list(dir.file("out.csv"), EdgeRole::Retweet, {});
        REQUIRE(h.node_count() == g.node_count());
        REQUIRE(h.edge_count() == g.edge_count());
        for (uint32_t i = 0; i < g.node_count(); ++i) {
            auto j = h.find(g.id(i));
            REQUIRE(j.has_value());
            auto gn = g.out_neighbors(i);
            auto hn = h.out_neighbors(*j);
            REQUIRE(gn.size() == hn.size());
            std::map<std::string, double> gw, hw;
            for (size_t k = 0; k < gn.size(); ++k) gw[g.id(gn[k])] = g.out_weights(i)[k];
            for (size_t k = 0; k < hn.size(); ++k) hw[h.id(hn[k])] = h.out_weights(*j)[k];
            CHECK(gw == hw);
        }
    }
}

TEST_CASE("strength caches match recomputed sums") {
    std::mt19937_64 rng(5);
    SocialGraph g = oracles::random_retweet_graph(rng, 40, 0.15);
    for (uint32_t i = 0; i < g.node_count(); ++i) {
        double out = 0, in = 0;
        for (double w : g.out_weights(i)) out += w;
        for (double w : g.in_weights(i)) in += w;
        CHECK(g.out_strength(i) == doctest::Approx(out).epsilon(1e-12));
        CHECK(g.in_strength(i) == doctest::Approx(in).epsilon(1e-12));
    }
    // integer weights stay exact
    SocialGraph h = oracles::random_retweet_graph(rng, 30, 0.2, /*integer_weights=*/true);
    for (uint32_t i = 0; i < h.node_count(); ++i) {
        double out = 0;
        for (double w : h.out_weights(i)) out += w;
        CHECK(h.out_strength(i) == out);
    }
}

TEST_CASE("without_nodes drops nodes and incident edges") {
    SocialGraph g = helpers::make_retweet(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 0, 4}});
    std::vector<uint8_t> remove{0, 1, 0, 0};  // drop node 1
    std::vector<int64_t> map;
    SocialGraph h = g.without_nodes(remove, map);
    CHECK(h.node_count() == 3);
    CHECK(h.edge_count() == 2);  // 2->3 and 3->0 survive
    CHECK(map[1] == -1);
    CHECK(h.id(static_cast<uint32_t>(map[0])) == "u0");
    CHECK(h.out_neighbors(static_cast<uint32_t>(map[2])).size() == 1);
}
