#include "bipartite_enum.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "ppt/bipartite.hpp"
#include "ppt/error.hpp"

using namespace ppt;

namespace {

BipartiteGraph bg_fixture(const std::string& file) {
    return parse_bipartite(ppt::testing::read_text(ppt::testing::fixture_path(file)));
}

BipartiteGraph single_edge() {
    BipartiteGraph g;
    g.a_count = g.b_count = 1;
    g.edges = {{0, 0}};
    return g;
}

// Structural checks every embedding must pass, against an independent BFS.
void check_embedding(const BipartiteGraph& g, const BipartiteEmbedding& emb) {
    const int root_a = g.edges[g.designated_edge()].first;
    std::vector<int> dist = ppt::testing::bfs_distances(g, root_a);
    for (int p = 0; p < g.a_count; ++p) {
        if (emb.a_component[p] != 0) continue;
        CHECK(emb.a_distance[p] == dist[emb.a_input[p]]);
        if (p > 0 && emb.a_component[p - 1] == 0) CHECK(emb.a_distance[p - 1] <= emb.a_distance[p]);
    }
    for (int p = 0; p < g.b_count; ++p) {
        if (emb.b_component[p] != 0) continue;
        CHECK(emb.b_distance[p] == dist[g.a_count + emb.b_input[p]]);
        if (p > 0 && emb.b_component[p - 1] == 0) CHECK(emb.b_distance[p - 1] <= emb.b_distance[p]);
    }
    const EmbeddedEdge& root = emb.edges.at(g.designated_edge());
    CHECK(root.root);
    CHECK(root.z == Rational(0));
    CHECK(emb.a_point(root.a) == Point3{Rational(0), Rational(-1), Rational(0)});
    for (const auto& e : emb.edges) {
        REQUIRE(e.polyline.size() >= 2);
        CHECK(e.polyline.front() == emb.a_point(e.a));
        CHECK(e.polyline.back() == emb.b_point(e.b));
        for (std::size_t i = 1; i < e.polyline.size(); ++i) CHECK(e.polyline[i - 1].y < e.polyline[i].y);
        if (!e.root) {
            CHECK(e.stage == std::max(emb.a_distance[e.a], emb.b_distance[e.b]));
            CHECK(e.stage >= 1);
        }
    }
}

}  // namespace

TEST_SUITE_BEGIN("bipartite-embed");

TEST_CASE("single edge") {
    BipartiteEmbedding emb = embed_bipartite(single_edge());
    CHECK(emb.ell == 1);
    REQUIRE(emb.edges.size() == 1);
    CHECK(emb.edges[0].polyline == std::vector<Point3>{{Rational(0), Rational(-1), Rational(0)},
                                                      {Rational(0), Rational(1), Rational(0)}});
    SlideSchedule s = flatten(emb);
    CHECK(s.moves.empty());
    CHECK(replay(emb, s).pass);
}

TEST_CASE("star") {
    BipartiteGraph g = bg_fixture("star.bg");
    BipartiteEmbedding emb = embed_bipartite(g);
    check_embedding(g, emb);
    CHECK(emb.ell == 1);
    int layered = 0;
    for (const auto& e : emb.edges) layered += e.z > Rational(0);
    CHECK(layered == 2);
    SlideSchedule s = flatten(emb);
    CHECK(s.slide_count() == 2);
    CHECK(s.tiny_circles() == 0);
    ReplayReport r = replay(emb, s);
    CHECK_MESSAGE(r.pass, r.reason);
}

TEST_CASE("K33") {
    BipartiteGraph g = bg_fixture("k33.bg");
    BipartiteEmbedding emb = embed_bipartite(g);
    check_embedding(g, emb);
    CHECK(emb.ell == 2);
    int near = 0, far = 0;
    for (const auto& e : emb.edges) (e.stage <= 1 ? near : far)++;
    CHECK(near == 3);
    CHECK(far == 6);
    SlideSchedule s = flatten(emb);
    CHECK(s.tiny_circles() == 4);
    ReplayReport r = replay(emb, s);
    CHECK_MESSAGE(r.pass, r.reason);
    REQUIRE(r.tiny_per_component.size() == 1);
    CHECK(r.tiny_per_component[0] == 4);
}

TEST_CASE("replay catches broken schedules") {
    BipartiteEmbedding emb = embed_bipartite(bg_fixture("k33.bg"));
    SlideSchedule s = flatten(emb);
    bool caught = false;
    for (std::size_t i = 0; i < s.moves.size(); ++i) {
        // An intermediate translate is subsumed by the final one.
        if (std::holds_alternative<TranslateLayer>(s.moves[i])) continue;
        SlideSchedule broken = s;
        broken.moves.erase(broken.moves.begin() + static_cast<long>(i));
        ReplayReport r = replay(emb, broken);
        CHECK_MESSAGE(!r.pass, "deleting move " << i << " went unnoticed");
        if (!r.pass && r.failed_move) caught = true;
    }
    CHECK(caught);

    SlideSchedule moves_root = s;
    moves_root.moves.insert(moves_root.moves.begin(), SlideOver{emb.graph.designated_edge(), 1, "a0"});
    ReplayReport r = replay(emb, moves_root);
    CHECK_FALSE(r.pass);
    CHECK(r.failed_move == 0);
}

TEST_CASE("input validation") {
    BipartiteGraph g = single_edge();
    g.designated = 3;
    CHECK_THROWS_AS(embed_bipartite(g), PreconditionError);
    CHECK_THROWS_AS(parse_bipartite("A=1 B=1\nedge 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_bipartite("edge 0 0\n"), ParseError);
    BipartiteGraph k = bg_fixture("k33.bg");
    BipartiteGraph back = parse_bipartite(format_bipartite(k));
    CHECK(back.edges == k.edges);
    CHECK(back.designated_edge() == k.designated_edge());
}

TEST_CASE("class counts match an independent enumeration") {
    // Connected bipartite graphs up to side-preserving isomorphism, by edge
    // count, as counted by networkx's isomorphism test.
    const std::vector<int> reference{1, 2, 3, 7, 12, 32, 67, 181, 458};
    std::vector<int> counts(reference.size(), 0);
    ppt::testing::enumerate_connected_bipartite(static_cast<int>(reference.size()),
                                                [&](const BipartiteGraph& g) { ++counts[g.edges.size() - 1]; });
    CHECK(counts == reference);
}

TEST_CASE("every small class and random multigraphs flatten and replay") {
    ppt::testing::enumerate_connected_bipartite(7, [](const BipartiteGraph& g) {
        BipartiteEmbedding emb = embed_bipartite(g);
        check_embedding(g, emb);
        SlideSchedule s = flatten(emb);
        ReplayReport r = replay(emb, s);
        CHECK_MESSAGE(r.pass, r.reason);
        CHECK(s.tiny_circles() == static_cast<int>(g.edges.size()) - g.a_count - g.b_count + 1);
    });
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        BipartiteGraph g = ppt::testing::random_connected_bipartite(rng, 20);
        BipartiteEmbedding emb = embed_bipartite(g);
        check_embedding(g, emb);
        SlideSchedule s = flatten(emb);
        for (const auto& m : s.moves) {
            if (const auto* so = std::get_if<SlideOver>(&m)) CHECK(so->moving != g.designated_edge());
            if (const auto* c = std::get_if<CollapseParallel>(&m)) CHECK(c->moving != g.designated_edge());
        }
        ReplayReport r = replay(emb, s);
        CHECK_MESSAGE(r.pass, r.reason);
        CHECK(s.tiny_circles() == static_cast<int>(g.edges.size()) - g.a_count - g.b_count + 1);
    }
}

TEST_CASE("svg output") {
    std::string svg = to_svg(embed_bipartite(bg_fixture("k33.bg")));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_SUITE_END();
