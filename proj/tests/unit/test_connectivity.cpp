#include "doctest.h"
#include "oracles.hpp"
#include "ppt/connectivity.hpp"
#include "ppt/generate.hpp"

using namespace ppt;
using ppt::testing::load_fixture;
using ppt::testing::SmallGraph;

namespace {

SmallGraph small(const ConnectivityGraph& g) {
    SmallGraph s{static_cast<int>(g.vertices.size()), {}};
    for (const auto& e : g.edges) s.edges.emplace_back(e.below, e.above);
    return s;
}

ConnectivityGraph graph_of(const std::string& stem) { return build_connectivity(simulate(load_fixture(stem))); }

// Connected after removing edge `drop`?
bool connected_without(const ConnectivityGraph& g, int drop) {
    std::vector<int> parent(g.vertices.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) {
        if (e.id != drop) parent[find(e.below)] = find(e.above);
    }
    int roots = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) roots += find(static_cast<int>(i)) == static_cast<int>(i);
    return roots == 1;
}

}  // namespace

TEST_SUITE_BEGIN("connectivity");

TEST_CASE("donut_flat is a single vertex") {
    ConnectivityGraph g = graph_of("donut_flat");
    CHECK(ppt::testing::isomorphic(small(g), SmallGraph{1, {}}));
    CHECK(fox_decision(g).yes);
}

TEST_CASE("two_balls is a path on four vertices") {
    ConnectivityGraph g = graph_of("two_balls");
    CHECK(ppt::testing::isomorphic(small(g), SmallGraph{4, {{0, 1}, {1, 2}, {2, 3}}}));
    FoxDecision d = fox_decision(g);
    CHECK(d.yes);
    CHECK_FALSE(d.witness);
}

TEST_CASE("donut_vertical is a four-cycle with a removable witness") {
    ConnectivityGraph g = graph_of("donut_vertical");
    CHECK(ppt::testing::isomorphic(small(g), SmallGraph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}));
    FoxDecision d = fox_decision(g);
    CHECK_FALSE(d.yes);
    REQUIRE(d.witness);
    CHECK(connected_without(g, d.witness->edge));
    CHECK(g.edges.at(d.witness->edge).cut == d.witness->cut);
}

TEST_CASE("vertex_at covers every in-face of every gap") {
    for (const auto& p : ppt::testing::all_fixture_presentations()) {
        Trace t = simulate(p);
        ConnectivityGraph g = build_connectivity(t);
        for (int gap = 0; gap <= t.event_count(); ++gap) {
            for (const auto& f : t.at_gap(gap).inside_faces()) {
                auto v = g.vertex_at(gap, f);
                REQUIRE(v);
                CHECK(g.vertices[*v].lower_cut <= gap);
                CHECK(gap < g.vertices[*v].upper_cut);
            }
        }
    }
}

TEST_CASE("edge count from the census and the oracle agree on random words") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        Trace t = simulate(random_presentation(rng, {}));
        ConnectivityGraph g = build_connectivity(t);
        CHECK(static_cast<int>(g.edges.size()) == census_edge_count(t));
        OracleReport r = oracle_check(t, g);
        CHECK_MESSAGE(r.ok, r.failure);
        FoxDecision d = fox_decision(g);
        for (const auto& c : d.components) {
            CHECK(c.tree == (c.edge_count + 1 == static_cast<int>(c.vertices.size())));
            if (!c.tree) {
                REQUIRE(c.witness);
                CHECK(connected_without(g, c.witness->edge) == (d.components.size() == 1));
            }
        }
    }
}

TEST_CASE("dot output names every vertex and edge") {
    ConnectivityGraph g = graph_of("donut_vertical");
    std::string dot = to_dot(g);
    CHECK(dot.rfind("graph", 0) == 0);
    std::size_t dashes = 0;
    for (std::size_t pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 2)) ++dashes;
    CHECK(dashes == g.edges.size());
}

TEST_SUITE_END();
