#include <algorithm>
#include <map>

#include "bipartite_enum.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "ppt/generate.hpp"
#include "ppt/heegaard.hpp"

using namespace ppt;
using ppt::testing::load_fixture;

namespace {

// A vertex at 1/2 joined to one boundary point on the far side and
// `points` boundary points on the interface side.
void add_triod(LeveledGraph& g, const std::string& name, int points, bool interface_on_top) {
    int c = g.add_vertex(name, Rational(1, 2), VertexKind::interior);
    VertexKind near = interface_on_top ? VertexKind::boundary_top : VertexKind::boundary_bottom;
    VertexKind far = interface_on_top ? VertexKind::boundary_bottom : VertexKind::boundary_top;
    Rational near_h(interface_on_top ? 1 : 0), far_h(interface_on_top ? 0 : 1);
    g.add_edge(c, g.add_vertex(name + ".far", far_h, far));
    for (int j = 0; j < points; ++j) g.add_edge(c, g.add_vertex(name + "." + std::to_string(j), near_h, near));
}

std::vector<int> degrees(const BipartiteGraph& g) {
    std::vector<int> d(g.a_count, 0);
    for (auto [a, b] : g.edges) ++d[a];
    std::sort(d.begin(), d.end());
    return d;
}

struct SaddleCase {
    StepKind kind;
    Vertical orientation;
    bool via_reflection;
};

void collect_cases(const PlanStep& s, std::map<int, SaddleCase>& out) {
    if (s.kind != StepKind::nested_interval) {
        out[s.saddle] = {s.kind, s.orientation, s.via_reflection};
    }
    for (const auto& c : s.children) collect_cases(c, out);
}

void collect_braids(const PlanStep& s, std::vector<std::pair<int, int>>& gap_and_event) {
    if (s.braid) gap_and_event.emplace_back(s.braid->gap, s.saddle);
    if (s.certificate) {
        for (const auto& c : s.certificate->chain) {
            if (c.braid) gap_and_event.emplace_back(c.braid->gap, c.event);
        }
    }
    for (const auto& c : s.children) collect_braids(c, gap_and_event);
}

void collect_leaves(PlanStep& s, std::vector<PlanStep*>& out) {
    if (s.kind == StepKind::nested_interval) out.push_back(&s);
    for (auto& c : s.children) collect_leaves(c, out);
}

bool mentions(const PlanReport& r, const std::string& text) {
    return std::any_of(r.failures.begin(), r.failures.end(),
                       [&](const std::string& f) { return f.find(text) != std::string::npos; });
}

std::vector<Presentation> tree_presentations(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    RandomOptions opt;
    opt.max_events = 24;
    std::vector<Presentation> out;
    while (static_cast<int>(out.size()) < count) {
        Presentation p = random_presentation(rng, opt);
        if (fox_decision(build_connectivity(simulate(p))).yes) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("heegaard-plan");

TEST_CASE("gluing graph of three triods on three triods is K33") {
    LeveledGraph lower, upper;
    std::vector<std::pair<std::string, std::string>> iface;
    for (int i = 0; i < 3; ++i) {
        add_triod(lower, "l" + std::to_string(i), 3, true);
        add_triod(upper, "u" + std::to_string(i), 3, false);
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            iface.emplace_back("l" + std::to_string(i) + "." + std::to_string(j),
                               "u" + std::to_string(j) + "." + std::to_string(i));
        }
    }
    GluingGraph g = gluing_graph(lower, upper, iface);
    CHECK(g.graph.a_count == 3);
    CHECK(g.graph.b_count == 3);
    CHECK(g.graph.edges.size() == 9);
    BipartiteGraph k33 = parse_bipartite(ppt::testing::read_text(ppt::testing::fixture_path("k33.bg")));
    CHECK(ppt::testing::canonical_key(g.graph) == ppt::testing::canonical_key(k33));
    CHECK(g.edge_labels.size() == 9);

    GluingGraph d = gluing_graph(lower, upper, iface, std::string("l1.2"));
    REQUIRE(d.graph.designated);
    CHECK(d.edge_labels[d.graph.designated_edge()] == "l1.2");
}

TEST_CASE("gluing graph with parts of two and one points") {
    LeveledGraph lower, upper;
    add_triod(lower, "p", 2, true);
    add_triod(lower, "q", 1, true);
    add_triod(upper, "u", 3, false);
    GluingGraph g = gluing_graph(lower, upper, {{"p.0", "u.0"}, {"p.1", "u.1"}, {"q.0", "u.2"}});
    CHECK(g.graph.a_count == 2);
    CHECK(g.graph.b_count == 1);
    CHECK(g.graph.edges.size() == 3);
    CHECK(degrees(g.graph) == std::vector<int>{1, 2});
}

TEST_CASE("gluing graph with an empty interface and bad interfaces") {
    LeveledGraph lower, upper;
    lower.add_vertex("x", Rational(1, 2), VertexKind::interior);
    upper.add_vertex("y", Rational(1, 2), VertexKind::interior);
    GluingGraph g = gluing_graph(lower, upper, {});
    CHECK(g.graph.edges.empty());
    CHECK(g.graph.a_count == 1);
    CHECK(g.graph.b_count == 1);

    LeveledGraph l2, u2;
    add_triod(l2, "p", 2, true);
    add_triod(u2, "u", 2, false);
    CHECK_THROWS_AS(gluing_graph(l2, u2, {{"p.0", "u.0"}, {"p.1", "u.0"}}), PreconditionError);
    CHECK_THROWS_AS(gluing_graph(l2, u2, {{"p.0", "u.0"}}), PreconditionError);
    CHECK_NOTHROW(gluing_graph(l2, u2, {{"p.0", "u.0"}}, std::nullopt, false));
    CHECK_THROWS_AS(gluing_graph(l2, u2, {{"p.0", "nope"}, {"p.1", "u.1"}}), PreconditionError);
}

TEST_CASE("flat solid torus plan") {
    Presentation p = load_fixture("donut_flat");
    ReimbeddingPlan plan = plan_reimbedding(p);
    REQUIRE(plan.roots.size() == 1);
    CHECK(plan.roots[0].kind == StepKind::nested_interval);
    CHECK(plan.leaf_count() == 1);
    // The nested lower saddle is glued across with one recorded braid move.
    CHECK(plan.braid_moves() == 1);
    CHECK(plan.terminal.genera == std::vector<int>{1});
    CHECK(plan.terminal.total_genus() == 1);
    PlanReport r = verify_plan(p, plan);
    CHECK_MESSAGE(r.pass, (r.failures.empty() ? "" : r.failures.front()));
}

TEST_CASE("two balls plan") {
    Presentation p = load_fixture("two_balls");
    ReimbeddingPlan plan = plan_reimbedding(p);
    REQUIRE(plan.roots.size() == 1);
    CHECK(plan.roots[0].kind == StepKind::combine_lower);
    CHECK(plan.roots[0].orientation == Vertical::upper);
    CHECK(plan.roots[0].via_reflection);
    CHECK(plan.leaf_count() == 3);
    CHECK(plan.braid_moves() == 0);
    CHECK(plan.terminal.total_genus() == 0);
    PlanReport r = verify_plan(p, plan);
    CHECK(r.pass);

    ReimbeddingPlan broken = plan;
    std::vector<PlanStep*> leaves;
    collect_leaves(broken.roots[0], leaves);
    REQUIRE(leaves.size() == 3);
    leaves[1]->certificate.reset();
    PlanReport b = verify_plan(p, broken);
    CHECK_FALSE(b.pass);
    CHECK(mentions(b, "uncertified leaf"));
}

TEST_CASE("terminal genus disagreeing with the boundary is an Euler mismatch") {
    for (const char* stem : {"donut_flat", "ball", "shell"}) {
        Presentation p = load_fixture(stem);
        ReimbeddingPlan plan = plan_reimbedding(p);
        REQUIRE(verify_plan(p, plan).pass);
        plan.terminal.genera[0] += 1;
        PlanReport r = verify_plan(p, plan);
        CHECK_FALSE(r.pass);
        CHECK(mentions(r, "Euler mismatch"));
    }
}

TEST_CASE("vertical solid torus is not a tree") {
    Presentation p = load_fixture("donut_vertical");
    try {
        plan_reimbedding(p);
        FAIL("expected NotATreeError");
    } catch (const NotATreeError& e) {
        ConnectivityGraph g = build_connectivity(simulate(p));
        CHECK(e.witness().edge == fox_decision(g).witness->edge);
    }
}

TEST_CASE("connected boundary genus matches the Euler count") {
    for (const char* stem : {"ball", "donut_flat", "shell"}) {
        Presentation p = load_fixture(stem);
        Trace t = simulate(p);
        auto genera = boundary_genera(t, build_connectivity(t));
        int total = 0;
        for (const auto& c : genera) {
            for (int x : c) total += x;
        }
        if (std::string(stem) != "shell") CHECK(total == (2 - ppt::testing::euler_of_boundary(p)) / 2);
    }
}

TEST_CASE("plans exist exactly for trees and verify on random presentations") {
    std::mt19937_64 rng(29);
    RandomOptions opt;
    opt.max_events = 20;
    int trees = 0;
    for (int i = 0; i < 300; ++i) {
        Presentation p = random_presentation(rng, opt);
        bool yes = fox_decision(build_connectivity(simulate(p))).yes;
        if (!yes) {
            CHECK_THROWS_AS(plan_reimbedding(p), NotATreeError);
            continue;
        }
        ++trees;
        ReimbeddingPlan plan = plan_reimbedding(p);
        PlanReport r = verify_plan(p, plan);
        CHECK_MESSAGE(r.pass, p.name << ": " << (r.failures.empty() ? "" : r.failures.front()));
    }
    CHECK(trees > 50);
}

TEST_CASE("braid moves sit next to their saddle") {
    for (const auto& p : tree_presentations(31, 150)) {
        ReimbeddingPlan plan = plan_reimbedding(p);
        std::vector<std::pair<int, int>> braids;
        for (const auto& r : plan.roots) collect_braids(r, braids);
        CHECK(static_cast<int>(braids.size()) == plan.braid_moves());
        for (auto [gap, event] : braids) CHECK((gap == event || gap == event - 1));
    }
}

TEST_CASE("reflection swaps saddle orientation and keeps the case") {
    for (const auto& p : tree_presentations(37, 150)) {
        Trace t = simulate(p);
        ReimbeddingPlan plan = plan_reimbedding(p);
        REQUIRE(plan.roots.size() >= 1);
        if (plan.roots.size() != 1) continue;
        const int n = t.event_count();
        const PlanStep& root_leaf = plan.roots[0].head_leaf();

        Presentation q = reflect(p);
        Trace u = simulate(q);
        int gap = n - root_leaf.hi_gap;
        CircleId c = t.at_gap(root_leaf.hi_gap).circles_of(root_leaf.face).front();
        PlanOptions opt;
        opt.root = std::make_pair(gap, u.at_gap(gap).inside_face(c));
        ReimbeddingPlan mirrored = plan_reimbedding(q, opt);
        CHECK(verify_plan(q, mirrored).pass);
        CHECK(mirrored.leaf_count() == plan.leaf_count());
        CHECK(mirrored.terminal.total_genus() == plan.terminal.total_genus());

        std::map<int, SaddleCase> a, b;
        collect_cases(plan.roots[0], a);
        for (const auto& r : mirrored.roots) collect_cases(r, b);
        REQUIRE(a.size() == b.size());
        for (const auto& [s, x] : a) {
            REQUIRE(b.count(n + 1 - s));
            const SaddleCase& y = b.at(n + 1 - s);
            CHECK(x.kind == y.kind);
            CHECK(x.orientation != y.orientation);
            CHECK(x.via_reflection != y.via_reflection);
        }
    }
}

TEST_SUITE_END();
