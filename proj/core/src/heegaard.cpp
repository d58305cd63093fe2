#include "ppt/heegaard.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace ppt {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// A maximal run of connectivity-graph vertices joined by pass edges: one
// piece of M with only nested saddles and internal extrema inside.
struct Leaf {
    FaceId face;
    int lo = 0;   // gaps lo..hi
    int hi = 0;
    int component = 0;
    std::vector<int> vertices;

    bool contains(int gap, const FaceId& f) const { return face == f && lo <= gap && gap <= hi; }
};

// An unnested saddle seen from the leaves around it. For a merge the single
// side is above; for a split it is below.
struct Junction {
    int event = 0;
    Vertical orientation = Vertical::upper;
    int gap_single = 0;
    FaceId face_single;
    int gap_double = 0;
    FaceId face_a, face_b;
};

std::vector<Junction> junctions(const Trace& trace) {
    std::vector<Junction> out;
    for (int k = 1; k <= trace.event_count(); ++k) {
        const TraceEntry& e = trace.event(k);
        if (e.cls.nesting != Nesting::unnested) continue;
        Junction j;
        j.event = k;
        const LevelState& before = trace.at_gap(k - 1);
        if (const auto* m = std::get_if<Merge>(&e.event.kind)) {
            j.orientation = Vertical::upper;
            j.gap_single = k;
            j.face_single = e.site.far_face;
            j.gap_double = k - 1;
            j.face_a = before.inside_face(m->circle_a);
            j.face_b = before.inside_face(m->circle_b);
        } else {
            const auto& s = std::get<Split>(e.event.kind);
            j.orientation = Vertical::lower;
            j.gap_single = k - 1;
            j.face_single = s.via_face;
            j.gap_double = k;
            j.face_a = s.new_face_a;
            j.face_b = s.new_face_b;
        }
        out.push_back(j);
    }
    return out;
}

std::vector<Leaf> leaves_of(const ConnectivityGraph& g) {
    UnionFind uf(g.vertices.size());
    for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::pass) uf.unite(e.below, e.above);
    }
    std::vector<int> comp_of(g.vertices.size());
    auto comps = g.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    }
    std::map<int, Leaf> by_root;
    for (const auto& v : g.vertices) {
        Leaf& l = by_root[uf.find(v.id)];
        if (l.vertices.empty()) {
            l.face = v.face;
            l.lo = v.lower_cut;
            l.hi = v.upper_cut - 1;
            l.component = comp_of[v.id];
        }
        l.vertices.push_back(v.id);
        l.lo = std::min(l.lo, v.lower_cut);
        l.hi = std::max(l.hi, std::min(v.upper_cut, g.event_count) - 1);
    }
    std::vector<Leaf> out;
    for (auto& [root, l] : by_root) out.push_back(std::move(l));
    std::sort(out.begin(), out.end(), [](const Leaf& a, const Leaf& b) {
        return a.vertices.front() < b.vertices.front();
    });
    return out;
}

LeveledGraph leaf_graph(const Trace& trace, const FaceId& face, int lo, int hi) {
    return extract_leveled_graph(trace, lo + 1, hi, face);
}

GluingGraph chain_gluing(const Trace& trace, const FaceId& face, int lo, int hi, int s) {
    LeveledGraph below = extract_leveled_graph(trace, lo + 1, s, face);
    LeveledGraph above = extract_leveled_graph(trace, s + 1, hi, face);
    std::vector<std::pair<std::string, std::string>> iface;
    for (const auto& c : trace.at_gap(s).circles_of(face)) iface.emplace_back("t:" + c, "b:" + c);
    return gluing_graph(below, above, iface);
}

// Critical points of the piece in `face` over gaps lo..hi, top down, with
// the braid records a nested lower saddle needs.
std::vector<ChainStep> leaf_chain(const Trace& trace, const FaceId& face, int lo, int hi) {
    std::vector<ChainStep> chain;
    for (int k = hi; k > lo; --k) {
        const TraceEntry& e = trace.event(k);
        std::optional<ChainKind> kind;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Birth>) {
                    if (x.host_face == face) kind = ChainKind::extremum;
                } else if constexpr (std::is_same_v<T, Death>) {
                    if (e.site.surviving_face == face) kind = ChainKind::extremum;
                } else if constexpr (std::is_same_v<T, Merge>) {
                    if (x.via_face == face) kind = ChainKind::pile_on;
                } else {
                    if (e.site.far_face == face) kind = ChainKind::glue_across;
                }
            },
            e.event.kind);
        if (!kind) continue;
        ChainStep step{k, *kind, std::nullopt};
        if (*kind == ChainKind::glue_across) {
            step.braid = BraidMove{k, face, chain_gluing(trace, face, lo, hi, k)};
        }
        chain.push_back(std::move(step));
    }
    return chain;
}

// Gluing graph for the turn case: A is the other double-side piece, B the
// single-side piece, one edge per circle of the double side's face at the
// saddle, the saddle circle designated.
BraidMove turn_braid(const Trace& trace, const Junction& j, const Leaf& single, const Leaf& other) {
    const TraceEntry& e = trace.event(j.event);
    LeveledGraph a = leaf_graph(trace, other.face, other.lo, other.hi);
    LeveledGraph b = leaf_graph(trace, single.face, single.lo, single.hi);
    std::vector<std::pair<std::string, std::string>> iface;
    std::string designated;
    if (const auto* m = std::get_if<Merge>(&e.event.kind)) {
        const LevelState& before = trace.at_gap(j.event - 1);
        CircleId saddle = before.inside_face(m->circle_a) == other.face ? m->circle_a : m->circle_b;
        for (const auto& c : before.circles_of(other.face)) {
            iface.emplace_back("t:" + c, "b:" + (c == saddle ? m->new_circle : c));
        }
        designated = "t:" + saddle;
    } else {
        const auto& s = std::get<Split>(e.event.kind);
        CircleId saddle = other.face == s.new_face_a ? s.new_circle_a : s.new_circle_b;
        for (const auto& c : trace.at_gap(j.event).circles_of(other.face)) {
            iface.emplace_back("b:" + c, "t:" + (c == saddle ? s.circle : c));
        }
        designated = "b:" + saddle;
    }
    return BraidMove{j.gap_single, single.face, gluing_graph(a, b, iface, designated, false)};
}

bool reflected_case(StepKind k, Vertical o) {
    return (k == StepKind::combine_lower && o == Vertical::upper) ||
           (k == StepKind::turn_saddle && o == Vertical::lower);
}

PlanStep leaf_step(const Trace& trace, const Leaf& l) {
    PlanStep s;
    s.kind = StepKind::nested_interval;
    s.lo_gap = l.lo;
    s.hi_gap = l.hi;
    s.face = l.face;
    s.gamma_vertices = l.vertices;
    LeafCertificate cert;
    cert.chain = leaf_chain(trace, l.face, l.lo, l.hi);
    cert.graph_rule = check_unknotted(leaf_graph(trace, l.face, l.lo, l.hi)).rule;
    s.certificate = std::move(cert);
    return s;
}

int summand_genus(int chi) {
    LeveledGraph rep;
    rep.add_vertex("s", Rational(0), VertexKind::interior);
    if (1 - chi > 0) rep.add_tiny_circles("s", 1 - chi);
    HandlebodySum sum = complement_structure(rep, check_unknotted(rep), Ambient::sphere);
    return sum.summands.front().genus;
}

// Glues the leaf graphs along every unnested saddle level and reads off the
// complement of the resulting graph, one summand per graph component.
TerminalClaim assemble_terminal(const Trace& trace, const std::vector<Leaf>& leaves) {
    std::vector<LeveledGraph> graphs;
    std::vector<int> offset;
    int total = 0;
    for (const auto& l : leaves) {
        graphs.push_back(leaf_graph(trace, l.face, l.lo, l.hi));
        offset.push_back(total);
        total += static_cast<int>(graphs.back().vertices().size());
    }
    auto find_leaf = [&](int gap, const FaceId& f) {
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (leaves[i].contains(gap, f)) return static_cast<int>(i);
        }
        throw PreconditionError("no leaf contains gap " + std::to_string(gap) + " of face " + f);
    };
    auto vid = [&](int leaf, const std::string& id) {
        auto v = graphs[leaf].index_of(id);
        if (!v) throw PreconditionError("leaf graph lacks boundary vertex " + id);
        return offset[leaf] + *v;
    };
    UnionFind uf(static_cast<std::size_t>(total));
    for (const auto& j : junctions(trace)) {
        const TraceEntry& e = trace.event(j.event);
        int single = find_leaf(j.gap_single, j.face_single);
        for (const FaceId& f : {j.face_a, j.face_b}) {
            int d = find_leaf(j.gap_double, f);
            if (const auto* m = std::get_if<Merge>(&e.event.kind)) {
                for (const auto& c : trace.at_gap(j.gap_double).circles_of(f)) {
                    bool saddle = c == m->circle_a || c == m->circle_b;
                    uf.unite(vid(d, "t:" + c), vid(single, "b:" + (saddle ? m->new_circle : c)));
                }
            } else {
                const auto& s = std::get<Split>(e.event.kind);
                for (const auto& c : trace.at_gap(j.gap_double).circles_of(f)) {
                    bool saddle = c == s.new_circle_a || c == s.new_circle_b;
                    uf.unite(vid(d, "b:" + c), vid(single, "t:" + (saddle ? s.circle : c)));
                }
            }
        }
    }
    // Components of the glued graph: classes joined by edges.
    UnionFind comp(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        for (const auto& [a, b] : graphs[i].edges()) {
            comp.unite(uf.find(offset[i] + a), uf.find(offset[i] + b));
        }
    }
    std::map<int, int> chi;            // component root -> V - E
    std::map<int, int> m_component;
    std::map<int, int> first_seen;     // component root -> smallest vertex index
    for (int v = 0; v < total; ++v) {
        if (uf.find(v) != v) continue;
        int r = comp.find(v);
        chi[r] += 1;
        if (!first_seen.count(r)) first_seen[r] = v;
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        for (const auto& [a, b] : graphs[i].edges()) chi[comp.find(uf.find(offset[i] + a))] -= 1;
        for (int v = 0; v < static_cast<int>(graphs[i].vertices().size()); ++v) {
            m_component[comp.find(uf.find(offset[i] + v))] = leaves[i].component;
        }
    }
    std::vector<std::pair<int, int>> order;   // (first vertex, root)
    for (const auto& [r, v] : first_seen) order.emplace_back(v, r);
    std::sort(order.begin(), order.end());
    TerminalClaim t;
    for (const auto& [v, r] : order) {
        t.genera.push_back(summand_genus(chi[r]));
        t.punctured.push_back(true);
        t.component.push_back(m_component[r]);
    }
    return t;
}

struct Planner {
    const Trace& trace;
    std::vector<Leaf> leaves;
    std::vector<Junction> js;
    std::vector<std::vector<int>> leaf_junctions;

    int leaf_at(int gap, const FaceId& f) const {
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (leaves[i].contains(gap, f)) return static_cast<int>(i);
        }
        throw PreconditionError("no leaf contains gap " + std::to_string(gap) + " of face " + f);
    }

    PlanStep certify(int leaf, int arrival) {
        PlanStep node = leaf_step(trace, leaves[leaf]);
        for (int ji : leaf_junctions[leaf]) {
            if (ji == arrival) continue;
            const Junction& j = js[ji];
            int single = leaf_at(j.gap_single, j.face_single);
            int da = leaf_at(j.gap_double, j.face_a);
            int db = leaf_at(j.gap_double, j.face_b);
            PlanStep step;
            step.saddle = j.event;
            step.orientation = j.orientation;
            if (leaf == single) {
                step.kind = StepKind::combine_lower;
                step.children.push_back(std::move(node));
                step.children.push_back(certify(da, ji));
                step.children.push_back(certify(db, ji));
            } else {
                int other = leaf == da ? db : da;
                step.kind = StepKind::turn_saddle;
                step.braid = turn_braid(trace, j, leaves[single], leaves[other]);
                step.children.push_back(std::move(node));
                step.children.push_back(certify(single, ji));
                step.children.push_back(certify(other, ji));
            }
            step.via_reflection = reflected_case(step.kind, step.orientation);
            node = std::move(step);
        }
        return node;
    }
};

void collect_leaves(const PlanStep& s, std::vector<const PlanStep*>& out) {
    if (s.kind == StepKind::nested_interval) {
        out.push_back(&s);
        return;
    }
    for (const auto& c : s.children) collect_leaves(c, out);
}

void count_braids(const PlanStep& s, int& n) {
    if (s.braid) ++n;
    if (s.certificate) {
        for (const auto& c : s.certificate->chain) n += c.braid ? 1 : 0;
    }
    for (const auto& c : s.children) count_braids(c, n);
}

}  // namespace

GluingGraph gluing_graph(const LeveledGraph& lower, const LeveledGraph& upper,
                         const std::vector<std::pair<std::string, std::string>>& interface,
                         const std::optional<std::string>& designated, bool bijective) {
    auto comp_index = [](const LeveledGraph& g, std::vector<std::string>& labels) {
        std::vector<int> idx(g.vertices().size(), -1);
        auto comps = g.components();
        for (std::size_t c = 0; c < comps.size(); ++c) {
            labels.push_back(g.vertices()[comps[c].front()].id);
            for (int v : comps[c]) idx[v] = static_cast<int>(c);
        }
        return idx;
    };
    GluingGraph out;
    auto lower_comp = comp_index(lower, out.a_labels);
    auto upper_comp = comp_index(upper, out.b_labels);
    out.graph.a_count = static_cast<int>(out.a_labels.size());
    out.graph.b_count = static_cast<int>(out.b_labels.size());

    std::set<std::string> seen_lower, seen_upper;
    auto boundary = [](const LeveledGraph& g, const std::string& id, const char* side) {
        auto v = g.index_of(id);
        if (!v || g.vertices()[*v].kind == VertexKind::interior) {
            throw PreconditionError(std::string("interface point ") + id + " is not a boundary vertex of the " +
                                    side + " graph");
        }
        return *v;
    };
    for (const auto& [l, u] : interface) {
        int lv = boundary(lower, l, "lower");
        int uv = boundary(upper, u, "upper");
        if (!seen_lower.insert(l).second || !seen_upper.insert(u).second) {
            throw PreconditionError("interface pairs " + l + " or " + u + " twice");
        }
        out.graph.edges.emplace_back(lower_comp[lv], upper_comp[uv]);
        out.edge_labels.push_back(l);
    }
    if (bijective) {
        for (const auto& v : lower.vertices()) {
            if (v.kind == VertexKind::boundary_top && !seen_lower.count(v.id)) {
                throw PreconditionError("top vertex " + v.id + " of the lower graph is not glued");
            }
        }
        for (const auto& v : upper.vertices()) {
            if (v.kind == VertexKind::boundary_bottom && !seen_upper.count(v.id)) {
                throw PreconditionError("bottom vertex " + v.id + " of the upper graph is not glued");
            }
        }
    }
    if (designated) {
        auto it = std::find(out.edge_labels.begin(), out.edge_labels.end(), *designated);
        if (it == out.edge_labels.end()) {
            throw PreconditionError("designated point " + *designated + " is not on the interface");
        }
        out.graph.designated = static_cast<int>(it - out.edge_labels.begin());
    }
    return out;
}

std::string chain_kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::extremum: return "extremum";
        case ChainKind::pile_on: return "pile-on";
        case ChainKind::glue_across: return "glue-across";
    }
    return "extremum";
}

std::string step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::nested_interval: return "nested-interval";
        case StepKind::combine_lower: return "combine-lower";
        case StepKind::turn_saddle: return "turn-saddle";
    }
    return "nested-interval";
}

const PlanStep& PlanStep::head_leaf() const {
    const PlanStep* s = this;
    while (s->kind != StepKind::nested_interval) {
        if (s->children.empty()) throw PreconditionError("internal plan step has no children");
        s = &s->children.front();
    }
    return *s;
}

int TerminalClaim::total_genus() const { return std::accumulate(genera.begin(), genera.end(), 0); }

int ReimbeddingPlan::braid_moves() const {
    int n = 0;
    for (const auto& r : roots) count_braids(r, n);
    return n;
}

int ReimbeddingPlan::leaf_count() const {
    std::vector<const PlanStep*> ls;
    for (const auto& r : roots) collect_leaves(r, ls);
    return static_cast<int>(ls.size());
}

NotATreeError::NotATreeError(FoxWitness w)
    : PreconditionError("connectivity graph is not a forest: edge " + std::to_string(w.edge) +
                        " at cut " + std::to_string(w.cut) + " (" + w.face_below + " -> " +
                        w.face_above + ") lies on a cycle"),
      witness_(std::move(w)) {}

ReimbeddingPlan plan_reimbedding(const Presentation& p, const PlanOptions& opt) {
    Trace trace = simulate(p);
    ConnectivityGraph g = build_connectivity(trace);
    FoxDecision fox = fox_decision(g);
    if (!fox.yes) throw NotATreeError(*fox.witness);

    Planner pl{trace, leaves_of(g), junctions(trace), {}};
    pl.leaf_junctions.resize(pl.leaves.size());
    for (std::size_t ji = 0; ji < pl.js.size(); ++ji) {
        const Junction& j = pl.js[ji];
        std::set<int> touched{pl.leaf_at(j.gap_single, j.face_single), pl.leaf_at(j.gap_double, j.face_a),
                              pl.leaf_at(j.gap_double, j.face_b)};
        if (touched.size() != 3) throw NotATreeError(FoxWitness{-1, j.event, j.face_single, j.face_a});
        for (int l : touched) pl.leaf_junctions[l].push_back(static_cast<int>(ji));
    }

    std::optional<int> chosen;
    if (opt.root) chosen = pl.leaf_at(opt.root->first, opt.root->second);

    ReimbeddingPlan plan;
    plan.name = p.name;
    int comps = static_cast<int>(g.components().size());
    for (int c = 0; c < comps; ++c) {
        int root = -1;
        for (std::size_t i = 0; i < pl.leaves.size(); ++i) {
            const Leaf& l = pl.leaves[i];
            if (l.component != c) continue;
            if (root < 0 || l.hi > pl.leaves[root].hi ||
                (l.hi == pl.leaves[root].hi && l.vertices.back() > pl.leaves[root].vertices.back())) {
                root = static_cast<int>(i);
            }
        }
        if (chosen && pl.leaves[*chosen].component == c) root = *chosen;
        plan.roots.push_back(pl.certify(root, -1));
    }
    plan.terminal = assemble_terminal(trace, pl.leaves);
    return plan;
}

std::vector<std::vector<int>> boundary_genera(const Trace& trace, const ConnectivityGraph& g) {
    std::map<CircleId, int> index;
    auto id = [&](const CircleId& c) {
        auto [it, fresh] = index.emplace(c, static_cast<int>(index.size()));
        return it->second;
    };
    std::vector<std::pair<int, int>> unions;
    std::vector<std::pair<int, int>> contributions;   // (circle, +1 extremum / -1 saddle)
    std::map<int, std::pair<int, FaceId>> born_at;    // circle -> (gap, inside face)
    for (int k = 1; k <= trace.event_count(); ++k) {
        const TraceEntry& e = trace.event(k);
        const LevelState& after = e.after;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Birth>) {
                    contributions.emplace_back(id(x.circle), 1);
                    born_at[id(x.circle)] = {k, after.inside_face(x.circle)};
                } else if constexpr (std::is_same_v<T, Death>) {
                    contributions.emplace_back(id(x.circle), 1);
                } else if constexpr (std::is_same_v<T, Merge>) {
                    unions.emplace_back(id(x.circle_a), id(x.new_circle));
                    unions.emplace_back(id(x.circle_b), id(x.new_circle));
                    contributions.emplace_back(id(x.new_circle), -1);
                } else {
                    unions.emplace_back(id(x.circle), id(x.new_circle_a));
                    unions.emplace_back(id(x.circle), id(x.new_circle_b));
                    contributions.emplace_back(id(x.circle), -1);
                }
            },
            e.event.kind);
    }
    UnionFind uf(index.size());
    for (const auto& [a, b] : unions) uf.unite(a, b);
    std::map<int, int> chi;
    for (const auto& [c, d] : contributions) chi[uf.find(c)] += d;

    std::vector<int> comp_of(g.vertices.size());
    auto comps = g.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    }
    std::vector<std::vector<int>> out(comps.size());
    std::set<int> done;
    for (const auto& [c, where] : born_at) {
        int r = uf.find(c);
        if (!done.insert(r).second) continue;
        auto v = g.vertex_at(where.first, where.second);
        if (!v) throw PreconditionError("boundary surface has no piece of M at its first level");
        out[comp_of[*v]].push_back((2 - chi[r]) / 2);
    }
    for (auto& gs : out) std::sort(gs.begin(), gs.end());
    return out;
}

PlanReport verify_plan(const Presentation& p, const ReimbeddingPlan& plan) {
    PlanReport rep;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.failures.push_back(std::move(why));
    };
    Trace trace;
    try {
        trace = simulate(p);
    } catch (const std::exception& e) {
        fail(std::string("presentation does not simulate: ") + e.what());
        return rep;
    }
    ConnectivityGraph g = build_connectivity(trace);
    auto comps = g.components();
    std::vector<int> comp_of(g.vertices.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    }
    auto pass_edge = [&](int below, int above) {
        return std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
            return e.kind == EdgeKind::pass && e.below == below && e.above == above;
        });
    };

    auto braid_ok = [&](const BraidMove& b, const GluingGraph& expected, const std::string& where) {
        ++rep.braid_moves_checked;
        if (!(b.gluing == expected)) {
            fail(where + ": gluing graph does not match the presentation");
            return;
        }
        if (b.gluing.graph.edges.empty()) return;
        BipartiteEmbedding emb = embed_bipartite(b.gluing.graph);
        ReplayReport r = replay(emb, flatten(emb));
        if (!r.pass) fail(where + ": slide schedule does not replay: " + r.reason);
    };

    // Leaves: exact pieces of M, each with a chain matching its critical points.
    std::vector<const PlanStep*> leaves;
    for (const auto& r : plan.roots) collect_leaves(r, leaves);
    std::vector<int> owner(g.vertices.size(), 0);
    std::vector<Leaf> plan_leaves;
    for (const PlanStep* s : leaves) {
        ++rep.steps_checked;
        std::string where = "leaf " + s->face + " gaps " + std::to_string(s->lo_gap) + ".." +
                            std::to_string(s->hi_gap);
        Leaf l{s->face, s->lo_gap, s->hi_gap, 0, {}};
        std::set<int> covered;
        bool shape_ok = s->lo_gap >= 1 && s->hi_gap < trace.event_count() && s->lo_gap <= s->hi_gap;
        for (int gap = s->lo_gap; shape_ok && gap <= s->hi_gap; ++gap) {
            auto v = g.vertex_at(gap, s->face);
            if (!v) shape_ok = false;
            else covered.insert(*v);
        }
        if (!shape_ok || covered != std::set<int>(s->gamma_vertices.begin(), s->gamma_vertices.end())) {
            fail(where + ": not a piece of M between cut levels");
            continue;
        }
        int bottom = *g.vertex_at(s->lo_gap, s->face);
        int top = *g.vertex_at(s->hi_gap, s->face);
        if (g.vertices[bottom].lower_cut != s->lo_gap || g.vertices[top].upper_cut != s->hi_gap + 1 ||
            std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
                return e.kind == EdgeKind::pass && (e.above == bottom || e.below == top);
            })) {
            fail(where + ": not maximal across pass-through cuts");
            continue;
        }
        for (auto it = covered.begin(); it != covered.end() && std::next(it) != covered.end(); ++it) {
            if (!pass_edge(*it, *std::next(it))) fail(where + ": pieces not joined by pass edges");
        }
        for (int v : covered) ++owner[v];
        l.vertices.assign(covered.begin(), covered.end());
        l.component = comp_of[l.vertices.front()];
        plan_leaves.push_back(l);

        if (!s->certificate) {
            fail(where + ": uncertified leaf");
            continue;
        }
        std::vector<ChainStep> expected;
        try {
            expected = leaf_chain(trace, s->face, s->lo_gap, s->hi_gap);
        } catch (const PreconditionError& e) {
            fail(where + ": " + e.what());
            continue;
        }
        const auto& chain = s->certificate->chain;
        if (chain.size() != expected.size()) {
            fail(where + ": uncertified leaf (chain covers " + std::to_string(chain.size()) + " of " +
                 std::to_string(expected.size()) + " critical points)");
            continue;
        }
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (chain[i].event != expected[i].event || chain[i].kind != expected[i].kind ||
                chain[i].braid.has_value() != expected[i].braid.has_value()) {
                fail(where + ": chain step at event " + std::to_string(chain[i].event) +
                     " does not match the critical point there");
                continue;
            }
            if (chain[i].braid) {
                const BraidMove& b = *chain[i].braid;
                if (b.gap != chain[i].event || b.face != s->face) {
                    fail(where + ": braid move is not at the level above its saddle");
                    continue;
                }
                braid_ok(b, expected[i].braid->gluing, where + " event " + std::to_string(chain[i].event));
            }
        }
        UnknotRule rule = check_unknotted(leaf_graph(trace, s->face, s->lo_gap, s->hi_gap)).rule;
        if (rule != s->certificate->graph_rule) fail(where + ": recorded graph rule differs");
    }
    for (std::size_t v = 0; v < owner.size(); ++v) {
        if (owner[v] != 1) {
            fail("graph vertex " + std::to_string(v) + " lies in " + std::to_string(owner[v]) + " leaves");
        }
    }

    // Internal steps: one per unnested saddle, in the right case.
    std::map<int, Junction> by_event;
    for (const auto& j : junctions(trace)) by_event[j.event] = j;
    std::map<int, int> seen;
    std::function<void(const PlanStep&)> internal = [&](const PlanStep& s) {
        if (s.kind == StepKind::nested_interval) return;
        ++rep.steps_checked;
        std::string where = step_kind_name(s.kind) + " at event " + std::to_string(s.saddle);
        for (const auto& c : s.children) internal(c);
        ++seen[s.saddle];
        auto it = by_event.find(s.saddle);
        if (it == by_event.end()) {
            fail(where + ": not an unnested saddle");
            return;
        }
        const Junction& j = it->second;
        if (s.children.size() != 3) {
            fail(where + ": expected three children");
            return;
        }
        if (s.orientation != j.orientation) fail(where + ": wrong saddle orientation");
        if (s.via_reflection != reflected_case(s.kind, j.orientation)) fail(where + ": wrong reflection flag");
        auto in = [](const PlanStep& leaf, int gap, const FaceId& f) {
            return leaf.face == f && leaf.lo_gap <= gap && gap <= leaf.hi_gap;
        };
        auto is_double = [&](const PlanStep& leaf) {
            return in(leaf, j.gap_double, j.face_a) || in(leaf, j.gap_double, j.face_b);
        };
        const PlanStep& h0 = s.children[0].head_leaf();
        const PlanStep& h1 = s.children[1].head_leaf();
        const PlanStep& h2 = s.children[2].head_leaf();
        if (s.kind == StepKind::combine_lower) {
            if (!in(h0, j.gap_single, j.face_single) || !is_double(h1) || !is_double(h2) || &h1 == &h2 ||
                h1.face == h2.face) {
                fail(where + ": children are not the single side then both double sides");
            }
            if (s.braid) fail(where + ": combining two unknotted sides needs no braid move");
            return;
        }
        if (!is_double(h0) || !in(h1, j.gap_single, j.face_single) || !is_double(h2) || h0.face == h2.face) {
            fail(where + ": children are not a double side, the single side, the other double side");
            return;
        }
        if (!s.braid) {
            fail(where + ": turn without a braid move");
            return;
        }
        if (s.braid->gap != j.gap_single || s.braid->face != j.face_single) {
            fail(where + ": braid move is not at the level next to the saddle");
            return;
        }
        Leaf single{h1.face, h1.lo_gap, h1.hi_gap, 0, {}};
        Leaf other{h2.face, h2.lo_gap, h2.hi_gap, 0, {}};
        try {
            braid_ok(*s.braid, turn_braid(trace, j, single, other).gluing, where);
        } catch (const PreconditionError& e) {
            fail(where + ": " + e.what());
        }
    };
    for (const auto& r : plan.roots) internal(r);
    for (const auto& [ev, j] : by_event) {
        if (seen[ev] != 1) {
            fail("unnested saddle at event " + std::to_string(ev) + " is handled " + std::to_string(seen[ev]) +
                 " times");
        }
    }
    for (const auto& [ev, n] : seen) {
        if (!by_event.count(ev)) fail("event " + std::to_string(ev) + " is not an unnested saddle");
    }
    if (plan.roots.size() != comps.size()) fail("expected one root per component of M");
    for (std::size_t r = 0; r < plan.roots.size(); ++r) {
        std::vector<const PlanStep*> ls;
        collect_leaves(plan.roots[r], ls);
        std::set<int> cs;
        for (const PlanStep* l : ls) {
            for (int v : l->gamma_vertices) {
                if (v >= 0 && v < static_cast<int>(comp_of.size())) cs.insert(comp_of[v]);
            }
        }
        if (cs.size() != 1) fail("root " + std::to_string(r) + " spans " + std::to_string(cs.size()) + " components");
    }
    if (!rep.pass) return rep;

    // Terminal: recomputed from the leaves, and consistent with the genus of
    // the boundary surfaces.
    std::sort(plan_leaves.begin(), plan_leaves.end(), [](const Leaf& a, const Leaf& b) {
        return a.vertices.front() < b.vertices.front();
    });
    TerminalClaim t;
    try {
        t = assemble_terminal(trace, plan_leaves);
    } catch (const PreconditionError& e) {
        fail(std::string("terminal: ") + e.what());
        return rep;
    }
    if (!(t == plan.terminal)) fail("terminal claim does not match the glued leaf graphs");
    auto surfaces = boundary_genera(trace, g);
    for (std::size_t c = 0; c < surfaces.size(); ++c) {
        std::vector<int> claimed;
        for (std::size_t i = 0; i < plan.terminal.genera.size(); ++i) {
            if (plan.terminal.component[i] == static_cast<int>(c)) claimed.push_back(plan.terminal.genera[i]);
        }
        std::sort(claimed.begin(), claimed.end());
        if (claimed != surfaces[c]) {
            fail("Euler mismatch in component " + std::to_string(c) + ": claimed genera do not match the "
                 "boundary surfaces");
        }
    }
    return rep;
}

}  // namespace ppt
