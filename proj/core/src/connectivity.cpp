#include "ppt/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ppt/error.hpp"

namespace ppt {

std::optional<int> ConnectivityGraph::vertex_at(int gap, const FaceId& face) const {
    for (const auto& v : vertices) {
        if (v.lower_cut <= gap && gap < v.upper_cut && v.face == face) return v.id;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> ConnectivityGraph::adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
        adj[e.below].push_back(e.id);
        adj[e.above].push_back(e.id);
    }
    return adj;
}

std::vector<std::vector<int>> ConnectivityGraph::components() const {
    std::vector<int> comp(vertices.size(), -1);
    auto adj = adjacency();
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < vertices.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int eid : adj[v]) {
                const auto& e = edges[eid];
                int w = e.below == v ? e.above : e.below;
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

ConnectivityGraph build_connectivity(const Trace& trace) {
    ConnectivityGraph g;
    g.name = trace.name;
    int n = trace.event_count();
    g.event_count = n;
    std::map<FaceId, int> current;   // in-face -> vertex of the slab being swept

    auto new_vertex = [&](int cut, const FaceId& face) {
        GraphVertex v;
        v.id = static_cast<int>(g.vertices.size());
        v.lower_cut = cut;
        v.upper_cut = n + 1;
        v.face = face;
        g.vertices.push_back(v);
        return v.id;
    };
    auto add_edge = [&](int below, int above, int cut, EdgeKind kind) {
        GraphEdge e;
        e.id = static_cast<int>(g.edges.size());
        e.below = below;
        e.above = above;
        e.cut = cut;
        e.face_below = g.vertices[below].face;
        e.face_above = g.vertices[above].face;
        e.kind = kind;
        g.edges.push_back(e);
    };

    for (int k = 1; k <= n; ++k) {
        const TraceEntry& e = trace.event(k);
        if (!e.cls.is_cut()) continue;
        g.cuts.push_back(k);
        for (const auto& [face, v] : current) g.vertices[v].upper_cut = k;

        std::map<FaceId, int> next;
        for (const auto& f : e.after.inside_faces()) next[f] = new_vertex(k, f);

        // Which in-faces below feed which in-faces above, and how.
        std::vector<std::tuple<FaceId, FaceId, EdgeKind>> links;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Birth>) {
                    g.vertices[next.at(x.new_face)].born = true;
                    for (const auto& [f, v] : current) links.emplace_back(f, f, EdgeKind::pass);
                } else if constexpr (std::is_same_v<T, Death>) {
                    g.vertices[current.at(e.site.dying_face)].dies = true;
                    for (const auto& [f, v] : current) {
                        if (f != e.site.dying_face) links.emplace_back(f, f, EdgeKind::pass);
                    }
                } else if constexpr (std::is_same_v<T, Merge>) {
                    for (const auto& [f, v] : current) {
                        if (f == e.site.far_face || f == e.site.retired_face) {
                            links.emplace_back(f, e.site.far_face, EdgeKind::saddle);
                        } else {
                            links.emplace_back(f, f, EdgeKind::pass);
                        }
                    }
                } else {
                    for (const auto& [f, v] : current) {
                        if (f == x.via_face) {
                            links.emplace_back(f, x.new_face_a, EdgeKind::saddle);
                            links.emplace_back(f, x.new_face_b, EdgeKind::saddle);
                        } else {
                            links.emplace_back(f, f, EdgeKind::pass);
                        }
                    }
                }
            },
            e.event.kind);
        for (const auto& [lo, hi, kind] : links) {
            add_edge(current.at(lo), next.at(hi), k, kind);
        }
        current = std::move(next);
    }
    return g;
}

int census_edge_count(const Trace& trace) {
    int total = 0;
    for (int k = 1; k <= trace.event_count(); ++k) {
        const auto& cls = trace.event(k).cls;
        if (!cls.is_cut()) continue;
        int m = std::max(trace.census[k - 1], trace.census[k]);
        total += m - (cls.locality == Locality::external ? 1 : 0);
    }
    return total;
}

namespace {

FoxWitness witness_of(const GraphEdge& e) {
    return FoxWitness{e.id, e.cut, e.face_below, e.face_above};
}

}  // namespace

FoxDecision fox_decision(const ConnectivityGraph& g) {
    auto adj = g.adjacency();
    auto comps = g.components();
    std::vector<int> comp_of(g.vertices.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    }

    // Bridges by low-link; a non-bridge edge lies on a cycle.
    std::vector<int> disc(g.vertices.size(), -1), low(g.vertices.size(), 0);
    std::vector<bool> bridge(g.edges.size(), false);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        for (int eid : adj[v]) {
            if (eid == parent_edge) continue;
            const auto& e = g.edges[eid];
            int w = e.below == v ? e.above : e.below;
            if (disc[w] < 0) {
                dfs(w, eid);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) bridge[eid] = true;
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (disc[v] < 0) dfs(static_cast<int>(v), -1);
    }

    FoxDecision d;
    d.yes = true;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        FoxComponent fc;
        fc.vertices = comps[c];
        std::optional<int> first_cycle_edge;
        for (const auto& e : g.edges) {
            if (comp_of[e.below] != static_cast<int>(c)) continue;
            ++fc.edge_count;
            if (!bridge[e.id] && !first_cycle_edge) first_cycle_edge = e.id;
        }
        bool by_count = fc.edge_count + 1 == static_cast<int>(fc.vertices.size());
        bool acyclic = !first_cycle_edge.has_value();
        if (by_count != acyclic) {
            throw PreconditionError("connectivity graph component " + std::to_string(c) +
                                    ": edge count and cycle search disagree");
        }
        fc.tree = acyclic;
        if (first_cycle_edge) {
            fc.witness = witness_of(g.edges[*first_cycle_edge]);
            if (d.yes) d.witness = fc.witness;
            d.yes = false;
        }
        d.components.push_back(std::move(fc));
    }
    return d;
}

std::string to_dot(const ConnectivityGraph& g) {
    std::ostringstream out;
    out << "graph \"" << (g.name.empty() ? "connectivity" : g.name) << "\" {\n";
    for (const auto& v : g.vertices) {
        out << "  v" << v.id << " [label=\"v" << v.id << "\\n" << v.face << " [" << v.lower_cut
            << "," << v.upper_cut << ")\"";
        if (v.born || v.dies) out << ", shape=box";
        out << "];\n";
    }
    for (const auto& e : g.edges) {
        out << "  v" << e.below << " -- v" << e.above << " [label=\"" << e.cut << "\"";
        if (e.kind == EdgeKind::pass) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

/// Circles at the level above event k that continue circle `x` from below.
std::vector<CircleId> transport(const TraceEntry& e, const CircleId& x) {
    return std::visit(
        [&](const auto& k) -> std::vector<CircleId> {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Death>) {
                if (x == k.circle) return {};
            } else if constexpr (std::is_same_v<T, Merge>) {
                if (x == k.circle_a || x == k.circle_b) return {k.new_circle};
            } else if constexpr (std::is_same_v<T, Split>) {
                if (x == k.circle) return {k.new_circle_a, k.new_circle_b};
            }
            return {x};
        },
        e.event.kind);
}

}  // namespace

OracleReport oracle_check(const Trace& trace, const ConnectivityGraph& g) {
    OracleReport r;
    int n = trace.event_count();
    std::map<std::pair<int, FaceId>, int> cell;
    std::vector<std::pair<int, FaceId>> cells;
    for (int gap = 0; gap <= n; ++gap) {
        for (const auto& f : trace.at_gap(gap).inside_faces()) {
            cell[{gap, f}] = static_cast<int>(cells.size());
            cells.emplace_back(gap, f);
        }
    }
    r.cells = static_cast<int>(cells.size());

    UnionFind slab(cells.size()), whole(cells.size());
    for (int k = 1; k <= n; ++k) {
        const TraceEntry& e = trace.event(k);
        const LevelState& below = trace.at_gap(k - 1);
        for (const auto& [x, ends] : below.circles()) {
            int from = cell.at({k - 1, below.inside_face(x)});
            for (const auto& y : transport(e, x)) {
                int to = cell.at({k, e.after.inside_face(y)});
                whole.join(from, to);
                if (!e.cls.is_cut()) slab.join(from, to);
            }
        }
    }

    auto fail = [&](std::string msg) {
        if (r.ok) {
            r.ok = false;
            r.failure = std::move(msg);
        }
    };

    std::map<int, int> class_to_vertex;
    std::map<int, int> vertex_to_class;
    std::map<int, std::set<int>> gaps_of_class;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& [gap, face] = cells[i];
        int cls = slab.find(static_cast<int>(i));
        if (!gaps_of_class[cls].insert(gap).second) {
            fail("two cells of one piece at gap " + std::to_string(gap));
        }
        auto v = g.vertex_at(gap, face);
        if (!v) {
            fail("cell (" + std::to_string(gap) + ", " + face + ") has no graph vertex");
            continue;
        }
        auto [it, fresh] = class_to_vertex.emplace(cls, *v);
        if (!fresh && it->second != *v) {
            fail("one piece maps to vertices v" + std::to_string(it->second) + " and v" +
                 std::to_string(*v));
        }
        auto [jt, fresh2] = vertex_to_class.emplace(*v, cls);
        if (!fresh2 && jt->second != cls) {
            fail("vertex v" + std::to_string(*v) + " covers two pieces");
        }
    }
    r.classes = static_cast<int>(gaps_of_class.size());
    if (vertex_to_class.size() != g.vertices.size()) {
        fail("graph has " + std::to_string(g.vertices.size()) + " vertices but cells give " +
             std::to_string(vertex_to_class.size()));
    }

    std::set<int> roots;
    for (std::size_t i = 0; i < cells.size(); ++i) roots.insert(whole.find(static_cast<int>(i)));
    r.surface_components = static_cast<int>(roots.size());
    r.graph_components = static_cast<int>(g.components().size());
    if (r.surface_components != r.graph_components) {
        fail("surface has " + std::to_string(r.surface_components) + " components, graph has " +
             std::to_string(r.graph_components));
    }
    return r;
}

}  // namespace ppt
