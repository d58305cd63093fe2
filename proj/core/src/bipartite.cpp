#include "ppt/bipartite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "ppt/error.hpp"

namespace ppt {

void BipartiteGraph::validate() const {
    if (a_count <= 0 || b_count <= 0) throw PreconditionError("both vertex sets must be non-empty");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& [a, b] = edges[i];
        if (a < 0 || a >= a_count || b < 0 || b >= b_count) {
            throw PreconditionError("edge " + std::to_string(i) + " has an endpoint out of range");
        }
    }
    if (edges.empty()) throw PreconditionError("graph has no edges, so no designated edge");
    if (designated_edge() < 0 || designated_edge() >= static_cast<int>(edges.size())) {
        throw PreconditionError("designated edge is not an edge of the graph");
    }
}

Rational layer_inset() { return Rational(1, 8); }

std::string vertex_label(bool a_side, int placed) {
    return (a_side ? "a" : "b") + std::to_string(placed);
}

Point3 BipartiteEmbedding::a_point(int placed) const {
    return Point3{Rational(placed, graph.a_count), Rational(-1), Rational(0)};
}

Point3 BipartiteEmbedding::b_point(int placed) const {
    return Point3{Rational(placed, graph.b_count), Rational(1), Rational(0)};
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

}  // namespace

BipartiteEmbedding embed_bipartite(const BipartiteGraph& g) {
    g.validate();
    const int na = g.a_count, nb = g.b_count;
    const int ne = static_cast<int>(g.edges.size());
    // Nodes: A vertex i is node i, B vertex j is node na + j.
    UnionFind uf(static_cast<std::size_t>(na + nb));
    for (const auto& [a, b] : g.edges) uf.join(a, na + b);

    // Component root edges: the designated edge first, then the lowest edge
    // index of each remaining component.
    std::vector<int> root_edges{g.designated_edge()};
    std::set<int> seen_roots{uf.find(g.edges[g.designated_edge()].first)};
    for (int i = 0; i < ne; ++i) {
        if (seen_roots.insert(uf.find(g.edges[i].first)).second) root_edges.push_back(i);
    }
    std::map<int, int> rank_of_root;
    for (std::size_t r = 0; r < root_edges.size(); ++r) {
        rank_of_root[uf.find(g.edges[root_edges[r]].first)] = static_cast<int>(r);
    }

    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(na + nb));
    for (int i = 0; i < ne; ++i) {
        adj[g.edges[i].first].emplace_back(na + g.edges[i].second, i);
        adj[na + g.edges[i].second].emplace_back(g.edges[i].first, i);
    }
    const int unreached = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(na + nb), unreached);
    for (int re : root_edges) {
        int s = g.edges[re].first;
        dist[s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (const auto& [w, e] : adj[v]) {
                if (dist[w] == unreached) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    int isolated_rank = static_cast<int>(root_edges.size());
    auto rank = [&](int node) {
        auto it = rank_of_root.find(uf.find(node));
        return it == rank_of_root.end() ? isolated_rank : it->second;
    };
    auto d = [&](int node) { return dist[node] == unreached ? 0 : dist[node]; };

    BipartiteEmbedding emb;
    emb.graph = g;
    emb.a_input.resize(na);
    std::iota(emb.a_input.begin(), emb.a_input.end(), 0);
    std::stable_sort(emb.a_input.begin(), emb.a_input.end(), [&](int x, int y) {
        return std::tuple(rank(x), d(x), x) < std::tuple(rank(y), d(y), y);
    });
    std::set<int> root_b;
    for (int re : root_edges) root_b.insert(g.edges[re].second);
    emb.b_input.resize(nb);
    std::iota(emb.b_input.begin(), emb.b_input.end(), 0);
    std::stable_sort(emb.b_input.begin(), emb.b_input.end(), [&](int x, int y) {
        int nx = na + x, ny = na + y;
        return std::tuple(rank(nx), d(nx), root_b.count(x) ? 0 : 1, x) <
               std::tuple(rank(ny), d(ny), root_b.count(y) ? 0 : 1, y);
    });
    emb.a_place.resize(na);
    emb.b_place.resize(nb);
    for (int i = 0; i < na; ++i) emb.a_place[emb.a_input[i]] = i;
    for (int j = 0; j < nb; ++j) emb.b_place[emb.b_input[j]] = j;
    for (int i = 0; i < na; ++i) {
        emb.a_distance.push_back(d(emb.a_input[i]));
        emb.a_component.push_back(rank(emb.a_input[i]));
    }
    for (int j = 0; j < nb; ++j) {
        emb.b_distance.push_back(d(na + emb.b_input[j]));
        emb.b_component.push_back(rank(na + emb.b_input[j]));
    }

    int ncomp = isolated_rank + 1;
    emb.components.resize(static_cast<std::size_t>(ncomp));
    for (std::size_t r = 0; r < root_edges.size(); ++r) emb.components[r].root_edge = root_edges[r];
    emb.components.back().root_edge = -1;
    for (int i = 0; i < na; ++i) {
        auto& c = emb.components[emb.a_component[i]];
        c.a_vertices.push_back(i);
        c.stages = std::max(c.stages, emb.a_distance[i]);
    }
    for (int j = 0; j < nb; ++j) {
        auto& c = emb.components[emb.b_component[j]];
        c.b_vertices.push_back(j);
        c.stages = std::max(c.stages, emb.b_distance[j]);
    }
    if (emb.components.back().a_vertices.empty() && emb.components.back().b_vertices.empty()) {
        emb.components.pop_back();
    }
    for (const auto& c : emb.components) emb.ell = std::max(emb.ell, c.stages);

    std::set<int> roots(root_edges.begin(), root_edges.end());
    std::map<int, std::vector<int>> by_stage;
    for (int i = 0; i < ne; ++i) {
        EmbeddedEdge e;
        e.id = i;
        e.a = emb.a_place[g.edges[i].first];
        e.b = emb.b_place[g.edges[i].second];
        e.root = roots.count(i) != 0;
        e.stage = e.root ? 0 : std::max(emb.a_distance[e.a], emb.b_distance[e.b]);
        emb.components[emb.a_component[e.a]].edge_count++;
        if (!e.root) by_stage[e.stage].push_back(i);
        emb.edges.push_back(std::move(e));
    }

    for (auto& [k, ids] : by_stage) {
        bool far_is_b = k % 2 == 1;
        auto key = [&](int id) {
            const auto& e = emb.edges[id];
            int far = far_is_b ? e.b : e.a;
            int near = far_is_b ? e.a : e.b;
            return std::tuple(far, near, id);
        };
        std::sort(ids.begin(), ids.end(), [&](int x, int y) { return key(x) > key(y); });
        const auto p = static_cast<std::int64_t>(ids.size());
        Rational delta(1, 2 * emb.ell * (p + 1));
        for (std::int64_t j = 0; j < p; ++j) {
            emb.edges[ids[j]].z = Rational(k, emb.ell) - Rational(j) * delta;
        }
    }

    const Rational eta = layer_inset();
    for (auto& e : emb.edges) {
        Point3 pa = emb.a_point(e.a), pb = emb.b_point(e.b);
        if (e.root) {
            e.polyline = {pa, pb};
        } else {
            e.polyline = {pa, Point3{pa.x, Rational(-1) + eta, e.z}, Point3{pb.x, Rational(1) - eta, e.z},
                          pb};
        }
    }
    return emb;
}

int SlideSchedule::tiny_circles() const {
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), [](const SlideMove& m) {
        return std::holds_alternative<CollapseParallel>(m);
    }));
}

int SlideSchedule::slide_count() const {
    return static_cast<int>(std::count_if(moves.begin(), moves.end(), [](const SlideMove& m) {
        return std::holds_alternative<SlideOver>(m);
    }));
}

SlideSchedule flatten(const BipartiteEmbedding& emb) {
    SlideSchedule s;
    bool any_layered = std::any_of(emb.edges.begin(), emb.edges.end(),
                                   [](const EmbeddedEdge& e) { return !e.root; });
    if (!any_layered) return s;

    struct Path {
        std::vector<int> vertices;   // placed indices on one side
        std::vector<int> edges;      // edges[i] joins vertices[i-1] and vertices[i]; edges[0] unused
    };
    std::vector<Path> a_path(emb.components.size()), b_path(emb.components.size());
    for (std::size_t c = 0; c < emb.components.size(); ++c) {
        const auto& comp = emb.components[c];
        if (comp.root_edge < 0) continue;
        const auto& re = emb.edges[comp.root_edge];
        a_path[c] = Path{{re.a}, {-1}};
        b_path[c] = Path{{re.b}, {-1}};
    }
    int tiny = 0;

    for (int k = 1; k <= emb.ell; ++k) {
        bool near_is_a = k % 2 == 1;
        for (std::size_t c = 0; c < emb.components.size(); ++c) {
            const auto& comp = emb.components[c];
            if (comp.root_edge < 0 || comp.stages < k) continue;
            Path& np = near_is_a ? a_path[c] : b_path[c];
            Path& sp = near_is_a ? b_path[c] : a_path[c];
            const int root_edge = comp.root_edge;
            const int r_near = np.vertices.front();
            const std::string r_label = vertex_label(near_is_a, r_near);

            std::vector<int> stage_edges;
            for (const auto& e : emb.edges) {
                if (!e.root && e.stage == k && emb.a_component[e.a] == static_cast<int>(c)) {
                    stage_edges.push_back(e.id);
                }
            }
            // Highest layer first, i.e. rightmost far end first.
            std::sort(stage_edges.begin(), stage_edges.end(), [&](int x, int y) {
                return std::tuple(emb.edges[y].z, y) < std::tuple(emb.edges[x].z, x);
            });

            // Walk every near end down the near-side path to the root vertex.
            for (int id : stage_edges) {
                const auto& e = emb.edges[id];
                int near = near_is_a ? e.a : e.b;
                auto it = std::find(np.vertices.begin(), np.vertices.end(), near);
                if (it == np.vertices.end()) {
                    throw PreconditionError("near end of edge " + std::to_string(id) + " is not yet flat");
                }
                for (auto i = it - np.vertices.begin(); i > 0; --i) {
                    s.moves.push_back(SlideOver{id, np.edges[i], vertex_label(near_is_a, np.vertices[i])});
                }
            }

            // Parallel copies now share both ends; keep the lowest of each group.
            std::map<int, std::vector<int>> by_far;
            for (int id : stage_edges) {
                const auto& e = emb.edges[id];
                by_far[near_is_a ? e.b : e.a].push_back(id);
            }
            const int s_root = sp.vertices.front();
            std::vector<std::pair<int, int>> reps;   // (far vertex, edge)
            for (auto it = by_far.rbegin(); it != by_far.rend(); ++it) {
                auto& group = it->second;
                std::sort(group.begin(), group.end(), [&](int x, int y) {
                    return std::tuple(emb.edges[x].z, x) < std::tuple(emb.edges[y].z, y);
                });
                int keep = group.front();
                std::size_t first_collapse = 1;
                if (it->first == s_root) {
                    keep = root_edge;
                    first_collapse = 0;
                }
                for (std::size_t i = first_collapse; i < group.size(); ++i) {
                    s.moves.push_back(CollapseParallel{group[i], keep, "t" + std::to_string(++tiny)});
                }
                if (it->first != s_root) reps.emplace_back(it->first, keep);
            }
            std::sort(reps.begin(), reps.end());

            // Rightmost first: each representative slides over its left neighbour.
            for (std::size_t i = reps.size(); i-- > 1;) {
                s.moves.push_back(SlideOver{reps[i].second, reps[i - 1].second, r_label});
            }
            if (!reps.empty()) {
                int first = reps.front().second;
                s.moves.push_back(SlideOver{first, root_edge, r_label});
                for (std::size_t t = 1; t < sp.vertices.size(); ++t) {
                    s.moves.push_back(
                        SlideOver{first, sp.edges[t], vertex_label(!near_is_a, sp.vertices[t - 1])});
                }
            }
            for (const auto& [far, id] : reps) {
                sp.vertices.push_back(far);
                sp.edges.push_back(id);
            }
        }
        if (k < emb.ell) {
            s.moves.push_back(TranslateLayer{k, Rational(2 * k + 1, 2 * emb.ell)});
        } else {
            s.moves.push_back(TranslateLayer{k, Rational(0)});
        }
    }
    return s;
}

namespace {

struct Config {
    struct Edge {
        std::string u, v;
        Rational z;
        int stage = 0;
        bool root = false;
        bool live = true;
    };
    std::vector<Edge> edges;
    std::map<std::string, int> component;   // vertex label -> component
    std::vector<int> tiny;                  // per component
    std::set<std::string> tiny_ids;

    bool has_end(const Edge& e, const std::string& x) const { return e.u == x || e.v == x; }
    static std::string other(const Edge& e, const std::string& x) { return e.u == x ? e.v : e.u; }

    /// Components among vertices touched by live edges, plus the Betti sum.
    std::pair<int, int> connectivity() const {
        std::map<std::string, std::string> parent;
        std::function<std::string(const std::string&)> find = [&](const std::string& x) {
            auto it = parent.find(x);
            if (it == parent.end()) {
                parent[x] = x;
                return x;
            }
            if (it->second == x) return x;
            std::string r = find(it->second);
            parent[x] = r;
            return r;
        };
        for (const auto& [label, c] : component) find(label);
        int live = 0;
        for (const auto& e : edges) {
            if (!e.live) continue;
            ++live;
            parent[find(e.u)] = find(e.v);
        }
        std::set<std::string> roots;
        for (const auto& [x, p] : parent) roots.insert(find(x));
        int comps = static_cast<int>(roots.size());
        int t = std::accumulate(tiny.begin(), tiny.end(), 0);
        return {comps, live - static_cast<int>(component.size()) + comps + t};
    }
};

}  // namespace

ReplayReport replay(const BipartiteEmbedding& emb, const SlideSchedule& s) {
    ReplayReport r;
    Config cfg;
    cfg.tiny.assign(emb.components.size(), 0);
    for (std::size_t i = 0; i < emb.a_component.size(); ++i) {
        cfg.component[vertex_label(true, static_cast<int>(i))] = emb.a_component[i];
    }
    for (std::size_t j = 0; j < emb.b_component.size(); ++j) {
        cfg.component[vertex_label(false, static_cast<int>(j))] = emb.b_component[j];
    }
    int max_stage = 0;
    for (const auto& e : emb.edges) {
        cfg.edges.push_back(Config::Edge{vertex_label(true, e.a), vertex_label(false, e.b), e.z,
                                         e.stage, e.root, true});
        max_stage = std::max(max_stage, e.stage);
    }
    const auto initial = cfg.connectivity();

    auto fail = [&](std::size_t i, std::string why) {
        r.pass = false;
        r.failed_move = static_cast<int>(i);
        r.reason = std::move(why);
    };
    auto edge_ok = [&](int id) {
        return id >= 0 && id < static_cast<int>(cfg.edges.size()) && cfg.edges[id].live;
    };

    for (std::size_t i = 0; i < s.moves.size() && r.pass; ++i) {
        std::string bad = std::visit(
            [&](const auto& m) -> std::string {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, SlideOver>) {
                    if (!edge_ok(m.moving) || !edge_ok(m.anchor)) return "edge not present";
                    if (m.moving == m.anchor) return "edge slid over itself";
                    auto& mv = cfg.edges[m.moving];
                    const auto& an = cfg.edges[m.anchor];
                    if (mv.root) return "designated edge immovable";
                    if (!cfg.has_end(mv, m.shared) || !cfg.has_end(an, m.shared)) {
                        return "edges do not share endpoint " + m.shared;
                    }
                    if (mv.z < an.z) return "anchor lies above the moving edge";
                    std::string stay = Config::other(mv, m.shared);
                    std::string to = Config::other(an, m.shared);
                    if (stay == to) return "slide would make a loop";
                    mv.u = to;
                    mv.v = stay;
                    return {};
                } else if constexpr (std::is_same_v<T, CollapseParallel>) {
                    if (!edge_ok(m.moving) || !edge_ok(m.onto)) return "edge not present";
                    if (m.moving == m.onto) return "edge collapsed onto itself";
                    auto& mv = cfg.edges[m.moving];
                    const auto& on = cfg.edges[m.onto];
                    if (mv.root) return "designated edge immovable";
                    if (std::minmax(mv.u, mv.v) != std::minmax(on.u, on.v)) return "edges are not parallel";
                    if (mv.z < on.z) return "collapse target lies above the moving edge";
                    if (!cfg.tiny_ids.insert(m.tiny_circle).second) return "tiny circle id reused";
                    mv.live = false;
                    cfg.tiny[cfg.component.at(on.u)]++;
                    return {};
                } else {
                    for (const auto& e : cfg.edges) {
                        if (e.live && !e.root && e.stage > m.stage && e.z <= m.height) {
                            return "translation passes a higher stage";
                        }
                    }
                    for (auto& e : cfg.edges) {
                        if (e.live && !e.root && e.stage <= m.stage) e.z = m.height;
                    }
                    return {};
                }
            },
            s.moves[i]);
        if (!bad.empty()) {
            fail(i, bad);
            break;
        }
        if (cfg.connectivity() != initial) {
            fail(i, "components or first Betti number changed");
            break;
        }
        ++r.applied;
    }
    r.tiny_per_component = cfg.tiny;
    if (!r.pass) return r;

    // Terminal: everything flat, non-root edges along the lines y = +-1
    // joining neighbours, tiny circles matching the Betti number.
    std::vector<std::map<std::string, std::size_t>> position(emb.components.size());
    for (std::size_t c = 0; c < emb.components.size(); ++c) {
        const auto& comp = emb.components[c];
        for (std::size_t i = 0; i < comp.a_vertices.size(); ++i) {
            position[c][vertex_label(true, comp.a_vertices[i])] = i;
        }
        for (std::size_t i = 0; i < comp.b_vertices.size(); ++i) {
            position[c][vertex_label(false, comp.b_vertices[i])] = i;
        }
    }
    for (std::size_t i = 0; i < cfg.edges.size(); ++i) {
        const auto& e = cfg.edges[i];
        if (!e.live) continue;
        if (e.z != Rational(0)) {
            fail(s.moves.size(), "edge " + std::to_string(i) + " is not flat");
            return r;
        }
        if (e.root) continue;
        int c = cfg.component.at(e.u);
        std::size_t pu = position[c].at(e.u), pv = position[c].at(e.v);
        bool same_side = e.u[0] == e.v[0];
        bool adjacent = pu + 1 == pv || pv + 1 == pu;
        if (!same_side || !adjacent) {
            fail(s.moves.size(), "edge " + std::to_string(i) + " does not join neighbours on one line");
            return r;
        }
    }
    for (std::size_t c = 0; c < emb.components.size(); ++c) {
        const auto& comp = emb.components[c];
        int v = static_cast<int>(comp.a_vertices.size() + comp.b_vertices.size());
        int expected = comp.root_edge < 0 ? 0 : comp.edge_count - v + 1;
        if (cfg.tiny[c] != expected) {
            fail(s.moves.size(), "component " + std::to_string(c) + " has " + std::to_string(cfg.tiny[c]) +
                                     " tiny circles, expected " + std::to_string(expected));
            return r;
        }
    }
    return r;
}

std::string to_svg(const BipartiteEmbedding& emb) {
    auto px = [](const Point3& p) { return 40.0 + 420.0 * p.x.to_double() + 120.0 * p.z.to_double(); };
    auto py = [](const Point3& p) { return 300.0 - 110.0 * (p.y.to_double() + 1.0) - 120.0 * p.z.to_double(); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"620\" height=\"340\" viewBox=\"0 0 620 340\">\n";
    for (const auto& e : emb.edges) {
        out << "  <polyline fill=\"none\" stroke=\"" << (e.root ? "#c0392b" : "#2c3e50")
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < e.polyline.size(); ++i) {
            out << (i ? " " : "") << px(e.polyline[i]) << ',' << py(e.polyline[i]);
        }
        out << "\"><title>edge " << e.id << " stage " << e.stage << "</title></polyline>\n";
    }
    for (int i = 0; i < emb.graph.a_count; ++i) {
        Point3 p = emb.a_point(i);
        out << "  <circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"4\" fill=\"#2980b9\"><title>"
            << vertex_label(true, i) << "</title></circle>\n";
    }
    for (int j = 0; j < emb.graph.b_count; ++j) {
        Point3 p = emb.b_point(j);
        out << "  <circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"4\" fill=\"#27ae60\"><title>"
            << vertex_label(false, j) << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ppt
