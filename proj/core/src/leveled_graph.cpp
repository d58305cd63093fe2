#include "ppt/leveled_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ppt/error.hpp"

namespace ppt {

int LeveledGraph::add_vertex(std::string id, Rational height, VertexKind kind) {
    if (index_.count(id)) throw PreconditionError("duplicate vertex id " + id);
    int idx = static_cast<int>(vertices_.size());
    index_[id] = idx;
    vertices_.push_back(LgVertex{std::move(id), height, kind});
    return idx;
}

void LeveledGraph::add_edge(int a, int b) { edges_.emplace_back(a, b); }

void LeveledGraph::add_tiny_circles(const std::string& vertex_id, int count) {
    if (!index_.count(vertex_id)) throw PreconditionError("tiny circles on unknown vertex " + vertex_id);
    tiny_[vertex_id] += count;
}

std::optional<int> LeveledGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int LeveledGraph::above_count(int v) const {
    int n = 0;
    for (const auto& [a, b] : edges_) {
        if (a == v && vertices_[b].height > vertices_[v].height) ++n;
        if (b == v && vertices_[a].height > vertices_[v].height) ++n;
    }
    return n;
}

int LeveledGraph::below_count(int v) const {
    int n = 0;
    for (const auto& [a, b] : edges_) {
        if (a == v && vertices_[b].height < vertices_[v].height) ++n;
        if (b == v && vertices_[a].height < vertices_[v].height) ++n;
    }
    return n;
}

std::vector<std::vector<int>> LeveledGraph::components() const {
    std::vector<int> parent(vertices_.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [a, b] : edges_) parent[find(a)] = find(b);
    std::map<int, std::vector<int>> by_root;
    for (std::size_t i = 0; i < vertices_.size(); ++i) by_root[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> out;
    for (auto& [r, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

int LeveledGraph::euler(const std::vector<int>& component) const {
    std::set<int> in(component.begin(), component.end());
    int e = 0;
    for (const auto& [a, b] : edges_) {
        if (in.count(a)) ++e;
    }
    int tiny = 0;
    for (const auto& [id, count] : tiny_) {
        if (in.count(index_.at(id))) tiny += count;
    }
    return static_cast<int>(component.size()) - e - tiny;
}

std::vector<std::string> LeveledGraph::boundary_labels() const {
    std::vector<std::string> out;
    for (const auto& v : vertices_) {
        if (v.kind != VertexKind::interior) out.push_back(v.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> LeveledGraph::violation() const {
    std::vector<int> valence(vertices_.size(), 0);
    for (const auto& [a, b] : edges_) {
        if (a < 0 || b < 0 || a >= static_cast<int>(vertices_.size()) ||
            b >= static_cast<int>(vertices_.size())) {
            return "edge endpoint out of range";
        }
        if (vertices_[a].height == vertices_[b].height) {
            return "edge " + vertices_[a].id + "-" + vertices_[b].id + " is horizontal";
        }
        ++valence[a];
        ++valence[b];
    }
    if (vertices_.empty()) return std::nullopt;
    Rational lo = vertices_[0].height, hi = vertices_[0].height;
    for (const auto& v : vertices_) {
        lo = std::min(lo, v.height);
        hi = std::max(hi, v.height);
    }
    std::set<Rational> interior_heights;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (v.kind == VertexKind::interior) {
            if (!interior_heights.insert(v.height).second) {
                return "two interior vertices at height " + v.height.str();
            }
            continue;
        }
        if (valence[i] != 1) return "boundary vertex " + v.id + " does not have valence one";
        if (v.kind == VertexKind::boundary_top && v.height != hi) {
            return "top boundary vertex " + v.id + " is not at the top level";
        }
        if (v.kind == VertexKind::boundary_bottom && v.height != lo) {
            return "bottom boundary vertex " + v.id + " is not at the bottom level";
        }
    }
    for (const auto& v : vertices_) {
        if (v.kind == VertexKind::interior && (v.height == lo || v.height == hi)) {
            bool has_boundary = std::any_of(vertices_.begin(), vertices_.end(), [&](const LgVertex& w) {
                return w.kind != VertexKind::interior && w.height == v.height;
            });
            if (has_boundary) return "interior vertex " + v.id + " sits on a boundary level";
        }
    }
    return std::nullopt;
}

LeveledGraph LeveledGraph::above(const Rational& t) const {
    LeveledGraph out;
    std::vector<int> remap(vertices_.size(), -1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].height > t) {
            remap[i] = out.add_vertex(vertices_[i].id, vertices_[i].height, vertices_[i].kind);
        }
    }
    int cuts = 0;
    for (const auto& [a, b] : edges_) {
        int lo = vertices_[a].height < vertices_[b].height ? a : b;
        int hi = lo == a ? b : a;
        if (remap[lo] >= 0) {
            out.add_edge(remap[lo], remap[hi]);
        } else if (remap[hi] >= 0) {
            std::string id = "cut" + std::to_string(cuts++);
            while (out.index_of(id)) id += "'";
            int c = out.add_vertex(id, t, VertexKind::boundary_bottom);
            out.add_edge(c, remap[hi]);
        }
    }
    for (const auto& [id, count] : tiny_) {
        if (remap[index_.at(id)] >= 0) out.add_tiny_circles(id, count);
    }
    return out;
}

std::vector<int> LeveledGraph::interior_between(const Rational& lo, const Rational& hi) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (v.kind == VertexKind::interior && lo < v.height && v.height < hi) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

LeveledGraph extract_leveled_graph(const Trace& trace, int first, int last, const FaceId& face) {
    int n = trace.event_count();
    if (first < 1 || last > n || first > last + 1) {
        throw PreconditionError("event interval " + std::to_string(first) + ".." +
                                std::to_string(last) + " is outside 1.." + std::to_string(n));
    }
    const LevelState& bottom = trace.at_gap(first - 1);
    if (!bottom.has_face(face) || bottom.label(face) != Membership::inside) {
        throw PreconditionError("face " + face + " is not an in-face below event " +
                                std::to_string(first));
    }

    LeveledGraph g;
    std::map<CircleId, int> open;   // circle -> vertex its worldline started at
    Rational lo_h = Rational(2 * first - 1, 2);
    Rational hi_h = Rational(2 * last + 1, 2);
    for (const auto& c : bottom.circles_of(face)) {
        open[c] = g.add_vertex("b:" + c, lo_h, VertexKind::boundary_bottom);
    }
    auto close = [&](const CircleId& c, int v) {
        g.add_edge(open.at(c), v);
        open.erase(c);
    };
    auto refuse = [&](int k, const std::string& what) {
        throw PreconditionError("event " + std::to_string(k) + " is " + what + " of face " + face +
                                "; only nested saddles and internal extrema can be extracted");
    };

    for (int k = first; k <= last; ++k) {
        const TraceEntry& e = trace.event(k);
        const std::string xid = "x" + std::to_string(k);
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Birth>) {
                    if (x.host_face != face) return;
                    open[x.circle] = g.add_vertex(xid, Rational(k), VertexKind::interior);
                } else if constexpr (std::is_same_v<T, Death>) {
                    if (e.site.dying_face == face) refuse(k, "an external maximum");
                    if (e.site.surviving_face != face) return;
                    close(x.circle, g.add_vertex(xid, Rational(k), VertexKind::interior));
                } else if constexpr (std::is_same_v<T, Merge>) {
                    bool ours = x.via_face == face || e.site.far_face == face ||
                                e.site.retired_face == face;
                    if (!ours) return;
                    if (x.via_face != face) refuse(k, "an unnested saddle");
                    int v = g.add_vertex(xid, Rational(k), VertexKind::interior);
                    close(x.circle_a, v);
                    close(x.circle_b, v);
                    open[x.new_circle] = v;
                } else {
                    if (x.via_face == face) refuse(k, "an unnested saddle");
                    if (e.site.far_face != face) return;
                    int v = g.add_vertex(xid, Rational(k), VertexKind::interior);
                    close(x.circle, v);
                    open[x.new_circle_a] = v;
                    open[x.new_circle_b] = v;
                }
            },
            e.event.kind);
    }

    const LevelState& top = trace.at_gap(last);
    for (const auto& c : top.circles_of(face)) {
        close(c, g.add_vertex("t:" + c, hi_h, VertexKind::boundary_top));
    }
    if (!open.empty()) {
        throw PreconditionError("circle " + open.begin()->first + " of face " + face +
                                " left the face inside the interval");
    }
    return g;
}

std::string rule_name(UnknotRule r) {
    switch (r) {
        case UnknotRule::no_y: return "no-y";
        case UnknotRule::concave: return "concave";
        case UnknotRule::pile_on: return "pile-on";
        case UnknotRule::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

bool is_vertex_height(const LeveledGraph& g, const Rational& t) {
    return std::any_of(g.vertices().begin(), g.vertices().end(),
                       [&](const LgVertex& v) { return v.height == t; });
}

bool no_y(const LeveledGraph& g) {
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        if (g.is_y(static_cast<int>(v))) return false;
    }
    return true;
}

bool concave_at(const LeveledGraph& g, const Rational& t) {
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        int v = static_cast<int>(i);
        const Rational& h = g.vertices()[i].height;
        if (g.is_lambda(v) && h > t) return false;
        if (g.is_y(v) && h < t) return false;
    }
    return !is_vertex_height(g, t);
}

/// Below t: no Y-vertex and at least one interior vertex.
bool pile_on_base(const LeveledGraph& g, const Rational& t) {
    if (is_vertex_height(g, t)) return false;
    bool interior = false;
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
        const auto& v = g.vertices()[i];
        if (v.height > t) continue;
        if (g.is_y(static_cast<int>(i))) return false;
        if (v.kind == VertexKind::interior) interior = true;
    }
    return interior;
}

std::vector<Rational> split_candidates(const LeveledGraph& g) {
    std::set<Rational> hs;
    for (const auto& v : g.vertices()) hs.insert(v.height);
    std::vector<Rational> h(hs.begin(), hs.end());
    std::vector<Rational> out;
    if (h.empty()) return out;
    out.push_back(h.front() - Rational(1));
    for (std::size_t i = 1; i < h.size(); ++i) out.push_back(midpoint(h[i - 1], h[i]));
    out.push_back(h.back() + Rational(1));
    return out;
}

}  // namespace

UnknotCertificate check_unknotted(const LeveledGraph& g) {
    std::vector<Rational> cand = split_candidates(g);
    // Upper parts above each candidate depend only on the candidate, so the
    // recursion is memoized by candidate index.
    std::map<std::size_t, UnknotCertificate> memo;
    std::function<UnknotCertificate(const LeveledGraph&, std::size_t)> solve =
        [&](const LeveledGraph& h, std::size_t from) -> UnknotCertificate {
        if (auto it = memo.find(from); it != memo.end()) return it->second;
        UnknotCertificate cert;
        if (no_y(h)) {
            cert.rule = UnknotRule::no_y;
        } else {
            for (const auto& t : cand) {
                if (concave_at(h, t)) {
                    cert.rule = UnknotRule::concave;
                    cert.split_height = t;
                    break;
                }
            }
        }
        if (cert.rule == UnknotRule::unknown) {
            for (std::size_t j = cand.size(); j-- > from + 1;) {
                if (!pile_on_base(h, cand[j])) continue;
                UnknotCertificate sub = solve(g.above(cand[j]), j);
                if (sub.rule == UnknotRule::unknown) continue;
                cert.rule = UnknotRule::pile_on;
                cert.split_height = cand[j];
                cert.sub.push_back(std::move(sub));
                break;
            }
        }
        memo[from] = cert;
        return cert;
    };
    // Index 0 is below every vertex, so h = g there.
    return solve(g, 0);
}

bool verify_certificate(const LeveledGraph& g, const UnknotCertificate& cert) {
    if (g.violation()) return false;
    switch (cert.rule) {
        case UnknotRule::no_y:
            return no_y(g);
        case UnknotRule::concave:
            return cert.split_height && concave_at(g, *cert.split_height);
        case UnknotRule::pile_on:
            return cert.split_height && cert.sub.size() == 1 && pile_on_base(g, *cert.split_height) &&
                   verify_certificate(g.above(*cert.split_height), cert.sub.front());
        case UnknotRule::unknown:
            return false;
    }
    return false;
}

namespace {

struct ComponentSummary {
    std::vector<std::string> labels;
    int chi = 0;
};

std::vector<ComponentSummary> summarize(const LeveledGraph& g) {
    std::vector<ComponentSummary> out;
    for (const auto& comp : g.components()) {
        ComponentSummary s;
        for (int v : comp) {
            if (g.vertices()[v].kind != VertexKind::interior) s.labels.push_back(g.vertices()[v].id);
        }
        std::sort(s.labels.begin(), s.labels.end());
        s.chi = g.euler(comp);
        out.push_back(std::move(s));
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "}";
}

}  // namespace

EquivalenceReport equivalence_invariants(const LeveledGraph& a, const LeveledGraph& b) {
    if (a.boundary_labels() != b.boundary_labels()) {
        throw PreconditionError("graphs have different boundary vertex labels");
    }
    EquivalenceReport r;
    std::map<std::vector<std::string>, int> pa, pb;
    std::multiset<int> closed_a, closed_b;
    for (const auto& s : summarize(a)) {
        if (s.labels.empty()) closed_a.insert(s.chi);
        else pa[s.labels] = s.chi;
    }
    for (const auto& s : summarize(b)) {
        if (s.labels.empty()) closed_b.insert(s.chi);
        else pb[s.labels] = s.chi;
    }
    for (const auto& [labels, chi] : pa) {
        auto it = pb.find(labels);
        if (it == pb.end()) {
            r.mismatches.push_back("boundary class " + join(labels) + " only in the first graph");
        } else if (it->second != chi) {
            r.mismatches.push_back("boundary class " + join(labels) + ": euler characteristic " +
                                   std::to_string(chi) + " vs " + std::to_string(it->second));
        }
    }
    for (const auto& [labels, chi] : pb) {
        if (!pa.count(labels)) {
            r.mismatches.push_back("boundary class " + join(labels) + " only in the second graph");
        }
    }
    if (closed_a != closed_b) {
        r.mismatches.push_back("closed components differ in euler characteristics");
    }
    r.equivalent = r.mismatches.empty();
    return r;
}

int HandlebodySum::total_genus() const {
    int g = 0;
    for (const auto& s : summands) g += s.genus;
    return g;
}

HandlebodySum complement_structure(const LeveledGraph& g, const UnknotCertificate& cert,
                                   Ambient ambient) {
    if (cert.rule == UnknotRule::unknown) {
        throw PreconditionError("graph is not certified unknotted");
    }
    if (!verify_certificate(g, cert)) {
        throw PreconditionError("unknottedness certificate does not verify");
    }
    HandlebodySum sum;
    sum.ambient = ambient;
    for (const auto& s : summarize(g)) {
        HandlebodySummand h;
        h.chi = s.chi;
        h.boundary_points = static_cast<int>(s.labels.size());
        if (h.boundary_points >= 1) {
            h.genus = h.boundary_points - h.chi;
        } else {
            h.punctured = true;
            h.genus = 1 - h.chi;
        }
        sum.summands.push_back(h);
    }
    return sum;
}

}  // namespace ppt
