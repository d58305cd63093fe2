#include "bipartite_enum.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace ppt::testing {

namespace {

using Edges = std::vector<std::pair<int, int>>;

struct Shape {
    int a = 0;
    int b = 0;
    std::vector<std::vector<int>> adj;   // node adjacency, nodes 0..a-1 then a..a+b-1
};

Shape shape_of(const BipartiteGraph& g) {
    Shape s{g.a_count, g.b_count, std::vector<std::vector<int>>(g.a_count + g.b_count)};
    for (const auto& [x, y] : g.edges) {
        s.adj[x].push_back(g.a_count + y);
        s.adj[g.a_count + y].push_back(x);
    }
    for (auto& n : s.adj) std::sort(n.begin(), n.end());
    return s;
}

// Colour refinement to the coarsest equitable partition; colour indices are
// ranks of signatures, so they do not depend on node numbering.
std::vector<int> refine(const Shape& s, std::vector<int> colors) {
    const int n = static_cast<int>(colors.size());
    int classes = -1;
    while (true) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].first = colors[v];
            for (int w : s.adj[v]) sig[v].second.push_back(colors[w]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::vector<std::pair<int, std::vector<int>>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < n; ++v) {
            colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        }
        int now = static_cast<int>(sorted.size());
        if (now == classes) return colors;
        classes = now;
    }
}

void search(const Shape& s, std::vector<int> colors, std::optional<Edges>& best) {
    colors = refine(s, std::move(colors));
    const int n = static_cast<int>(colors.size());
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colors[v]].push_back(v);
    auto split = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.second.size() > 1; });
    if (split == cells.end()) {
        // Discrete: A nodes carry colours 0..a-1, B nodes a..a+b-1.
        Edges form;
        for (int v = 0; v < s.a; ++v) {
            for (int w : s.adj[v]) form.emplace_back(colors[v], colors[w] - s.a);
        }
        std::sort(form.begin(), form.end());
        if (!best || form < *best) best = std::move(form);
        return;
    }
    std::set<std::vector<int>> twins;
    for (int v : split->second) {
        if (!twins.insert(s.adj[v]).second) continue;   // swapping twins is an automorphism
        std::vector<int> c(n);
        for (int u = 0; u < n; ++u) c[u] = 2 * colors[u] + (u == v ? 0 : 1);
        search(s, std::move(c), best);
    }
}

Edges canonical_edges(const BipartiteGraph& g) {
    Shape s = shape_of(g);
    std::vector<int> colors(g.a_count + g.b_count);
    for (int v = 0; v < g.a_count + g.b_count; ++v) colors[v] = v < g.a_count ? 0 : 1;
    std::optional<Edges> best;
    search(s, colors, best);
    return best.value_or(Edges{});
}

std::string encode(int a, int b, const Edges& e) {
    std::ostringstream out;
    out << a << ',' << b << ':';
    for (const auto& [x, y] : e) out << x << '-' << y << ' ';
    return out.str();
}

}  // namespace

std::string canonical_key(const BipartiteGraph& g) { return encode(g.a_count, g.b_count, canonical_edges(g)); }

void enumerate_connected_bipartite(int max_edges, const std::function<void(const BipartiteGraph&)>& visit) {
    if (max_edges < 1) return;
    BipartiteGraph seed;
    seed.a_count = 1;
    seed.b_count = 1;
    seed.edges = {{0, 0}};
    std::vector<BipartiteGraph> level{seed};
    for (int e = 1;; ++e) {
        for (const auto& g : level) visit(g);
        if (e == max_edges) return;
        std::set<std::string> seen;
        std::vector<BipartiteGraph> next;
        auto offer = [&](BipartiteGraph h) {
            Edges c = canonical_edges(h);
            if (!seen.insert(encode(h.a_count, h.b_count, c)).second) return;
            h.edges = std::move(c);
            h.designated.reset();
            next.push_back(std::move(h));
        };
        for (const auto& g : level) {
            std::set<std::pair<int, int>> present(g.edges.begin(), g.edges.end());
            for (int i = 0; i < g.a_count; ++i) {
                for (int j = 0; j < g.b_count; ++j) {
                    if (present.count({i, j})) continue;
                    BipartiteGraph h = g;
                    h.edges.emplace_back(i, j);
                    offer(std::move(h));
                }
            }
            for (int j = 0; j < g.b_count; ++j) {
                BipartiteGraph h = g;
                h.edges.emplace_back(h.a_count++, j);
                offer(std::move(h));
            }
            for (int i = 0; i < g.a_count; ++i) {
                BipartiteGraph h = g;
                h.edges.emplace_back(i, h.b_count++);
                offer(std::move(h));
            }
        }
        level = std::move(next);
    }
}

BipartiteGraph random_connected_bipartite(std::mt19937_64& rng, int max_edges) {
    std::uniform_int_distribution<int> edges_dist(1, std::max(1, max_edges));
    const int target = edges_dist(rng);
    BipartiteGraph g;
    g.a_count = 1;
    g.b_count = 1;
    g.edges = {{0, 0}};
    std::bernoulli_distribution grow(0.55);
    while (static_cast<int>(g.edges.size()) < target) {
        if (grow(rng)) {
            if (std::bernoulli_distribution(0.5)(rng)) {
                int j = std::uniform_int_distribution<int>(0, g.b_count - 1)(rng);
                g.edges.emplace_back(g.a_count++, j);
            } else {
                int i = std::uniform_int_distribution<int>(0, g.a_count - 1)(rng);
                g.edges.emplace_back(i, g.b_count++);
            }
        } else {
            int i = std::uniform_int_distribution<int>(0, g.a_count - 1)(rng);
            int j = std::uniform_int_distribution<int>(0, g.b_count - 1)(rng);
            g.edges.emplace_back(i, j);
        }
    }
    // Scramble labels and edge order so nothing downstream relies on the build order.
    std::vector<int> pa(g.a_count), pb(g.b_count);
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pb.begin(), pb.end(), 0);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    for (auto& [x, y] : g.edges) {
        x = pa[x];
        y = pb[y];
    }
    std::shuffle(g.edges.begin(), g.edges.end(), rng);
    g.designated = std::uniform_int_distribution<int>(0, static_cast<int>(g.edges.size()) - 1)(rng);
    return g;
}

std::vector<int> bfs_distances(const BipartiteGraph& g, int source) {
    Shape s = shape_of(g);
    std::vector<int> dist(s.adj.size(), -1);
    dist[source] = 0;
    std::deque<int> q{source};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : s.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace ppt::testing
