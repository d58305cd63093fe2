#include "oracles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ppt/dsl.hpp"

namespace ppt::testing {

std::string fixture_path(const std::string& file) { return std::string(PPT_FIXTURES) + "/" + file; }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Presentation load_fixture(const std::string& stem) {
    return parse_presentation(read_text(fixture_path(stem + ".pp")), stem);
}

std::vector<Presentation> all_fixture_presentations() {
    std::vector<std::string> stems;
    for (const auto& entry : std::filesystem::directory_iterator(PPT_FIXTURES)) {
        if (entry.path().extension() == ".pp") stems.push_back(entry.path().stem().string());
    }
    std::sort(stems.begin(), stems.end());
    std::vector<Presentation> out;
    for (const auto& s : stems) out.push_back(load_fixture(s));
    return out;
}

std::int64_t width_by_levels(const std::string& word) {
    std::int64_t total = 0;
    int points = 0;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        points += word[i] == 'm' ? 2 : -2;
        total += points;
    }
    return total;
}

std::int64_t catalan(int k) {
    std::int64_t c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

std::optional<std::string> level_problem(const LevelState& s) {
    const auto& faces = s.faces();
    const auto& circles = s.circles();
    if (faces.empty()) return "no faces";
    if (circles.size() + 1 != faces.size()) {
        return "circle count " + std::to_string(circles.size()) + " is not face count minus one";
    }
    std::map<FaceId, std::vector<FaceId>> adj;
    for (const auto& [c, ends] : circles) {
        if (!faces.count(ends.first) || !faces.count(ends.second)) return "circle " + c + " has a missing face";
        if (faces.at(ends.first) == faces.at(ends.second)) return "labels do not alternate across " + c;
        adj[ends.first].push_back(ends.second);
        adj[ends.second].push_back(ends.first);
    }
    std::set<FaceId> seen{faces.begin()->first};
    std::vector<FaceId> stack{faces.begin()->first};
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (const auto& g : adj[f]) {
            if (seen.insert(g).second) stack.push_back(g);
        }
    }
    if (seen.size() != faces.size()) return "face tree is disconnected";
    return std::nullopt;
}

std::optional<Nesting> nesting_by_via_face(const LevelState& before, const MorseEvent& e) {
    if (const auto* m = std::get_if<Merge>(&e.kind)) {
        return before.label(m->via_face) == Membership::outside ? Nesting::unnested : Nesting::nested;
    }
    if (const auto* s = std::get_if<Split>(&e.kind)) {
        return before.label(s->via_face) == Membership::inside ? Nesting::unnested : Nesting::nested;
    }
    return std::nullopt;
}

namespace {

std::vector<std::pair<int, int>> normalized(std::vector<std::pair<int, int>> e) {
    for (auto& [a, b] : e) {
        if (a > b) std::swap(a, b);
    }
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    auto target = normalized(b.edges);
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::pair<int, int>> mapped;
        for (const auto& [x, y] : a.edges) mapped.emplace_back(perm[x], perm[y]);
        if (normalized(mapped) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

LeveledGraph random_monotone_graph(std::mt19937_64& rng, int interior, int extra_edges) {
    LeveledGraph g;
    std::vector<int> inner;
    for (int i = 1; i <= interior; ++i) {
        inner.push_back(g.add_vertex("v" + std::to_string(i), Rational(i, interior + 1), VertexKind::interior));
    }
    int boundary = 0;
    auto bottom = [&] { return g.add_vertex("b" + std::to_string(boundary++), Rational(0), VertexKind::boundary_bottom); };
    auto top = [&] { return g.add_vertex("t" + std::to_string(boundary++), Rational(1), VertexKind::boundary_top); };
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < interior; ++i) {
        // One edge down and one edge up keeps every interior vertex attached.
        if (i == 0 || coin(rng)) g.add_edge(bottom(), inner[i]);
        else g.add_edge(inner[std::uniform_int_distribution<int>(0, i - 1)(rng)], inner[i]);
        if (i == interior - 1 || coin(rng)) g.add_edge(inner[i], top());
    }
    for (int k = 0; k < extra_edges && interior >= 2; ++k) {
        int x = std::uniform_int_distribution<int>(0, interior - 1)(rng);
        int y = std::uniform_int_distribution<int>(0, interior - 1)(rng);
        if (x == y) continue;
        g.add_edge(inner[x], inner[y]);
    }
    return g;
}

int euler_of_boundary(const Presentation& p) {
    int chi = 0;
    for (const auto& e : p.events) {
        chi += std::holds_alternative<Birth>(e.kind) || std::holds_alternative<Death>(e.kind) ? 1 : -1;
    }
    return chi;
}

}  // namespace ppt::testing
