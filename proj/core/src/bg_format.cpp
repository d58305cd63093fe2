#include <sstream>

#include "ppt/bipartite.hpp"
#include "ppt/error.hpp"

namespace ppt {

namespace {

int parse_count(const std::string& tok, const char* prefix, int line) {
    std::string p(prefix);
    if (tok.rfind(p, 0) != 0) throw ParseError(line, 1, "expected " + p + "<count>");
    try {
        std::size_t used = 0;
        int v = std::stoi(tok.substr(p.size()), &used);
        if (used + p.size() != tok.size() || v <= 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, 1, "bad vertex count '" + tok + "'");
    }
}

}  // namespace

BipartiteGraph parse_bipartite(std::string_view text) {
    BipartiteGraph g;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    bool header = false;
    std::optional<std::pair<int, int>> designated;
    int designated_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head)) continue;
        if (!header) {
            std::string second;
            if (!(ls >> second)) throw ParseError(line, 1, "expected 'A=<n> B=<m>'");
            g.a_count = parse_count(head, "A=", line);
            g.b_count = parse_count(second, "B=", line);
            header = true;
        } else if (head == "edge" || head == "e") {
            int a = 0, b = 0;
            if (!(ls >> a >> b)) throw ParseError(line, 1, "expected '" + head + " i j'");
            if (a < 0 || a >= g.a_count || b < 0 || b >= g.b_count) {
                throw ParseError(line, 1, "endpoint out of range");
            }
            if (head == "e") {
                if (designated) throw ParseError(line, 1, "designated edge given twice");
                designated = std::pair(a, b);
                designated_line = line;
            } else {
                g.edges.emplace_back(a, b);
            }
        } else {
            throw ParseError(line, 1, "unknown directive '" + head + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line, 1, "unexpected trailing text '" + extra + "'");
    }
    if (!header) throw ParseError(0, 0, "empty bipartite graph file");
    if (g.edges.empty()) throw ParseError(0, 0, "bipartite graph has no edges");
    if (designated) {
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (g.edges[i] == *designated) {
                g.designated = static_cast<int>(i);
                break;
            }
        }
        if (!g.designated) throw ParseError(designated_line, 1, "designated edge is not listed as an edge");
    }
    return g;
}

std::string format_bipartite(const BipartiteGraph& g) {
    std::ostringstream out;
    out << "A=" << g.a_count << " B=" << g.b_count << '\n';
    for (const auto& [a, b] : g.edges) out << "edge " << a << ' ' << b << '\n';
    if (g.designated && *g.designated != 0) {
        const auto& [a, b] = g.edges[*g.designated];
        out << "e " << a << ' ' << b << '\n';
    }
    return out.str();
}

}  // namespace ppt
