#include <sstream>

#include "ppt/error.hpp"
#include "ppt/leveled_graph.hpp"

namespace ppt {

namespace {

VertexKind parse_kind(const std::string& s, int line) {
    if (s == "top" || s == "boundary-top") return VertexKind::boundary_top;
    if (s == "bottom" || s == "boundary-bottom") return VertexKind::boundary_bottom;
    if (s == "interior") return VertexKind::interior;
    throw ParseError(line, 1, "unknown vertex kind '" + s + "'");
}

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::boundary_top: return "top";
        case VertexKind::boundary_bottom: return "bottom";
        case VertexKind::interior: return "interior";
    }
    return "interior";
}

}  // namespace

LeveledGraph parse_leveled_graph(std::string_view text) {
    enum class Section { none, vertices, edges, circles } section = Section::none;
    LeveledGraph g;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    auto vertex = [&](const std::string& id) {
        auto v = g.index_of(id);
        if (!v) throw ParseError(line, 1, "unknown vertex " + id);
        return *v;
    };
    auto circles_entry = [&](const std::string& tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(line, 1, "expected vertex=count, got " + tok);
        int count = 0;
        try {
            count = std::stoi(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError(line, static_cast<int>(eq) + 2, "bad tiny circle count");
        }
        vertex(tok.substr(0, eq));
        g.add_tiny_circles(tok.substr(0, eq), count);
    };
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "vertices:") {
            section = Section::vertices;
            continue;
        }
        if (head == "edges:") {
            section = Section::edges;
            continue;
        }
        if (head == "circles:") {
            section = Section::circles;
            std::string tok;
            while (ls >> tok) circles_entry(tok);
            continue;
        }
        switch (section) {
            case Section::none:
                throw ParseError(line, 1, "expected 'vertices:'");
            case Section::vertices: {
                std::string h, kind;
                if (!(ls >> h >> kind)) throw ParseError(line, 1, "expected 'id height kind'");
                Rational height;
                try {
                    height = Rational::parse(h);
                } catch (const std::exception&) {
                    throw ParseError(line, 1, "bad height '" + h + "'");
                }
                try {
                    g.add_vertex(head, height, parse_kind(kind, line));
                } catch (const PreconditionError& e) {
                    throw ParseError(line, 1, e.what());
                }
                break;
            }
            case Section::edges: {
                std::string other;
                if (!(ls >> other)) throw ParseError(line, 1, "expected 'id1 id2'");
                g.add_edge(vertex(head), vertex(other));
                break;
            }
            case Section::circles: {
                circles_entry(head);
                std::string tok;
                while (ls >> tok) circles_entry(tok);
                break;
            }
        }
        std::string extra;
        if (section != Section::circles && (ls >> extra)) {
            throw ParseError(line, 1, "unexpected trailing text '" + extra + "'");
        }
    }
    if (g.vertices().empty()) throw ParseError(0, 0, "leveled graph has no vertices");
    return g;
}

std::string format_leveled_graph(const LeveledGraph& g) {
    std::ostringstream out;
    out << "vertices:\n";
    for (const auto& v : g.vertices()) {
        out << v.id << ' ' << v.height.str() << ' ' << kind_name(v.kind) << '\n';
    }
    out << "edges:\n";
    for (const auto& [a, b] : g.edges()) {
        out << g.vertices()[a].id << ' ' << g.vertices()[b].id << '\n';
    }
    if (!g.tiny_circles().empty()) {
        out << "circles:\n";
        for (const auto& [id, n] : g.tiny_circles()) out << id << '=' << n << '\n';
    }
    return out.str();
}

}  // namespace ppt
