#pragma once

// Layered embedding of a bipartite graph in the cube I x [-1,1] x I and the
// edge-slide schedule that flattens it into the face z = 0.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppt/rational.hpp"

namespace ppt {

struct BipartiteGraph {
    int a_count = 0;
    int b_count = 0;
    std::vector<std::pair<int, int>> edges;   // (a index, b index), multiset
    std::optional<int> designated;            // edge index; defaults to edge 0

    int designated_edge() const { return designated.value_or(0); }
    /// Indices in range, designated edge present. Throws PreconditionError.
    void validate() const;
};

/// "A=<n> B=<m>", then "edge i j" lines; an optional "e i j" line names the
/// designated edge (otherwise the first edge). '#' comments.
BipartiteGraph parse_bipartite(std::string_view text);
std::string format_bipartite(const BipartiteGraph& g);

struct Point3 {
    Rational x, y, z;
    friend bool operator==(const Point3&, const Point3&) = default;
};

struct EmbeddedEdge {
    int id = 0;        // input edge index
    int a = 0;         // placed A index
    int b = 0;         // placed B index
    int stage = 0;     // 0 for component root edges
    bool root = false;
    Rational z;        // layer height (0 for roots)
    std::vector<Point3> polyline;
};

struct EmbeddedComponent {
    int root_edge = 0;
    std::vector<int> a_vertices;   // placed indices, increasing
    std::vector<int> b_vertices;
    int edge_count = 0;
    int stages = 0;                // max distance from the root A vertex
};

struct BipartiteEmbedding {
    BipartiteGraph graph;
    std::vector<int> a_input;      // placed index -> input index
    std::vector<int> b_input;
    std::vector<int> a_place;      // input index -> placed index
    std::vector<int> b_place;
    std::vector<int> a_distance;   // by placed index, from its component root
    std::vector<int> b_distance;
    std::vector<int> a_component;  // by placed index
    std::vector<int> b_component;
    int ell = 0;
    std::vector<EmbeddedComponent> components;
    std::vector<EmbeddedEdge> edges;   // by input index

    Point3 a_point(int placed) const;
    Point3 b_point(int placed) const;
};

/// Inset from the lines y = -1 and y = 1 where a layered edge turns horizontal.
Rational layer_inset();

BipartiteEmbedding embed_bipartite(const BipartiteGraph& g);

/// Vertex label used in schedules: "a<placed>" or "b<placed>".
std::string vertex_label(bool a_side, int placed);

struct SlideOver {
    int moving = 0;
    int anchor = 0;
    std::string shared;   // endpoint common to both; the moving end goes to the anchor's other end
};

struct CollapseParallel {
    int moving = 0;
    int onto = 0;
    std::string tiny_circle;
};

struct TranslateLayer {
    int stage = 0;        // every non-root edge of stage <= this moves
    Rational height;
};

using SlideMove = std::variant<SlideOver, CollapseParallel, TranslateLayer>;

struct SlideSchedule {
    std::vector<SlideMove> moves;
    int tiny_circles() const;
    int slide_count() const;
};

SlideSchedule flatten(const BipartiteEmbedding& emb);

struct ReplayReport {
    bool pass = true;
    int applied = 0;
    std::optional<int> failed_move;
    std::string reason;
    std::vector<int> tiny_per_component;
};

/// Applies the schedule to an explicit configuration, checking each move
/// and the terminal state independently of flatten().
ReplayReport replay(const BipartiteEmbedding& emb, const SlideSchedule& s);

std::string to_svg(const BipartiteEmbedding& emb);

}  // namespace ppt
