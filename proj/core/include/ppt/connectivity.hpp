#pragma once

// The connectivity graph of a presentation: cut M along every unnested
// saddle level and every external extremum level; vertices are the pieces,
// edges record how pieces meet across a cut.

#include <optional>
#include <string>
#include <vector>

#include "ppt/sweep.hpp"

namespace ppt {

struct GraphVertex {
    int id = 0;
    int lower_cut = 0;   // ordinal of the cut event below the piece
    int upper_cut = 0;   // ordinal of the cut event above it (n + 1 if none)
    FaceId face;         // its in-face on every level of the slab
    bool born = false;   // starts at an external minimum
    bool dies = false;   // ends at an external maximum
};

enum class EdgeKind { saddle, pass };

struct GraphEdge {
    int id = 0;
    int below = 0;
    int above = 0;
    int cut = 0;         // ordinal of the cut event
    FaceId face_below;
    FaceId face_above;
    EdgeKind kind = EdgeKind::pass;
};

struct ConnectivityGraph {
    std::string name;
    int event_count = 0;
    std::vector<int> cuts;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    /// The vertex whose slab contains `gap` and whose in-face is `face`.
    std::optional<int> vertex_at(int gap, const FaceId& face) const;
    std::vector<std::vector<int>> adjacency() const;   // incident edge ids per vertex
    /// Vertex ids grouped by component, each sorted; components ordered by smallest id.
    std::vector<std::vector<int>> components() const;
};

ConnectivityGraph build_connectivity(const Trace& trace);

/// Edge count predicted by the inside-face census alone.
int census_edge_count(const Trace& trace);

struct FoxWitness {
    int edge = 0;
    int cut = 0;
    FaceId face_below;
    FaceId face_above;
};

struct FoxComponent {
    std::vector<int> vertices;
    int edge_count = 0;
    bool tree = false;
    std::optional<FoxWitness> witness;   // first edge lying on a cycle
};

/// Whether each component of the graph is a tree. Tree-ness is decided two
/// ways (edge count and a cycle search); PreconditionError if they disagree.
struct FoxDecision {
    bool yes = false;
    std::vector<FoxComponent> components;
    std::optional<FoxWitness> witness;   // from the first non-tree component
};

FoxDecision fox_decision(const ConnectivityGraph& g);

std::string to_dot(const ConnectivityGraph& g);

/// Independent check by cells: each (gap, in-face) pair is a cell; cells are
/// glued across non-cut events by following circles. The resulting classes
/// must be exactly the graph's vertices, with one cell per gap. Gluing across
/// every event must give as many components of M as the graph has components.
struct OracleReport {
    bool ok = true;
    std::string failure;
    int cells = 0;
    int classes = 0;
    int surface_components = 0;
    int graph_components = 0;
};

OracleReport oracle_check(const Trace& trace, const ConnectivityGraph& g);

}  // namespace ppt
