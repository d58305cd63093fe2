#pragma once

// Graphs in S^2 x I with a height function and monotone edges: the dual
// picture of a piece of M that has only nested saddles and internal extrema.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppt/rational.hpp"
#include "ppt/sweep.hpp"

namespace ppt {

enum class VertexKind { boundary_top, boundary_bottom, interior };

struct LgVertex {
    std::string id;
    Rational height;
    VertexKind kind = VertexKind::interior;
};

class LeveledGraph {
public:
    /// Appends; throws PreconditionError on a duplicate id.
    int add_vertex(std::string id, Rational height, VertexKind kind);
    /// Multigraph edge between vertex indices.
    void add_edge(int a, int b);
    void add_tiny_circles(const std::string& vertex_id, int count);

    const std::vector<LgVertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    /// Detached trivial circles, each recorded against a vertex of its component.
    const std::map<std::string, int>& tiny_circles() const { return tiny_; }

    std::optional<int> index_of(const std::string& id) const;
    int above_count(int v) const;   // edges to higher neighbors
    int below_count(int v) const;
    bool is_y(int v) const { return above_count(v) >= 2; }
    bool is_lambda(int v) const { return below_count(v) >= 2; }

    /// Vertex indices per component, components ordered by smallest index.
    std::vector<std::vector<int>> components() const;
    /// |V| - |E| - tiny circles of the component.
    int euler(const std::vector<int>& component) const;
    std::vector<std::string> boundary_labels() const;

    /// Monotone edges, valence-one boundary vertices at the extreme heights,
    /// interior heights pairwise distinct. Returns the first violation.
    std::optional<std::string> violation() const;

    /// Part above height t; edges crossing t start at new bottom boundary
    /// vertices "cut<i>" placed at t.
    LeveledGraph above(const Rational& t) const;
    /// Interior vertices lying strictly between the given heights.
    std::vector<int> interior_between(const Rational& lo, const Rational& hi) const;

private:
    std::vector<LgVertex> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::string, int> tiny_;
    std::map<std::string, int> index_;
};

/// Dual graph of the piece of M in the in-face `face` (named at the level
/// just below event `first`) over events first..last. Event k sits at height
/// k; the boundary levels at first - 1/2 and last + 1/2. Interior vertices
/// are named "x<ordinal>", boundary vertices "b:<circle>" and "t:<circle>".
/// Throws PreconditionError if the piece has an unnested saddle or external
/// extremum in the interval.
LeveledGraph extract_leveled_graph(const Trace& trace, int first, int last, const FaceId& face);

enum class UnknotRule { no_y, concave, pile_on, unknown };

std::string rule_name(UnknotRule r);

struct UnknotCertificate {
    UnknotRule rule = UnknotRule::unknown;
    std::optional<Rational> split_height;
    std::vector<UnknotCertificate> sub;   // pile_on: certificate of the part above split_height
};

/// Tries, in order: no Y-vertices; a height t with no lambda-vertex above and
/// no Y-vertex below; a height t (searched from the top down) below which the
/// graph is Y-free and contains an interior vertex and above which it is
/// certified recursively. Sufficient conditions only; unknown is a verdict.
UnknotCertificate check_unknotted(const LeveledGraph& g);

/// Re-checks the certificate's conditions on g alone.
bool verify_certificate(const LeveledGraph& g, const UnknotCertificate& cert);

struct EquivalenceReport {
    bool equivalent = true;
    std::vector<std::string> mismatches;
};

/// Boundary partition and per-component Euler characteristic. Throws
/// PreconditionError if the boundary label sets differ.
EquivalenceReport equivalence_invariants(const LeveledGraph& a, const LeveledGraph& b);

enum class Ambient { ball, sphere, shell };

struct HandlebodySummand {
    int chi = 0;
    int boundary_points = 0;
    int genus = 0;
    bool punctured = false;
};

struct HandlebodySum {
    Ambient ambient = Ambient::ball;
    std::vector<HandlebodySummand> summands;
    int total_genus() const;
};

/// Complement of a certified unknotted graph as a connected sum of
/// handlebodies. Throws PreconditionError if the certificate is unknown or
/// does not verify.
HandlebodySum complement_structure(const LeveledGraph& g, const UnknotCertificate& cert,
                                   Ambient ambient = Ambient::ball);

/// .lg text: "vertices:" then "id height kind" lines (kind: top, bottom,
/// interior), "edges:" then "id1 id2" lines, optional "circles:" then
/// "vertex=count" lines. '#' comments.
LeveledGraph parse_leveled_graph(std::string_view text);
std::string format_leveled_graph(const LeveledGraph& g);

}  // namespace ppt
