#pragma once

// Reimbedding plans: for a presentation whose connectivity graph is a tree,
// a tree of certified steps showing M is braid equivalent to an unknotted
// graph complement, with the resulting connected sum of handlebodies.

#include <optional>
#include <string>
#include <vector>

#include "ppt/bipartite.hpp"
#include "ppt/connectivity.hpp"
#include "ppt/error.hpp"
#include "ppt/leveled_graph.hpp"
#include "ppt/sweep.hpp"

namespace ppt {

/// Bipartite graph of components of two graphs meeting along a level:
/// A-vertices are components of `lower`, B-vertices components of `upper`,
/// one edge per interface point.
struct GluingGraph {
    BipartiteGraph graph;
    std::vector<std::string> a_labels;     // smallest vertex id of each lower component
    std::vector<std::string> b_labels;
    std::vector<std::string> edge_labels;  // interface point, as its id in `lower`

    friend bool operator==(const GluingGraph&, const GluingGraph&) = default;
};

inline bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.a_count == b.a_count && a.b_count == b.b_count && a.edges == b.edges &&
           a.designated == b.designated;
}

/// `interface` pairs a boundary vertex id of `lower` with one of `upper`;
/// pairs must be injective on both sides. With `bijective`, every top vertex
/// of lower and every bottom vertex of upper must also be paired.
/// `designated` names an interface point (lower id).
/// Throws PreconditionError on a bad interface.
GluingGraph gluing_graph(const LeveledGraph& lower, const LeveledGraph& upper,
                         const std::vector<std::pair<std::string, std::string>>& interface,
                         const std::optional<std::string>& designated = std::nullopt,
                         bool bijective = true);

/// Existence record of a braid move: cut along the in-face `face` at `gap`
/// and reglue; the regluing map is determined by `gluing` up to isotopy.
struct BraidMove {
    int gap = 0;
    FaceId face;
    GluingGraph gluing;

    friend bool operator==(const BraidMove&, const BraidMove&) = default;
};

enum class ChainKind { extremum, pile_on, glue_across };

std::string chain_kind_name(ChainKind k);

/// One critical point of a nested piece, handled top down.
struct ChainStep {
    int event = 0;
    ChainKind kind = ChainKind::extremum;
    std::optional<BraidMove> braid;   // glue_across only

    friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct LeafCertificate {
    std::vector<ChainStep> chain;
    UnknotRule graph_rule = UnknotRule::unknown;   // direct check of the piece's graph

    friend bool operator==(const LeafCertificate&, const LeafCertificate&) = default;
};

enum class StepKind { nested_interval, combine_lower, turn_saddle };

std::string step_kind_name(StepKind k);

struct PlanStep {
    StepKind kind = StepKind::nested_interval;

    // nested_interval: the piece of M in `face` over gaps lo_gap..hi_gap.
    int lo_gap = 0;
    int hi_gap = 0;
    FaceId face;
    std::vector<int> gamma_vertices;
    std::optional<LeafCertificate> certificate;

    // combine_lower / turn_saddle: the unnested saddle event and how it is handled.
    int saddle = 0;
    Vertical orientation = Vertical::lower;
    bool via_reflection = false;
    std::optional<BraidMove> braid;   // turn_saddle only

    /// Internal steps: the part built so far (its first leaf touches the
    /// saddle), then the certified parts across the saddle.
    std::vector<PlanStep> children;

    const PlanStep& head_leaf() const;

    friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct TerminalClaim {
    std::vector<int> genera;       // one per handlebody summand
    std::vector<bool> punctured;
    std::vector<int> component;    // index of the component of M the summand belongs to

    int total_genus() const;
    friend bool operator==(const TerminalClaim&, const TerminalClaim&) = default;
};

struct ReimbeddingPlan {
    std::string name;
    std::vector<PlanStep> roots;   // one per component of M
    TerminalClaim terminal;

    int braid_moves() const;
    int leaf_count() const;
    friend bool operator==(const ReimbeddingPlan&, const ReimbeddingPlan&) = default;
};

/// The connectivity graph has a cycle; carries the witness edge.
class NotATreeError : public PreconditionError {
public:
    explicit NotATreeError(FoxWitness w);
    const FoxWitness& witness() const noexcept { return witness_; }

private:
    FoxWitness witness_;
};

struct PlanOptions {
    /// Root leaf as (gap, in-face); defaults to the topmost leaf of each component.
    std::optional<std::pair<int, FaceId>> root;
};

ReimbeddingPlan plan_reimbedding(const Presentation& p, const PlanOptions& opt = {});

struct PlanReport {
    bool pass = true;
    std::vector<std::string> failures;
    int steps_checked = 0;
    int braid_moves_checked = 0;
};

/// Independent audit: re-extracts leaves, replays chains and gluing graphs,
/// checks saddle case preconditions, coverage, and the terminal genera
/// against the genus of the boundary surface.
PlanReport verify_plan(const Presentation& p, const ReimbeddingPlan& plan);

/// Genus of each boundary surface of M from its extrema and saddles,
/// grouped by component of M (components in graph order).
std::vector<std::vector<int>> boundary_genera(const Trace& trace, const ConnectivityGraph& g);

}  // namespace ppt
