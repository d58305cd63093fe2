#pragma once

// Connected bipartite graphs for exhaustive and randomized testing, with an
// isomorphism-invariant canonical form that keeps the two sides apart.

#include <functional>
#include <random>
#include <string>

#include "ppt/bipartite.hpp"

namespace ppt::testing {

/// Canonical key of a simple bipartite graph under relabelings that map A
/// to A and B to B. Equal keys iff isomorphic.
std::string canonical_key(const BipartiteGraph& g);

/// Every connected simple bipartite graph with 1..max_edges edges, one per
/// side-preserving isomorphism class, with edges in canonical order and the
/// first edge designated.
void enumerate_connected_bipartite(int max_edges, const std::function<void(const BipartiteGraph&)>& visit);

/// Connected bipartite multigraph with up to `max_edges` edges and a random
/// designated edge.
BipartiteGraph random_connected_bipartite(std::mt19937_64& rng, int max_edges);

/// Graph distance from `source` (node index: A vertex i is i, B vertex j is
/// a_count + j); -1 when unreachable.
std::vector<int> bfs_distances(const BipartiteGraph& g, int source);

}  // namespace ppt::testing
