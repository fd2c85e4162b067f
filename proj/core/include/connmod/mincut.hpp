#pragma once

#include <cstddef>
#include <vector>

#include "connmod/graph.hpp"

namespace connmod {

struct CutResult {
  std::size_t weight = 0;
  /// One side of the cut: the smaller one, or on equal size the side holding
  /// the smallest label.
  NodeSet side_a;
  /// Edges with exactly one endpoint in side_a, as (inside, outside), sorted.
  std::vector<Edge> cut_edges;
};

/// Exact global minimum edge cut.
///
/// Nagamochi-Ono-Ibaraki contraction: every round computes a maximum
/// adjacency ordering, updates the best cut with the cut-of-the-phase and
/// contracts every edge whose certified local connectivity reaches the
/// current bound. Disconnected graphs return weight 0 with side_a the
/// smallest component. Throws std::invalid_argument for fewer than 2 nodes.
CutResult global_min_cut(const Graph& g);

/// Exhaustive minimum over all bipartitions. Among minimum cuts, picks the
/// smallest side_a, then the lexicographically smallest sorted label ranks.
/// Throws SizeLimitError above 20 nodes.
CutResult brute_force_min_cut(const Graph& g);

/// Edges of g crossing between side and its complement.
std::vector<Edge> crossing_edges(const Graph& g, const NodeSet& side);

}  // namespace connmod
