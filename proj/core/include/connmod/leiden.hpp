#pragma once

#include <cstdint>

#include "connmod/clustering.hpp"
#include "connmod/graph.hpp"

namespace connmod {

enum class Quality { Cpm, Modularity };

struct LeidenOptions {
  Quality quality = Quality::Cpm;
  /// CPM resolution r (> 0). Ignored for modularity.
  double resolution = 1.0;
  std::uint64_t seed = 0;
  /// Full local-move/refine/aggregate passes before polishing.
  int max_iterations = 10;
};

/// Leiden-style quality maximization.
///
/// Runs local moving, refinement of every community into well-connected
/// sub-communities and aggregation on the refined partition until the
/// partition is stable, then polishes on the input graph: single-node moves
/// until none improves quality, alternating with splitting any disconnected
/// community into its components. The result therefore has only connected
/// clusters and admits no improving single-node move. Deterministic for a
/// fixed seed.
Clustering cluster_leiden(const Graph& g, const LeidenOptions& options);

/// Smallest quality gain treated as an improvement (in units of edges).
inline constexpr double kMoveTolerance = 1e-9;

}  // namespace connmod
