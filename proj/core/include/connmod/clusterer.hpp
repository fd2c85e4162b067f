#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "connmod/clustering.hpp"
#include "connmod/graph.hpp"

namespace connmod {

struct CpmClusterer {
  double resolution = 0.01;
};
struct ModularityClusterer {};
struct IkcClusterer {
  std::uint32_t k = 10;
};
/// Clustering read from a TSV file; cannot recluster subgraphs.
struct ExternalClusterer {
  std::string path;
};

struct ClustererConfig {
  std::variant<CpmClusterer, ModularityClusterer, IkcClusterer, ExternalClusterer> kind = CpmClusterer{};
  std::uint64_t seed = 0;

  /// "cpm(r=0.01)", "modularity", "ikc(k=10)", "external(<path>)".
  std::string describe() const;
  /// Throws std::invalid_argument when r <= 0 or k < 1.
  void validate() const;
};

/// Iterative k-core clustering: while the remaining graph has a non-empty
/// k-core, take the core of maximum core number and emit its connected
/// components (largest first, then by smallest label) as clusters, remove
/// them and recompute. Nodes never emitted stay unclustered.
Clustering cluster_ikc(const Graph& g, std::uint32_t k);

/// Dispatches to Leiden (CPM / modularity), IKC, or loads the external file.
Clustering run_clusterer(const Graph& g, const ClustererConfig& config);

/// Seed for clustering a subgraph: mixes the root seed with the subgraph's
/// node fingerprint so results do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t root_seed, const Graph& subgraph);

}  // namespace connmod
