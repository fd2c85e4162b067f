#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "connmod/clusterer.hpp"
#include "connmod/clustering.hpp"
#include "connmod/graph.hpp"
#include "connmod/wellconn.hpp"

namespace connmod {

struct CMParams {
  /// Minimum cluster size B.
  std::size_t min_size = 11;
  ThresholdFn threshold = ThresholdFn::log10();
  /// Used for Stage 1 (when no input clustering is given) and for every
  /// reclustering in Stage 3.
  ClustererConfig clusterer;
  /// Unlimited when empty; every level strictly shrinks the node set.
  std::optional<std::size_t> max_recursion_depth;
  unsigned threads = 1;
};

enum class Fate { Extant, Reduced, Split, Degraded };

std::string to_string(Fate fate);

struct FateRecord {
  std::string cluster_id;
  Fate fate = Fate::Extant;
  /// Dropped by Stage 2 (tree or smaller than B) rather than by CM itself.
  bool removed_at_filter = false;
};

struct CMStats {
  std::size_t subproblems = 0;   // work items processed
  std::size_t cuts = 0;          // min cuts removed
  std::size_t pruned_nodes = 0;  // nodes removed by degree pruning
  std::size_t max_depth = 0;

  CMStats& operator+=(const CMStats& o);
};

struct FilterResult {
  Clustering kept;
  std::size_t removed_small = 0;
  std::size_t removed_trees = 0;
};

/// Stage 2: drops clusters smaller than B and clusters inducing a tree.
FilterResult filter_stage(const Clustering& c, const Graph& g, const CMParams& params);

/// Repeatedly removes every node whose degree is <= t(n), with n and the
/// degrees recomputed after each round, until no such node remains.
/// Returns the surviving nodes (possibly none).
NodeSet prune_low_degree(const Graph& cluster, const ThresholdFn& threshold);

/// Stage 3 on one cluster: prune, stop below B, accept when the min cut
/// exceeds t(n), otherwise delete the cut edges, recluster every resulting
/// component and recurse on every cluster found. Returned sets are node ids
/// of `cluster`, each well connected and of size >= B, ordered by
/// decreasing size and then by smallest label.
std::vector<NodeSet> cm_cluster(const Graph& cluster, const CMParams& params, CMStats* stats = nullptr);

/// Per input cluster: no surviving subset -> Degraded, one subset equal to
/// it -> Extant, one proper subset -> Reduced, several -> Split. Throws
/// ConsistencyError if an output cluster is not inside one input cluster.
std::vector<FateRecord> classify_fate(const Clustering& input, const Clustering& output);

/// 100 * (nodes in clusters of size >= min_size) / total_nodes.
/// Throws std::invalid_argument if total_nodes == 0 or min_size == 0.
double node_coverage(const Clustering& c, std::size_t total_nodes, std::size_t min_size);

struct StageSummary {
  std::string stage;
  std::size_t clusters = 0;
  double coverage_ge2 = 0.0;
  double coverage_geB = 0.0;
};

struct CMReport {
  Clustering input;
  Clustering filtered;
  Clustering output;
  std::vector<StageSummary> stages;
  std::vector<FateRecord> fates;
  std::size_t removed_small = 0;
  std::size_t removed_trees = 0;
  /// Clusters returned by Stage 3 but dropped by Stage 4 for being below B.
  std::size_t removed_post = 0;
  CMStats stats;
};

/// The four-stage pipeline. Without `input`, Stage 1 clusters g with
/// params.clusterer. Output cluster ids keep the input id for an unchanged
/// cluster and become "<input id>.<k>" otherwise.
CMReport run_pipeline(const Graph& g, const CMParams& params, const std::optional<Clustering>& input = {});

/// Ids of output clusters that break the guarantee (size < B or
/// mincut <= t(n)). Empty on success.
std::vector<std::string> verify_guarantee(const Graph& g, const Clustering& output, const CMParams& params,
                                          unsigned threads = 1);

}  // namespace connmod
