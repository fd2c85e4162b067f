#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "connmod/graph.hpp"

namespace connmod {

struct Cluster {
  std::string id;
  NodeSet nodes;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Disjoint clusters over the nodes [0, universe) of one graph. Nodes outside
/// every cluster are implicit singletons.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(std::size_t universe);

  /// Dense membership vector -> clustering. Groups of size 1 become implicit
  /// singletons; clusters are numbered "0", "1", ... by their smallest node id.
  static Clustering from_membership(std::span<const std::uint32_t> membership);

  /// Throws std::invalid_argument on an empty, out-of-range or overlapping
  /// node set, or a repeated id. `nodes` is sorted on insertion.
  void add_cluster(std::string id, NodeSet nodes);

  std::size_t universe() const { return cluster_of_.size(); }
  std::size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  const Cluster& operator[](std::size_t i) const { return clusters_[i]; }

  /// Index into clusters() of the cluster holding v, if any.
  std::optional<std::size_t> cluster_of(NodeId v) const;
  std::optional<std::size_t> index_of(const std::string& id) const;

  /// Nodes covered by some cluster.
  std::size_t assigned_count() const;

  /// Membership vector where every implicit singleton gets its own label.
  std::vector<std::uint32_t> materialized_membership() const;

  friend bool operator==(const Clustering& a, const Clustering& b) {
    return a.clusters_ == b.clusters_ && a.cluster_of_ == b.cluster_of_;
  }

 private:
  static constexpr std::uint32_t kUnassigned = static_cast<std::uint32_t>(-1);

  std::vector<Cluster> clusters_;
  std::vector<std::uint32_t> cluster_of_;
  std::unordered_map<std::string, std::uint32_t> id_index_;
};

struct ClusterStats {
  std::size_t n = 0;       // cluster size
  std::size_t edges = 0;   // intra-cluster edges
  std::size_t degree = 0;  // summed degree of members in the full graph
  std::optional<std::size_t> mincut;
};

ClusterStats cluster_stats(const Graph& g, const NodeSet& nodes);

/// Sum over clusters of e_c - r * n_c (n_c - 1) / 2. Implicit singletons
/// contribute 0. Throws std::invalid_argument unless r > 0.
double quality_cpm(const Graph& g, const Clustering& c, double resolution);

/// Newman modularity sum_c [e_c / m - (d_c / 2m)^2] with implicit singletons
/// included. Throws std::invalid_argument on an edgeless graph.
double quality_modularity(const Graph& g, const Clustering& c);

/// Reads "node_label<TAB>cluster_id" rows ('#' comments allowed).
/// Unknown label -> ReferenceError, node assigned twice -> FormatError.
Clustering load_clustering(std::istream& in, const Graph& g);

/// Writes one row per assigned node: clusters in order, members in label order.
void write_clustering(std::ostream& out, const Graph& g, const Clustering& c);

}  // namespace connmod
