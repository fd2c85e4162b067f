#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace connmod {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Sorted, duplicate-free list of node ids of one graph.
using NodeSet = std::vector<NodeId>;

/// Strict weak order on external labels: all-digit labels compare numerically
/// and sort before any other label; everything else compares bytewise.
bool label_less(std::string_view a, std::string_view b);

/// External labels of a root graph together with their position in label order.
/// Shared (immutable) between a graph and every subgraph induced from it.
class LabelTable {
 public:
  explicit LabelTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId root_id) const { return names_[root_id]; }
  std::uint32_t rank(NodeId root_id) const { return rank_[root_id]; }
  std::optional<NodeId> find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> rank_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Undirected simple graph over dense ids [0, n) stored as sorted CSR adjacency.
///
/// Every graph keeps the mapping to the ids of the root graph it was induced
/// from, so labels survive any number of induced_subgraph() calls without
/// copying strings. Immutable after construction.
class Graph {
 public:
  Graph();

  /// Builds a root graph. `edges` may contain loops and duplicates; both are
  /// dropped. Endpoints must be < labels.size().
  Graph(std::vector<std::string> labels, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool empty() const { return node_count() == 0; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Id of `v` in the root graph.
  NodeId origin(NodeId v) const { return origin_[v]; }
  const std::string& label(NodeId v) const { return labels_->name(origin_[v]); }
  std::uint32_t label_rank(NodeId v) const { return labels_->rank(origin_[v]); }
  std::optional<NodeId> find(std::string_view label) const;
  /// Local id of the node whose root id is `root_id`, if present.
  std::optional<NodeId> local_id(NodeId root_id) const;

  const std::shared_ptr<const LabelTable>& label_table() const { return labels_; }

  /// All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  friend Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

  Graph(std::shared_ptr<const LabelTable> labels, std::vector<NodeId> origin,
        std::vector<std::size_t> offsets, std::vector<NodeId> targets);

  std::shared_ptr<const LabelTable> labels_;
  std::vector<NodeId> origin_;  // strictly increasing
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Convenience constructor for numbered graphs: node i gets label "i".
Graph make_graph(std::size_t n, std::span<const Edge> edges);

struct LoadResult {
  Graph graph;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped. Throws ParseError on a line without exactly two tokens.
LoadResult load_edge_list(std::istream& in);

/// Writes "u\tv" per edge with u before v in label order, rows sorted.
void write_edge_list(std::ostream& out, const Graph& g);

/// Subgraph on exactly `nodes` (any order, duplicates rejected) with every
/// edge of `g` internal to them. Local ids follow increasing parent id.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Maximal connected node sets, ordered by decreasing size and then by the
/// smallest contained label.
std::vector<NodeSet> connected_components(const Graph& g);

bool is_connected(const Graph& g);

/// Connected with exactly n - 1 edges. Throws std::invalid_argument on an
/// empty graph.
bool is_tree(const Graph& g);

/// k-core numbers by bucket-based minimum-degree peeling (O(n + m)).
std::vector<std::uint32_t> core_decomposition(const Graph& g);

/// Deterministic 64-bit fingerprint of the root ids of a graph's nodes.
std::uint64_t fingerprint(const Graph& g);

}  // namespace connmod
