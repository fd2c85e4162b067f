#include "connmod/clustering.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "connmod/error.hpp"

namespace connmod {

Clustering::Clustering(std::size_t universe) : cluster_of_(universe, kUnassigned) {}

Clustering Clustering::from_membership(std::span<const std::uint32_t> membership) {
  std::unordered_map<std::uint32_t, NodeSet> groups;
  std::vector<std::uint32_t> first_seen;
  for (NodeId v = 0; v < membership.size(); ++v) {
    auto [it, inserted] = groups.try_emplace(membership[v]);
    if (inserted) first_seen.push_back(membership[v]);
    it->second.push_back(v);
  }
  Clustering c(membership.size());
  std::size_t next = 0;
  for (std::uint32_t label : first_seen) {
    auto& nodes = groups[label];
    if (nodes.size() < 2) continue;
    c.add_cluster(std::to_string(next++), std::move(nodes));
  }
  return c;
}

void Clustering::add_cluster(std::string id, NodeSet nodes) {
  if (nodes.empty()) throw std::invalid_argument("cluster '" + id + "' is empty");
  if (index_of(id)) throw std::invalid_argument("duplicate cluster id '" + id + "'");
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId v = nodes[i];
    if (v >= cluster_of_.size()) throw std::invalid_argument("cluster node out of range");
    if ((i > 0 && nodes[i - 1] == v) || cluster_of_[v] != kUnassigned) {
      throw std::invalid_argument("node assigned to more than one cluster");
    }
  }
  const auto idx = static_cast<std::uint32_t>(clusters_.size());
  for (NodeId v : nodes) cluster_of_[v] = idx;
  id_index_.emplace(id, idx);
  clusters_.push_back({std::move(id), std::move(nodes)});
}

std::optional<std::size_t> Clustering::cluster_of(NodeId v) const {
  if (v >= cluster_of_.size() || cluster_of_[v] == kUnassigned) return std::nullopt;
  return cluster_of_[v];
}

std::optional<std::size_t> Clustering::index_of(const std::string& id) const {
  const auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Clustering::assigned_count() const {
  std::size_t total = 0;
  for (const auto& cl : clusters_) total += cl.nodes.size();
  return total;
}

std::vector<std::uint32_t> Clustering::materialized_membership() const {
  std::vector<std::uint32_t> out(cluster_of_.size());
  auto next = static_cast<std::uint32_t>(clusters_.size());
  for (std::size_t v = 0; v < out.size(); ++v) {
    out[v] = cluster_of_[v] == kUnassigned ? next++ : cluster_of_[v];
  }
  return out;
}

ClusterStats cluster_stats(const Graph& g, const NodeSet& nodes) {
  std::vector<bool> inside(g.node_count(), false);
  for (NodeId v : nodes) inside[v] = true;
  ClusterStats s;
  s.n = nodes.size();
  std::size_t arcs = 0;
  for (NodeId v : nodes) {
    s.degree += g.degree(v);
    for (NodeId w : g.neighbors(v)) arcs += inside[w] ? 1 : 0;
  }
  s.edges = arcs / 2;
  return s;
}

namespace {

void require_universe(const Graph& g, const Clustering& c) {
  if (c.universe() != g.node_count()) {
    throw std::invalid_argument("clustering does not cover this graph's nodes");
  }
}

// Per cluster (intra edges, summed degree), indexed like c.clusters().
std::vector<std::pair<std::size_t, std::size_t>> intra_and_degree(const Graph& g, const Clustering& c) {
  std::vector<std::pair<std::size_t, std::size_t>> acc(c.size(), {0, 0});
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto cv = c.cluster_of(v);
    if (!cv) continue;
    acc[*cv].second += g.degree(v);
    for (NodeId w : g.neighbors(v)) {
      if (v < w && c.cluster_of(w) == cv) ++acc[*cv].first;
    }
  }
  return acc;
}

}  // namespace

double quality_cpm(const Graph& g, const Clustering& c, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("CPM resolution must be positive");
  require_universe(g, c);
  const auto acc = intra_and_degree(g, c);
  double q = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double n = static_cast<double>(c[i].nodes.size());
    q += static_cast<double>(acc[i].first) - resolution * n * (n - 1.0) / 2.0;
  }
  return q;
}

double quality_modularity(const Graph& g, const Clustering& c) {
  if (g.edge_count() == 0) throw std::invalid_argument("modularity undefined on an edgeless graph");
  require_universe(g, c);
  const auto acc = intra_and_degree(g, c);
  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (const auto& [edges, degree] : acc) {
    const double share = static_cast<double>(degree) / (2.0 * m);
    q += static_cast<double>(edges) / m - share * share;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (c.cluster_of(v)) continue;
    const double share = static_cast<double>(g.degree(v)) / (2.0 * m);
    q -= share * share;
  }
  return q;
}

Clustering load_clustering(std::istream& in, const Graph& g) {
  std::map<std::string, NodeSet> groups;
  std::vector<std::string> order;
  std::vector<std::size_t> assigned_line(g.node_count(), 0);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string node, cluster, extra;
    if (!(tokens >> node >> cluster) || (tokens >> extra)) {
      throw ParseError(line_no, "expected 'node<TAB>cluster_id'");
    }
    const auto v = g.find(node);
    if (!v) throw ReferenceError(line_no, "unknown node label '" + node + "'");
    if (assigned_line[*v] != 0) {
      throw FormatError(line_no, "node '" + node + "' already assigned on line " +
                                     std::to_string(assigned_line[*v]));
    }
    assigned_line[*v] = line_no;
    auto [it, inserted] = groups.try_emplace(cluster);
    if (inserted) order.push_back(cluster);
    it->second.push_back(*v);
  }

  Clustering c(g.node_count());
  for (const auto& id : order) c.add_cluster(id, std::move(groups[id]));
  return c;
}

void write_clustering(std::ostream& out, const Graph& g, const Clustering& c) {
  for (const auto& cl : c.clusters()) {
    NodeSet nodes = cl.nodes;
    std::sort(nodes.begin(), nodes.end(),
              [&](NodeId a, NodeId b) { return g.label_rank(a) < g.label_rank(b); });
    for (NodeId v : nodes) out << g.label(v) << '\t' << cl.id << '\n';
  }
}

}  // namespace connmod
