#include "connmod/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "connmod/error.hpp"

namespace connmod {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

std::vector<std::size_t> build_offsets(std::size_t n, const std::vector<Edge>& sorted_arcs) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& [u, v] : sorted_arcs) ++offsets[u + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return offsets;
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da != db) return da;
  if (da) {
    const auto sa = strip_zeros(a);
    const auto sb = strip_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

LabelTable::LabelTable(std::vector<std::string> names) : names_(std::move(names)), rank_(names_.size()) {
  std::vector<NodeId> order(names_.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return label_less(names_[a], names_[b]); });
  for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<std::uint32_t>(i);
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<NodeId>(i)).second) {
      throw std::invalid_argument("duplicate node label '" + names_[i] + "'");
    }
  }
}

std::optional<NodeId> LabelTable::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph::Graph()
    : labels_(std::make_shared<const LabelTable>(std::vector<std::string>{})), offsets_(1, 0) {}

Graph::Graph(std::shared_ptr<const LabelTable> labels, std::vector<NodeId> origin,
             std::vector<std::size_t> offsets, std::vector<NodeId> targets)
    : labels_(std::move(labels)),
      origin_(std::move(origin)),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)) {}

Graph::Graph(std::vector<std::string> labels, std::span<const Edge> edges)
    : labels_(std::make_shared<const LabelTable>(std::move(labels))) {
  const std::size_t n = labels_->size();
  origin_.resize(n);
  std::iota(origin_.begin(), origin_.end(), NodeId{0});

  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  offsets_ = build_offsets(n, arcs);
  targets_.reserve(arcs.size());
  for (const auto& arc : arcs) targets_.push_back(arc.second);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  const auto root = labels_->find(label);
  if (!root) return std::nullopt;
  return local_id(*root);
}

std::optional<NodeId> Graph::local_id(NodeId root_id) const {
  const auto it = std::lower_bound(origin_.begin(), origin_.end(), root_id);
  if (it == origin_.end() || *it != root_id) return std::nullopt;
  return static_cast<NodeId>(it - origin_.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.targets_ != b.targets_ || a.offsets_ != b.offsets_) {
    return false;
  }
  for (NodeId v = 0; v < a.node_count(); ++v) {
    if (a.label(v) != b.label(v)) return false;
  }
  return true;
}

Graph make_graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Graph(std::move(labels), edges);
}

LoadResult load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  LoadResult result;

  const auto intern = [&](const std::string& token) {
    const auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw ParseError(line_no, "expected two endpoint labels");
    }
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (u == v) {
      ++result.self_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  result.duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  result.graph = Graph(std::move(labels), edges);
  return result;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rows;
  rows.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) {
    auto ru = g.label_rank(u);
    auto rv = g.label_rank(v);
    if (rv < ru) std::swap(ru, rv);
    rows.emplace_back(ru, rv);
  }
  std::sort(rows.begin(), rows.end());
  const auto& table = *g.label_table();
  // rank -> root id, restricted to ranks that occur
  std::unordered_map<std::uint32_t, NodeId> root_of_rank;
  for (NodeId v = 0; v < g.node_count(); ++v) root_of_rank.emplace(g.label_rank(v), g.origin(v));
  for (const auto& [ru, rv] : rows) {
    out << table.name(root_of_rank.at(ru)) << '\t' << table.name(root_of_rank.at(rv)) << '\n';
  }
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  NodeSet sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("induced_subgraph: duplicate node id");
  }
  if (!sorted.empty() && sorted.back() >= g.node_count()) {
    throw std::invalid_argument("induced_subgraph: node id out of range");
  }

  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.node_count(), kAbsent);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<NodeId>(i);

  std::vector<NodeId> origin(sorted.size());
  std::vector<std::size_t> offsets(sorted.size() + 1, 0);
  std::vector<NodeId> targets;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const NodeId v = sorted[i];
    origin[i] = g.origin(v);
    for (NodeId w : g.neighbors(v)) {
      if (local[w] != kAbsent) targets.push_back(local[w]);
    }
    offsets[i + 1] = targets.size();
  }
  return Graph(g.label_table(), std::move(origin), std::move(offsets), std::move(targets));
}

std::vector<NodeSet> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeSet> comps;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    NodeSet comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }

  std::vector<std::uint32_t> min_rank(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (NodeId v : comps[i]) best = std::min(best, g.label_rank(v));
    min_rank[i] = best;
  }
  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (comps[a].size() != comps[b].size()) return comps[a].size() > comps[b].size();
    return min_rank[a] < min_rank[b];
  });
  std::vector<NodeSet> sorted;
  sorted.reserve(comps.size());
  for (std::size_t i : order) sorted.push_back(std::move(comps[i]));
  return sorted;
}

bool is_connected(const Graph& g) {
  return g.node_count() <= 1 || connected_components(g).size() == 1;
}

bool is_tree(const Graph& g) {
  if (g.empty()) throw std::invalid_argument("is_tree: empty graph");
  return g.edge_count() + 1 == g.node_count() && is_connected(g);
}

std::vector<std::uint32_t> core_decomposition(const Graph& g) {
  // Batagelj-Zaversnik: nodes kept sorted by current degree in `order`,
  // `bucket_start[d]` is the first position holding degree d.
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bucket_start(max_deg + 2, 0);
  for (NodeId v = 0; v < n; ++v) ++bucket_start[deg[v] + 1];
  std::partial_sum(bucket_start.begin(), bucket_start.end(), bucket_start.begin());
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  {
    auto next = bucket_start;
    for (NodeId v = 0; v < n; ++v) {
      pos[v] = next[deg[v]]++;
      order[pos[v]] = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId w : g.neighbors(v)) {
      if (deg[w] > deg[v]) {
        const std::uint32_t dw = deg[w];
        const std::size_t pw = pos[w];
        const std::size_t first = bucket_start[dw];
        const NodeId u = order[first];
        if (u != w) {
          std::swap(order[pw], order[first]);
          pos[u] = pw;
          pos[w] = first;
        }
        ++bucket_start[dw];
        --deg[w];
      }
    }
  }
  return deg;
}

std::uint64_t fingerprint(const Graph& g) {
  // splitmix64 finalizer chained over root ids
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ g.node_count();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint64_t z = h + g.origin(v) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

}  // namespace connmod
