#include "connmod/mincut.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "connmod/error.hpp"

namespace connmod {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }

  NodeId find(NodeId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<NodeId> parent_;
};

// Contracted multigraph with merged parallel edges.
struct WeightedGraph {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<std::uint64_t> weights;

  std::size_t node_count() const { return offsets.size() - 1; }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  w.offsets.assign(g.node_count() + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId u : g.neighbors(v)) {
      w.targets.push_back(u);
      w.weights.push_back(1);
    }
    w.offsets[v + 1] = w.targets.size();
  }
  return w;
}

WeightedGraph contract(const WeightedGraph& g, UnionFind& uf, std::vector<NodeSet>& members) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> new_id(n, 0);
  std::vector<NodeId> reps;
  for (NodeId v = 0; v < n; ++v) {
    if (uf.find(v) == v) {
      new_id[v] = static_cast<NodeId>(reps.size());
      reps.push_back(v);
    }
  }
  std::vector<NodeSet> new_members(reps.size());
  for (NodeId v = 0; v < n; ++v) {
    auto& dst = new_members[new_id[uf.find(v)]];
    dst.insert(dst.end(), members[v].begin(), members[v].end());
  }
  members = std::move(new_members);

  std::vector<std::tuple<NodeId, NodeId, std::uint64_t>> arcs;
  arcs.reserve(g.targets.size());
  for (NodeId v = 0; v < n; ++v) {
    const NodeId a = new_id[uf.find(v)];
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const NodeId b = new_id[uf.find(g.targets[e])];
      if (a != b) arcs.emplace_back(a, b, g.weights[e]);
    }
  }
  std::sort(arcs.begin(), arcs.end());

  WeightedGraph out;
  out.offsets.assign(reps.size() + 1, 0);
  for (std::size_t i = 0; i < arcs.size();) {
    const auto [a, b, w0] = arcs[i];
    std::uint64_t w = 0;
    for (; i < arcs.size() && std::get<0>(arcs[i]) == a && std::get<1>(arcs[i]) == b; ++i) {
      w += std::get<2>(arcs[i]);
    }
    out.targets.push_back(b);
    out.weights.push_back(w);
    ++out.offsets[a + 1];
  }
  std::partial_sum(out.offsets.begin(), out.offsets.end(), out.offsets.begin());
  return out;
}

CutResult finish(const Graph& g, std::size_t weight, NodeSet side) {
  std::sort(side.begin(), side.end());
  NodeSet other;
  other.reserve(g.node_count() - side.size());
  {
    std::size_t i = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (i < side.size() && side[i] == v) {
        ++i;
      } else {
        other.push_back(v);
      }
    }
  }
  const auto min_rank = [&](const NodeSet& s) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (NodeId v : s) best = std::min(best, g.label_rank(v));
    return best;
  };
  if (other.size() < side.size() || (other.size() == side.size() && min_rank(other) < min_rank(side))) {
    side.swap(other);
  }
  CutResult result;
  result.weight = weight;
  result.cut_edges = crossing_edges(g, side);
  result.side_a = std::move(side);
  return result;
}

}  // namespace

std::vector<Edge> crossing_edges(const Graph& g, const NodeSet& side) {
  std::vector<bool> inside(g.node_count(), false);
  for (NodeId v : side) inside[v] = true;
  std::vector<Edge> out;
  for (NodeId v : side) {
    for (NodeId w : g.neighbors(v)) {
      if (!inside[w]) out.emplace_back(v, w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CutResult global_min_cut(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("global_min_cut: graph needs at least 2 nodes");

  auto comps = connected_components(g);
  if (comps.size() > 1) return finish(g, 0, comps.back());

  NodeId min_v = 0;
  for (NodeId v = 1; v < n; ++v) {
    if (g.degree(v) < g.degree(min_v)) min_v = v;
  }
  std::uint64_t lambda = g.degree(min_v);
  NodeSet best{min_v};

  WeightedGraph wg = from_graph(g);
  std::vector<NodeSet> members(n);
  for (NodeId v = 0; v < n; ++v) members[v] = {v};

  using Entry = std::pair<std::uint64_t, NodeId>;
  std::vector<std::uint64_t> attach;
  std::vector<bool> visited;

  // A connected graph has cut weight >= 1, so the trivial bound 1 is optimal.
  while (lambda > 1 && wg.node_count() > 1) {
    const std::size_t cur = wg.node_count();
    UnionFind uf(cur);
    attach.assign(cur, 0);
    visited.assign(cur, false);
    std::priority_queue<Entry> heap;
    heap.emplace(0, 0);
    NodeId last = 0;
    NodeId second_last = 0;
    std::size_t scanned = 0;
    while (!heap.empty()) {
      const auto [r, v] = heap.top();
      heap.pop();
      if (visited[v] || r != attach[v]) continue;
      visited[v] = true;
      second_last = last;
      last = v;
      ++scanned;
      for (std::size_t e = wg.offsets[v]; e < wg.offsets[v + 1]; ++e) {
        const NodeId w = wg.targets[e];
        if (visited[w]) continue;
        attach[w] += wg.weights[e];
        if (attach[w] >= lambda) uf.unite(v, w);
        heap.emplace(attach[w], w);
      }
    }
    if (scanned != cur) throw std::logic_error("global_min_cut: contracted graph disconnected");

    // attach[last] is the weighted degree of `last`: the cut of the phase.
    if (attach[last] < lambda) {
      lambda = attach[last];
      best = members[last];
    }
    uf.unite(second_last, last);
    wg = contract(wg, uf, members);
  }
  return finish(g, static_cast<std::size_t>(lambda), std::move(best));
}

CutResult brute_force_min_cut(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("brute_force_min_cut: graph needs at least 2 nodes");
  if (n > 20) throw SizeLimitError("brute_force_min_cut: at most 20 nodes supported");

  std::vector<std::uint32_t> adj(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v)) adj[v] |= 1u << w;
  }
  const auto ranks_of = [&](std::uint32_t mask) {
    std::vector<std::uint32_t> r;
    for (NodeId v = 0; v < n; ++v) {
      if (mask >> v & 1u) r.push_back(g.label_rank(v));
    }
    std::sort(r.begin(), r.end());
    return r;
  };

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::size_t best_w = std::numeric_limits<std::size_t>::max();
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::size_t w = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (mask >> v & 1u) w += static_cast<std::size_t>(std::popcount(adj[v] & ~mask & full));
    }
    if (w < best_w) {
      best_w = w;
      best_mask = mask;
      continue;
    }
    if (w > best_w) continue;
    const int pc = std::popcount(mask);
    const int best_pc = std::popcount(best_mask);
    if (pc < best_pc || (pc == best_pc && ranks_of(mask) < ranks_of(best_mask))) best_mask = mask;
  }

  NodeSet side;
  for (NodeId v = 0; v < n; ++v) {
    if (best_mask >> v & 1u) side.push_back(v);
  }
  CutResult result;
  result.weight = best_w;
  result.cut_edges = crossing_edges(g, side);
  result.side_a = std::move(side);
  return result;
}

}  // namespace connmod
