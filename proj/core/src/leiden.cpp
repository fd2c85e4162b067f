#include "connmod/leiden.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace connmod {

namespace {

using Membership = std::vector<std::uint32_t>;

// Weighted graph of one aggregation level. Adjacency holds no self loops;
// weight inside an aggregate node lives in self_weight.
struct LevelGraph {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> node_weight;
  std::vector<double> self_weight;

  std::size_t size() const { return node_weight.size(); }
};

LevelGraph base_level(const Graph& g, Quality quality) {
  LevelGraph lg;
  const std::size_t n = g.node_count();
  lg.offsets.assign(n + 1, 0);
  lg.node_weight.resize(n);
  lg.self_weight.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v)) {
      lg.targets.push_back(w);
      lg.weights.push_back(1.0);
    }
    lg.offsets[v + 1] = lg.targets.size();
    lg.node_weight[v] = quality == Quality::Cpm ? 1.0 : static_cast<double>(g.degree(v));
  }
  return lg;
}

void shuffle(std::vector<std::uint32_t>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng() % i;
    std::swap(items[i - 1], items[j]);
  }
}

std::vector<std::uint32_t> random_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);
  return order;
}

// Relabels communities 0..k-1 by first appearance; returns k.
std::size_t compact(Membership& membership) {
  // ids may exceed the membership length right after aggregation
  const std::uint32_t top = membership.empty() ? 0 : *std::max_element(membership.begin(), membership.end());
  std::vector<std::uint32_t> remap(static_cast<std::size_t>(top) + 1, static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (auto& c : membership) {
    if (remap[c] == static_cast<std::uint32_t>(-1)) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

// Sparse accumulator of edge weight from one node into neighbouring groups.
class NeighborWeights {
 public:
  explicit NeighborWeights(std::size_t n) : weight_(n, 0.0), seen_(n, false) {}

  void add(std::uint32_t group, double w) {
    if (!seen_[group]) {
      seen_[group] = true;
      touched_.push_back(group);
    }
    weight_[group] += w;
  }
  double operator[](std::uint32_t group) const { return weight_[group]; }
  const std::vector<std::uint32_t>& touched() const { return touched_; }

  void clear() {
    for (auto g : touched_) {
      weight_[g] = 0.0;
      seen_[g] = false;
    }
    touched_.clear();
  }

 private:
  std::vector<double> weight_;
  std::vector<bool> seen_;
  std::vector<std::uint32_t> touched_;
};

// Queue-based local moving. Membership ids must be < lg.size().
bool local_move(const LevelGraph& lg, Membership& comm, double gamma, std::mt19937_64& rng) {
  const std::size_t n = lg.size();
  std::vector<double> comm_weight(n, 0.0);
  std::vector<std::uint32_t> comm_size(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    comm_weight[comm[v]] += lg.node_weight[v];
    ++comm_size[comm[v]];
  }
  std::vector<std::uint32_t> empty;
  for (std::size_t c = n; c-- > 0;) {
    if (comm_size[c] == 0) empty.push_back(static_cast<std::uint32_t>(c));
  }

  std::deque<std::uint32_t> queue;
  for (auto v : random_order(n, rng)) queue.push_back(v);
  std::vector<bool> queued(n, true);
  NeighborWeights to(n);
  bool changed = false;

  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    queued[v] = false;

    const std::uint32_t current = comm[v];
    const double wv = lg.node_weight[v];
    for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
      to.add(comm[lg.targets[e]], lg.weights[e]);
    }
    comm_weight[current] -= wv;
    const double stay_gain = to[current] - gamma * wv * comm_weight[current];

    std::uint32_t best = current;
    double best_gain = stay_gain;
    bool found = false;
    for (auto c : to.touched()) {
      if (c == current) continue;
      const double gain = to[c] - gamma * wv * comm_weight[c];
      if (!found || gain > best_gain || (gain == best_gain && c < best)) {
        best = c;
        best_gain = gain;
        found = true;
      }
    }
    if (comm_size[current] > 1 && !empty.empty()) {
      const std::uint32_t c = empty.back();
      if (!found || 0.0 > best_gain || (0.0 == best_gain && c < best)) {
        best = c;
        best_gain = 0.0;
        found = true;
      }
    }

    if (found && best_gain > stay_gain + kMoveTolerance) {
      if (comm_size[best] == 0) empty.pop_back();
      --comm_size[current];
      if (comm_size[current] == 0) empty.push_back(current);
      ++comm_size[best];
      comm_weight[best] += wv;
      comm[v] = best;
      changed = true;
      for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
        const auto w = lg.targets[e];
        if (!queued[w] && comm[w] != best) {
          queued[w] = true;
          queue.push_back(w);
        }
      }
    } else {
      comm_weight[current] += wv;
    }
    to.clear();
  }
  return changed;
}

// Splits every community into sub-communities that are well connected to
// the rest of it, merging singletons greedily by best non-negative gain.
Membership refine(const LevelGraph& lg, const Membership& comm, double gamma, std::mt19937_64& rng) {
  const std::size_t n = lg.size();
  std::vector<double> comm_weight(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) comm_weight[comm[v]] += lg.node_weight[v];

  Membership refined(n);
  std::iota(refined.begin(), refined.end(), 0u);
  std::vector<double> sub_weight(lg.node_weight);
  std::vector<std::uint32_t> sub_size(n, 1);
  // weight from each sub-community to the rest of its community
  std::vector<double> external(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
      if (comm[lg.targets[e]] == comm[v]) external[v] += lg.weights[e];
    }
  }

  NeighborWeights to(n);
  for (auto v : random_order(n, rng)) {
    if (sub_size[refined[v]] != 1) continue;
    const double wv = lg.node_weight[v];
    const double total = comm_weight[comm[v]];
    if (external[v] < gamma * wv * (total - wv)) continue;

    for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
      const auto w = lg.targets[e];
      if (comm[w] == comm[v]) to.add(refined[w], lg.weights[e]);
    }
    const std::uint32_t own = refined[v];
    std::uint32_t best = own;
    double best_gain = 0.0;
    for (auto t : to.touched()) {
      if (t == own) continue;
      if (external[t] < gamma * sub_weight[t] * (total - sub_weight[t])) continue;
      const double gain = to[t] - gamma * wv * sub_weight[t];
      if (gain > best_gain + kMoveTolerance || (best != own && gain == best_gain && t < best)) {
        best = t;
        best_gain = gain;
      }
    }
    if (best != own) {
      external[best] += external[own] - 2.0 * to[best];
      sub_weight[best] += wv;
      ++sub_size[best];
      sub_size[own] = 0;
      sub_weight[own] = 0.0;
      refined[v] = best;
    }
    to.clear();
  }
  return refined;
}

// Collapses each group of `groups` (ids 0..k-1) into one node.
LevelGraph aggregate(const LevelGraph& lg, const Membership& groups, std::size_t k) {
  LevelGraph out;
  out.node_weight.assign(k, 0.0);
  out.self_weight.assign(k, 0.0);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> arcs;
  for (std::size_t v = 0; v < lg.size(); ++v) {
    const auto a = groups[v];
    out.node_weight[a] += lg.node_weight[v];
    out.self_weight[a] += lg.self_weight[v];
    for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
      const auto b = groups[lg.targets[e]];
      if (a == b) {
        out.self_weight[a] += lg.weights[e] / 2.0;
      } else {
        arcs.emplace_back(a, b, lg.weights[e]);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end());
  out.offsets.assign(k + 1, 0);
  for (std::size_t i = 0; i < arcs.size();) {
    const auto a = std::get<0>(arcs[i]);
    const auto b = std::get<1>(arcs[i]);
    double w = 0.0;
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

std::size_t count_groups(const Membership& m) {
  std::vector<bool> used(m.size(), false);
  std::size_t k = 0;
  for (auto c : m) {
    if (!used[c]) {
      used[c] = true;
      ++k;
    }
  }
  return k;
}

// One Leiden iteration starting from `membership` on the base level.
void leiden_pass(const LevelGraph& base, Membership& membership, double gamma, std::mt19937_64& rng) {
  LevelGraph level = base;
  Membership comm = membership;
  compact(comm);
  std::vector<std::uint32_t> level_of(base.size());
  std::iota(level_of.begin(), level_of.end(), 0u);

  while (true) {
    local_move(level, comm, gamma, rng);
    if (count_groups(comm) == level.size()) break;

    Membership groups = refine(level, comm, gamma, rng);
    std::size_t k = compact(groups);
    if (k == level.size()) {
      groups = comm;
      k = compact(groups);
    }

    Membership next_comm(k);
    for (std::size_t v = 0; v < level.size(); ++v) next_comm[groups[v]] = comm[v];
    for (auto& l : level_of) l = groups[l];
    level = aggregate(level, groups, k);
    comm = std::move(next_comm);
    compact(comm);
  }

  for (std::size_t v = 0; v < base.size(); ++v) membership[v] = comm[level_of[v]];
  compact(membership);
}

// Relabels each community's connected pieces as separate communities.
bool split_disconnected(const LevelGraph& lg, Membership& comm) {
  const std::size_t n = lg.size();
  const std::size_t before = count_groups(comm);
  Membership piece(n, static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (piece[s] != static_cast<std::uint32_t>(-1)) continue;
    piece[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t e = lg.offsets[v]; e < lg.offsets[v + 1]; ++e) {
        const auto w = lg.targets[e];
        if (comm[w] == comm[v] && piece[w] == static_cast<std::uint32_t>(-1)) {
          piece[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (next == before) return false;
  comm = std::move(piece);
  return true;
}

}  // namespace

Clustering cluster_leiden(const Graph& g, const LeidenOptions& options) {
  if (options.quality == Quality::Cpm && !(options.resolution > 0.0)) {
    throw std::invalid_argument("CPM resolution must be positive");
  }
  const std::size_t n = g.node_count();
  if (n == 0) return Clustering(0);

  double gamma = options.resolution;
  if (options.quality == Quality::Modularity) {
    if (g.edge_count() == 0) return Clustering(n);
    gamma = 1.0 / (2.0 * static_cast<double>(g.edge_count()));
  }

  std::mt19937_64 rng(options.seed);
  const LevelGraph base = base_level(g, options.quality);
  Membership membership(n);
  std::iota(membership.begin(), membership.end(), 0u);

  for (int it = 0; it < options.max_iterations; ++it) {
    Membership before = membership;
    leiden_pass(base, membership, gamma, rng);
    compact(before);
    if (before == membership) break;
  }

  while (true) {
    const bool moved = local_move(base, membership, gamma, rng);
    const bool split = split_disconnected(base, membership);
    if (!moved && !split) break;
  }
  compact(membership);
  return Clustering::from_membership(membership);
}

}  // namespace connmod
