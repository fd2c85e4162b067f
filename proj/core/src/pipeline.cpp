#include "connmod/pipeline.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <utility>

#include "connmod/error.hpp"
#include "connmod/mincut.hpp"
#include "connmod/parallel.hpp"

namespace connmod {

std::string to_string(Fate fate) {
  switch (fate) {
    case Fate::Extant:
      return "extant";
    case Fate::Reduced:
      return "reduced";
    case Fate::Split:
      return "split";
    case Fate::Degraded:
      return "degraded";
  }
  return "?";
}

CMStats& CMStats::operator+=(const CMStats& o) {
  subproblems += o.subproblems;
  cuts += o.cuts;
  pruned_nodes += o.pruned_nodes;
  max_depth = std::max(max_depth, o.max_depth);
  return *this;
}

namespace {

void validate(const CMParams& params) {
  if (params.min_size < 1) throw std::invalid_argument("B must be at least 1");
  params.clusterer.validate();
  if (std::holds_alternative<ExternalClusterer>(params.clusterer.kind)) {
    throw std::invalid_argument("CM reclustering needs cpm, modularity or ikc as clusterer");
  }
}

std::uint32_t min_rank(const Graph& g, const NodeSet& s) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (NodeId v : s) best = std::min(best, g.label_rank(v));
  return best;
}

void sort_sets(const Graph& g, std::vector<NodeSet>& sets) {
  std::vector<std::pair<NodeSet, std::uint32_t>> keyed;
  keyed.reserve(sets.size());
  for (auto& s : sets) {
    const auto r = min_rank(g, s);
    keyed.emplace_back(std::move(s), r);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.second < b.second;
  });
  sets.clear();
  for (auto& [s, r] : keyed) sets.push_back(std::move(s));
}

// Ids in `to` of every node of `from` (a subgraph of `to`'s root).
NodeSet map_into(const Graph& from, std::span<const NodeId> nodes, const Graph& to) {
  NodeSet out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(*to.local_id(from.origin(v)));
  std::sort(out.begin(), out.end());
  return out;
}

NodeSet all_nodes(const Graph& g) {
  NodeSet s(g.node_count());
  for (NodeId v = 0; v < s.size(); ++v) s[v] = v;
  return s;
}

}  // namespace

FilterResult filter_stage(const Clustering& c, const Graph& g, const CMParams& params) {
  FilterResult r{Clustering(c.universe()), 0, 0};
  for (const auto& cl : c.clusters()) {
    if (cl.nodes.size() < params.min_size) {
      ++r.removed_small;
      continue;
    }
    if (is_tree(induced_subgraph(g, cl.nodes))) {
      ++r.removed_trees;
      continue;
    }
    r.kept.add_cluster(cl.id, cl.nodes);
  }
  return r;
}

NodeSet prune_low_degree(const Graph& cluster, const ThresholdFn& threshold) {
  const std::size_t n = cluster.node_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> alive(n, true);
  for (NodeId v = 0; v < n; ++v) degree[v] = cluster.degree(v);
  std::size_t remaining = n;

  // Only nodes whose degree dropped in the previous round can newly fall
  // under the bound, since the bound itself never grows as n shrinks.
  NodeSet candidates = all_nodes(cluster);
  std::vector<bool> is_candidate(n, false);
  while (remaining > 0 && !candidates.empty()) {
    const double bound = threshold(remaining);
    NodeSet doomed;
    for (NodeId v : candidates) {
      if (alive[v] && static_cast<double>(degree[v]) <= bound) doomed.push_back(v);
    }
    if (doomed.empty()) break;
    for (NodeId v : doomed) alive[v] = false;
    remaining -= doomed.size();
    candidates.clear();
    for (NodeId v : doomed) {
      for (NodeId w : cluster.neighbors(v)) {
        if (!alive[w]) continue;
        --degree[w];
        if (!is_candidate[w]) {
          is_candidate[w] = true;
          candidates.push_back(w);
        }
      }
    }
    for (NodeId v : candidates) is_candidate[v] = false;
  }

  NodeSet survivors;
  survivors.reserve(remaining);
  for (NodeId v = 0; v < n; ++v) {
    if (alive[v]) survivors.push_back(v);
  }
  return survivors;
}

std::vector<NodeSet> cm_cluster(const Graph& cluster, const CMParams& params, CMStats* stats) {
  validate(params);
  CMStats local;
  std::vector<NodeSet> accepted;
  if (cluster.empty()) return accepted;

  std::vector<std::pair<Graph, std::size_t>> work;
  work.emplace_back(cluster, 0);
  while (!work.empty()) {
    auto [piece, depth] = std::move(work.back());
    work.pop_back();
    if (params.max_recursion_depth && depth > *params.max_recursion_depth) {
      throw RecursionLimitError("CM recursion exceeded depth " + std::to_string(*params.max_recursion_depth) +
                                " (" + std::to_string(accepted.size()) + " clusters accepted, " +
                                std::to_string(work.size() + 1) + " pending)");
    }
    ++local.subproblems;
    local.max_depth = std::max(local.max_depth, depth);

    const NodeSet survivors = prune_low_degree(piece, params.threshold);
    local.pruned_nodes += piece.node_count() - survivors.size();
    if (survivors.size() < std::max<std::size_t>(params.min_size, 2)) continue;
    Graph core = survivors.size() == piece.node_count() ? std::move(piece) : induced_subgraph(piece, survivors);

    const auto cut = global_min_cut(core);
    if (static_cast<double>(cut.weight) > params.threshold(core.node_count())) {
      accepted.push_back(map_into(core, all_nodes(core), cluster));
      continue;
    }

    ++local.cuts;
    std::vector<bool> in_a(core.node_count(), false);
    for (NodeId v : cut.side_a) in_a[v] = true;
    NodeSet side_b;
    for (NodeId v = 0; v < core.node_count(); ++v) {
      if (!in_a[v]) side_b.push_back(v);
    }
    for (const NodeSet* side : std::array<const NodeSet*, 2>{&cut.side_a, &side_b}) {
      const Graph half = induced_subgraph(core, *side);
      for (const auto& comp : connected_components(half)) {
        Graph component = induced_subgraph(half, comp);
        ClustererConfig config = params.clusterer;
        config.seed = derive_seed(params.clusterer.seed, component);
        const Clustering found = run_clusterer(component, config);
        for (const auto& cl : found.clusters()) {
          if (cl.nodes.size() < 2) continue;
          work.emplace_back(induced_subgraph(component, cl.nodes), depth + 1);
        }
      }
    }
  }

  sort_sets(cluster, accepted);
  if (stats) *stats += local;
  return accepted;
}

std::vector<FateRecord> classify_fate(const Clustering& input, const Clustering& output) {
  std::vector<std::size_t> surviving(input.size(), 0);
  std::vector<bool> equal(input.size(), false);
  for (const auto& cl : output.clusters()) {
    const auto owner = input.cluster_of(cl.nodes.front());
    if (!owner) throw ConsistencyError("output cluster '" + cl.id + "' is outside every input cluster");
    for (NodeId v : cl.nodes) {
      if (input.cluster_of(v) != owner) {
        throw ConsistencyError("output cluster '" + cl.id + "' spans several input clusters");
      }
    }
    ++surviving[*owner];
    equal[*owner] = cl.nodes == input[*owner].nodes;
  }
  std::vector<FateRecord> fates;
  fates.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    Fate f = Fate::Degraded;
    if (surviving[i] == 1) f = equal[i] ? Fate::Extant : Fate::Reduced;
    if (surviving[i] >= 2) f = Fate::Split;
    fates.push_back({input[i].id, f, false});
  }
  return fates;
}

double node_coverage(const Clustering& c, std::size_t total_nodes, std::size_t min_size) {
  if (total_nodes == 0) throw std::invalid_argument("node_coverage: no nodes");
  if (min_size == 0) throw std::invalid_argument("node_coverage: min_size must be >= 1");
  std::size_t covered = 0;
  for (const auto& cl : c.clusters()) {
    if (cl.nodes.size() >= min_size) covered += cl.nodes.size();
  }
  return 100.0 * static_cast<double>(covered) / static_cast<double>(total_nodes);
}

CMReport run_pipeline(const Graph& g, const CMParams& params, const std::optional<Clustering>& input) {
  validate(params);
  CMReport report;
  if (input && input->universe() != g.node_count()) {
    throw std::invalid_argument("input clustering does not match the graph");
  }
  report.input = input ? *input : run_clusterer(g, params.clusterer);

  auto filtered = filter_stage(report.input, g, params);
  report.filtered = std::move(filtered.kept);
  report.removed_small = filtered.removed_small;
  report.removed_trees = filtered.removed_trees;

  const auto& kept = report.filtered;
  std::vector<std::vector<NodeSet>> pieces(kept.size());
  std::vector<CMStats> stats(kept.size());
  parallel_for(kept.size(), params.threads, [&](std::size_t i) {
    const Graph sub = induced_subgraph(g, kept[i].nodes);
    auto found = cm_cluster(sub, params, &stats[i]);
    for (auto& s : found) s = map_into(sub, s, g);
    pieces[i] = std::move(found);
  });

  Clustering stage3(g.node_count());
  report.output = Clustering(g.node_count());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    report.stats += stats[i];
    const bool unchanged = pieces[i].size() == 1 && pieces[i][0] == kept[i].nodes;
    std::size_t k = 0;
    for (const auto& s : pieces[i]) {
      const std::string id = unchanged ? kept[i].id : kept[i].id + "." + std::to_string(k++);
      stage3.add_cluster(id, s);
      if (s.size() >= params.min_size) {
        report.output.add_cluster(id, s);
      } else {
        ++report.removed_post;
      }
    }
  }

  auto fates = classify_fate(report.input, report.output);
  for (auto& f : fates) f.removed_at_filter = !report.filtered.index_of(f.cluster_id).has_value();
  report.fates = std::move(fates);

  const auto summarize = [&](const std::string& name, const Clustering& c) {
    StageSummary s{name, c.size(), 0.0, 0.0};
    if (g.node_count() > 0) {
      s.coverage_ge2 = node_coverage(c, g.node_count(), 2);
      s.coverage_geB = node_coverage(c, g.node_count(), params.min_size);
    }
    return s;
  };
  report.stages = {summarize("input", report.input), summarize("filtered", report.filtered),
                   summarize("cm", stage3), summarize("output", report.output)};
  return report;
}

std::vector<std::string> verify_guarantee(const Graph& g, const Clustering& output, const CMParams& params,
                                          unsigned threads) {
  std::vector<char> bad(output.size(), 0);
  parallel_for(output.size(), threads, [&](std::size_t i) {
    const auto& cl = output[i];
    if (cl.nodes.size() < params.min_size || cl.nodes.size() < 2) {
      bad[i] = 1;
      return;
    }
    const auto cut = global_min_cut(induced_subgraph(g, cl.nodes));
    bad[i] = static_cast<double>(cut.weight) > params.threshold(cl.nodes.size()) ? 0 : 1;
  });
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (bad[i]) ids.push_back(output[i].id);
  }
  return ids;
}

}  // namespace connmod
