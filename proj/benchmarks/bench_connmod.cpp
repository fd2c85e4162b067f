#include <benchmark/benchmark.h>

#include <random>

#include "connmod/leiden.hpp"
#include "connmod/mincut.hpp"
#include "connmod/pipeline.hpp"

using namespace connmod;

namespace {

// `groups` dense blocks of `size` nodes with sparse noise between them.
Graph planted(std::size_t groups, std::size_t size, double p_in, double p_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in(p_in), out(p_out);
  const std::size_t n = groups * size;
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (u / size == v / size ? in(rng) : out(rng)) e.emplace_back(u, v);
  return make_graph(n, e);
}

void BM_GlobalMinCut(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = planted(2, n / 2, 0.3, 0.01, 1);
  for (auto _ : state) benchmark::DoNotOptimize(global_min_cut(g).weight);
  state.SetComplexityN(static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_GlobalMinCut)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_LeidenCpm(benchmark::State& state) {
  const Graph g = planted(static_cast<std::size_t>(state.range(0)), 40, 0.3, 0.002, 2);
  const LeidenOptions o{Quality::Cpm, 0.05, 1, 10};
  for (auto _ : state) benchmark::DoNotOptimize(cluster_leiden(g, o).size());
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_LeidenCpm)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LeidenModularity(benchmark::State& state) {
  const Graph g = planted(static_cast<std::size_t>(state.range(0)), 40, 0.3, 0.002, 3);
  const LeidenOptions o{Quality::Modularity, 1.0, 1, 10};
  for (auto _ : state) benchmark::DoNotOptimize(cluster_leiden(g, o).size());
}
BENCHMARK(BM_LeidenModularity)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CmPipeline(benchmark::State& state) {
  const Graph g = planted(60, 40, 0.25, 0.003, 4);
  CMParams p;
  p.clusterer = ClustererConfig{CpmClusterer{0.01}, 1};
  p.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(g, p).output.size());
}
BENCHMARK(BM_CmPipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
