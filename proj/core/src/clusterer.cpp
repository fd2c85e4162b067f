#include "connmod/clusterer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "connmod/leiden.hpp"

namespace connmod {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string ClustererConfig::describe() const {
  return std::visit(overloaded{
                        [](const CpmClusterer& c) {
                          std::ostringstream s;
                          s << "cpm(r=" << c.resolution << ")";
                          return s.str();
                        },
                        [](const ModularityClusterer&) { return std::string("modularity"); },
                        [](const IkcClusterer& c) { return "ikc(k=" + std::to_string(c.k) + ")"; },
                        [](const ExternalClusterer& c) { return "external(" + c.path + ")"; },
                    },
                    kind);
}

void ClustererConfig::validate() const {
  if (const auto* cpm = std::get_if<CpmClusterer>(&kind); cpm && !(cpm->resolution > 0.0)) {
    throw std::invalid_argument("CPM resolution must be positive");
  }
  if (const auto* ikc = std::get_if<IkcClusterer>(&kind); ikc && ikc->k < 1) {
    throw std::invalid_argument("IKC k must be at least 1");
  }
}

Clustering cluster_ikc(const Graph& g, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("IKC k must be at least 1");
  Clustering result(g.node_count());
  std::vector<bool> removed(g.node_count(), false);
  std::size_t next_id = 0;

  while (true) {
    NodeSet remaining;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (!removed[v]) remaining.push_back(v);
    }
    if (remaining.empty()) break;
    const Graph rest = induced_subgraph(g, remaining);
    const auto core = core_decomposition(rest);
    const std::uint32_t top = *std::max_element(core.begin(), core.end());
    if (top < k) break;

    NodeSet top_core;
    for (NodeId v = 0; v < rest.node_count(); ++v) {
      if (core[v] == top) top_core.push_back(v);
    }
    // Components of the top core are pairwise non-adjacent, so removing one
    // leaves the others' core numbers at `top`: emit them all in order.
    const Graph top_graph = induced_subgraph(rest, top_core);
    for (const auto& comp : connected_components(top_graph)) {
      NodeSet members;
      members.reserve(comp.size());
      for (NodeId v : comp) {
        const NodeId original = remaining[top_core[v]];
        members.push_back(original);
        removed[original] = true;
      }
      result.add_cluster(std::to_string(next_id++), std::move(members));
    }
  }
  return result;
}

Clustering run_clusterer(const Graph& g, const ClustererConfig& config) {
  config.validate();
  return std::visit(overloaded{
                        [&](const CpmClusterer& c) {
                          return cluster_leiden(g, {Quality::Cpm, c.resolution, config.seed});
                        },
                        [&](const ModularityClusterer&) {
                          return cluster_leiden(g, {Quality::Modularity, 1.0, config.seed});
                        },
                        [&](const IkcClusterer& c) { return cluster_ikc(g, c.k); },
                        [&](const ExternalClusterer& c) {
                          std::ifstream in(c.path);
                          if (!in) throw std::runtime_error("cannot open clustering file " + c.path);
                          return load_clustering(in, g);
                        },
                    },
                    config.kind);
}

std::uint64_t derive_seed(std::uint64_t root_seed, const Graph& subgraph) {
  std::uint64_t z = root_seed ^ fingerprint(subgraph);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace connmod
