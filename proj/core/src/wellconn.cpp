#include "connmod/wellconn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "connmod/mincut.hpp"
#include "connmod/parallel.hpp"

namespace connmod {

ThresholdFn ThresholdFn::traag_linear(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("Traag threshold needs r > 0");
  return ThresholdFn(Kind::TraagLinear, r);
}

ThresholdFn ThresholdFn::custom(double a, double b, double c) {
  for (double x : {a, b, c}) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("custom threshold coefficients must be finite and >= 0");
    }
  }
  return ThresholdFn(Kind::Custom, a, b, c);
}

double ThresholdFn::operator()(std::size_t n) const {
  if (n < 1) throw std::invalid_argument("threshold needs n >= 1");
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::Log10:
      return std::log10(x);
    case Kind::Log2:
      return std::log2(x);
    case Kind::SqrtDiv5:
      return std::sqrt(x) / 5.0;
    case Kind::TraagLinear:
      return a_ * (x - 1.0);
    case Kind::Custom:
      return a_ * x + b_ * std::log10(x) + c_;
  }
  throw std::logic_error("unknown threshold kind");
}

std::string ThresholdFn::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Log10:
      return "log10";
    case Kind::Log2:
      return "log2";
    case Kind::SqrtDiv5:
      return "sqrt/5";
    case Kind::TraagLinear:
      s << "traag(r=" << a_ << ")";
      return s.str();
    case Kind::Custom:
      s << "custom(" << a_ << "*n+" << b_ << "*log10(n)+" << c_ << ")";
      return s.str();
  }
  return "?";
}

ClusterProfile is_well_connected(const Graph& cluster, const ThresholdFn& threshold) {
  if (cluster.empty()) throw std::invalid_argument("is_well_connected: empty cluster");
  ClusterProfile p;
  p.n = cluster.node_count();
  p.is_tree = is_tree(cluster);
  if (p.n == 1) {
    p.connected = true;
    return p;
  }
  const auto cut = global_min_cut(cluster);
  p.mincut = cut.weight;
  p.connected = cut.weight >= 1;
  p.well_connected = static_cast<double>(cut.weight) > threshold(p.n);
  return p;
}

ProfileReport profile_clustering(const Graph& g, const Clustering& c, const ThresholdFn& threshold,
                                 std::size_t min_size, unsigned threads) {
  ProfileReport report;
  report.threshold = threshold;
  report.min_size = min_size;
  report.total_nodes = g.node_count();

  std::vector<const Cluster*> selected;
  std::size_t covered = 0;
  for (const auto& cl : c.clusters()) {
    if (cl.nodes.size() >= min_size) {
      selected.push_back(&cl);
      covered += cl.nodes.size();
    }
  }
  report.clusters.resize(selected.size());
  parallel_for(selected.size(), threads, [&](std::size_t i) {
    auto profile = is_well_connected(induced_subgraph(g, selected[i]->nodes), threshold);
    profile.id = selected[i]->id;
    report.clusters[i] = std::move(profile);
  });

  std::size_t well = 0;
  std::size_t disconnected = 0;
  for (const auto& p : report.clusters) {
    well += p.well_connected ? 1 : 0;
    disconnected += p.connected ? 0 : 1;
  }
  if (!report.clusters.empty()) {
    const double k = static_cast<double>(report.clusters.size());
    report.pct_well_connected = 100.0 * static_cast<double>(well) / k;
    report.pct_disconnected = 100.0 * static_cast<double>(disconnected) / k;
  }
  if (g.node_count() > 0) {
    report.node_coverage = 100.0 * static_cast<double>(covered) / static_cast<double>(g.node_count());
  }
  return report;
}

}  // namespace connmod
