#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "connmod/clustering.hpp"
#include "connmod/graph.hpp"

namespace connmod {

/// Lower bound on the min cut a cluster of n nodes must exceed to count as
/// well connected.
class ThresholdFn {
 public:
  enum class Kind { Log10, Log2, SqrtDiv5, TraagLinear, Custom };

  static ThresholdFn log10() { return ThresholdFn(Kind::Log10); }
  static ThresholdFn log2() { return ThresholdFn(Kind::Log2); }
  static ThresholdFn sqrt_div5() { return ThresholdFn(Kind::SqrtDiv5); }
  /// r (n - 1); r > 0.
  static ThresholdFn traag_linear(double r);
  /// a n + b log10 n + c with a, b, c >= 0, so the value stays finite,
  /// non-negative and non-decreasing.
  static ThresholdFn custom(double a, double b, double c);

  /// Throws std::invalid_argument for n < 1.
  double operator()(std::size_t n) const;

  Kind kind() const { return kind_; }
  double r() const { return a_; }
  std::string describe() const;

 private:
  explicit ThresholdFn(Kind kind, double a = 0.0, double b = 0.0, double c = 0.0)
      : kind_(kind), a_(a), b_(b), c_(c) {}

  Kind kind_;
  double a_;
  double b_;
  double c_;
};

struct ClusterProfile {
  std::string id;
  std::size_t n = 0;
  /// Undefined for singletons.
  std::optional<std::size_t> mincut;
  bool well_connected = false;
  bool is_tree = false;
  bool connected = false;
};

/// Min cut of `cluster` against the strict test mincut > t(n). A singleton
/// has no cut: it is reported connected, a tree, and not well connected.
ClusterProfile is_well_connected(const Graph& cluster, const ThresholdFn& threshold);

struct ProfileReport {
  std::vector<ClusterProfile> clusters;
  double pct_well_connected = 0.0;
  double pct_disconnected = 0.0;
  /// Percent of graph nodes in clusters of size >= min_size.
  double node_coverage = 0.0;
  ThresholdFn threshold = ThresholdFn::log10();
  std::size_t min_size = 11;
  std::size_t total_nodes = 0;
};

/// Profiles every cluster of size >= min_size; percentages use those
/// clusters as denominator. `threads` workers profile clusters in parallel;
/// the report does not depend on the thread count.
ProfileReport profile_clustering(const Graph& g, const Clustering& c, const ThresholdFn& threshold,
                                 std::size_t min_size, unsigned threads = 1);

}  // namespace connmod
