#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "connmod/clustering.hpp"
#include "connmod/graph.hpp"

namespace connmod {

struct PowerLawFit {
  double alpha = 0.0;
  std::uint64_t x_min = 0;
  double ks_distance = 0.0;
  std::size_t n_tail = 0;
};

/// Smallest sample count fit_power_law_discrete accepts.
inline constexpr std::size_t kMinPowerLawSamples = 50;
/// Smallest tail a candidate x_min may leave.
inline constexpr std::size_t kMinTailSamples = 25;

/// Discrete power-law fit: for every distinct sample value up to the 90th
/// percentile (keeping at least kMinTailSamples in the tail) as x_min, the
/// exponent is the maximum-likelihood estimate on the tail under
/// p(x) = x^-alpha / zeta(alpha, x_min); the returned fit minimizes the
/// Kolmogorov-Smirnov distance between empirical and fitted tail CDFs.
///
/// Throws DegenerateDistributionError when all samples are equal (checked
/// first), SampleSizeError for fewer than 50 samples, and
/// std::invalid_argument for a zero sample.
PowerLawFit fit_power_law_discrete(std::span<const std::uint64_t> samples);

/// Mean over non-isolated nodes of (edges leaving the node's cluster) /
/// degree. Unassigned nodes are their own cluster. Throws
/// std::invalid_argument on an edgeless graph.
double mixing_parameter(const Graph& g, const Clustering& c);

/// A fitted exponent, or the reason the fit failed.
struct ExponentEstimate {
  std::optional<PowerLawFit> fit;
  std::string error;
};

struct LFRParams {
  std::size_t N = 0;
  double k = 0.0;
  std::size_t k_max = 0;
  ExponentEstimate tau1;  // degree sequence
  ExponentEstimate tau2;  // community sizes
  std::size_t c_min = 0;
  std::size_t c_max = 0;
  double mu = 0.0;
};

/// Estimates the eight LFR generator inputs from a graph and clustering.
/// Community sizes use non-singleton clusters only. A failed exponent fit
/// is reported in its field; other fields are still filled. Throws
/// std::invalid_argument when no cluster has two or more nodes.
LFRParams estimate_params(const Graph& g, const Clustering& c);

}  // namespace connmod
