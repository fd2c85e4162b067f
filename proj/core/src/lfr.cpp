#include "connmod/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "connmod/error.hpp"

namespace connmod {

namespace {

constexpr double kAlphaLow = 1.0 + 1e-6;
constexpr double kAlphaHigh = 15.0;

double hurwitz_zeta(double s, double q) {
  // errors are reported through status codes, never by aborting
  [[maybe_unused]] static const bool handler_off = (gsl_set_error_handler_off(), true);
  gsl_sf_result r;
  const int status = gsl_sf_hzeta_e(s, q, &r);
  if (status != GSL_SUCCESS && status != GSL_EUNDRFLW) {
    throw std::runtime_error(std::string("Hurwitz zeta failed: ") + gsl_strerror(status));
  }
  return r.val;
}

struct ValueCount {
  std::uint64_t value;
  std::size_t count;
};

// Negative log-likelihood of the tail given n samples >= x_min with summed log.
double negative_log_likelihood(double alpha, std::uint64_t x_min, std::size_t n, double sum_log) {
  return static_cast<double>(n) * std::log(hurwitz_zeta(alpha, static_cast<double>(x_min))) + alpha * sum_log;
}

}  // namespace

PowerLawFit fit_power_law_discrete(std::span<const std::uint64_t> samples) {
  const auto too_few = [&] {
    return SampleSizeError("power-law fit needs at least " + std::to_string(kMinPowerLawSamples) + " samples, got " +
                           std::to_string(samples.size()));
  };
  if (samples.empty()) throw too_few();
  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0) throw std::invalid_argument("power-law samples must be positive");
  // a constant sample is reported as such whatever its size
  if (sorted.front() == sorted.back()) {
    throw DegenerateDistributionError("all " + std::to_string(sorted.size()) + " samples equal " +
                                      std::to_string(sorted.front()));
  }
  if (samples.size() < kMinPowerLawSamples) throw too_few();

  std::vector<ValueCount> values;
  for (auto x : sorted) {
    if (values.empty() || values.back().value != x) {
      values.push_back({x, 0});
    }
    ++values.back().count;
  }
  // suffix tail sizes and log sums per distinct value
  std::vector<std::size_t> tail_n(values.size() + 1, 0);
  std::vector<double> tail_log(values.size() + 1, 0.0);
  for (std::size_t i = values.size(); i-- > 0;) {
    tail_n[i] = tail_n[i + 1] + values[i].count;
    tail_log[i] = tail_log[i + 1] + static_cast<double>(values[i].count) * std::log(static_cast<double>(values[i].value));
  }
  // 90th percentile: smallest value whose empirical CDF reaches 0.9
  const std::size_t total = sorted.size();
  std::uint64_t p90 = values.back().value;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (10 * (total - tail_n[i + 1]) >= 9 * total) {
      p90 = values[i].value;
      break;
    }
  }

  PowerLawFit best;
  best.ks_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size() && values[i].value <= p90; ++i) {
    const std::size_t n = tail_n[i];
    if (n < kMinTailSamples) break;
    if (i + 1 == values.size()) break;  // a single distinct value left carries no shape
    const std::uint64_t x_min = values[i].value;
    const double sum_log = tail_log[i];

    const auto [alpha, nll] = boost::math::tools::brent_find_minima(
        [&](double a) { return negative_log_likelihood(a, x_min, n, sum_log); }, kAlphaLow, kAlphaHigh, 40);
    (void)nll;

    const double z_min = hurwitz_zeta(alpha, static_cast<double>(x_min));
    double ks = 0.0;
    std::size_t seen = 0;
    for (std::size_t j = i; j < values.size(); ++j) {
      seen += values[j].count;
      const double empirical = static_cast<double>(seen) / static_cast<double>(n);
      const double fitted = 1.0 - hurwitz_zeta(alpha, static_cast<double>(values[j].value + 1)) / z_min;
      ks = std::max(ks, std::abs(empirical - fitted));
    }
    if (ks < best.ks_distance) best = {alpha, x_min, ks, n};
  }
  return best;
}

double mixing_parameter(const Graph& g, const Clustering& c) {
  if (g.edge_count() == 0) throw std::invalid_argument("mixing parameter undefined on an edgeless graph");
  if (c.universe() != g.node_count()) throw std::invalid_argument("clustering does not cover this graph");
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) continue;
    const auto cv = c.cluster_of(v);
    std::size_t outside = 0;
    for (NodeId w : g.neighbors(v)) {
      if (!cv || c.cluster_of(w) != cv) ++outside;
    }
    sum += static_cast<double>(outside) / static_cast<double>(g.degree(v));
    ++counted;
  }
  return sum / static_cast<double>(counted);
}

namespace {

ExponentEstimate try_fit(std::span<const std::uint64_t> samples) {
  ExponentEstimate e;
  try {
    e.fit = fit_power_law_discrete(samples);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace

LFRParams estimate_params(const Graph& g, const Clustering& c) {
  std::vector<std::uint64_t> sizes;
  for (const auto& cl : c.clusters()) {
    if (cl.nodes.size() >= 2) sizes.push_back(cl.nodes.size());
  }
  if (sizes.empty()) throw std::invalid_argument("clustering has no cluster with two or more nodes");

  LFRParams p;
  p.N = g.node_count();
  p.k = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(p.N);
  std::vector<std::uint64_t> degrees;
  degrees.reserve(p.N);
  for (NodeId v = 0; v < p.N; ++v) {
    p.k_max = std::max(p.k_max, g.degree(v));
    if (g.degree(v) > 0) degrees.push_back(g.degree(v));
  }
  p.c_min = *std::min_element(sizes.begin(), sizes.end());
  p.c_max = *std::max_element(sizes.begin(), sizes.end());
  p.tau1 = try_fit(degrees);
  p.tau2 = try_fit(sizes);
  p.mu = mixing_parameter(g, c);
  return p;
}

}  // namespace connmod
