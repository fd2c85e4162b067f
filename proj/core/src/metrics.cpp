#include "connmod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace connmod {

namespace {

double entropy(const std::vector<std::uint64_t>& sums, std::uint64_t total) {
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto s : sums) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

double choose2(std::uint64_t x) {
  const double d = static_cast<double>(x);
  return d * (d - 1.0) / 2.0;
}

// Sizes with their multiplicities; the EMI sum depends only on these.
std::map<std::uint64_t, std::uint64_t> histogram(const std::vector<std::uint64_t>& sums) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto s : sums) {
    if (s > 0) ++h[s];
  }
  return h;
}

std::size_t distinct(const std::vector<std::uint64_t>& sums) {
  return static_cast<std::size_t>(std::count_if(sums.begin(), sums.end(), [](auto s) { return s > 0; }));
}

bool same_partition(const ContingencyTable& t) {
  // every non-empty row and column holds exactly one non-zero cell
  return t.cells().size() == distinct(t.row_sums()) && t.cells().size() == distinct(t.col_sums());
}

}  // namespace

ContingencyTable::ContingencyTable(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v) {
  if (u.size() != v.size()) throw std::invalid_argument("labelings cover different numbers of items");
  std::unordered_map<std::uint32_t, std::uint32_t> ru, rv;
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::vector<std::uint64_t> order;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto a = ru.try_emplace(u[i], static_cast<std::uint32_t>(ru.size())).first->second;
    const auto b = rv.try_emplace(v[i], static_cast<std::uint32_t>(rv.size())).first->second;
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, inserted] = counts.try_emplace(key, 0);
    if (inserted) order.push_back(key);
    ++it->second;
  }
  std::sort(order.begin(), order.end());
  for (auto key : order) {
    cells_.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffu),
                      counts[key]});
  }
  rows_.assign(ru.size(), 0);
  cols_.assign(rv.size(), 0);
  finish_marginals();
}

ContingencyTable::ContingencyTable(const std::vector<std::vector<std::uint64_t>>& dense) {
  std::size_t width = 0;
  for (const auto& row : dense) width = std::max(width, row.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    for (std::size_t j = 0; j < dense[i].size(); ++j) {
      if (dense[i][j] > 0) {
        cells_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), dense[i][j]});
      }
    }
  }
  rows_.assign(dense.size(), 0);
  cols_.assign(width, 0);
  finish_marginals();
}

void ContingencyTable::finish_marginals() {
  for (const auto& c : cells_) {
    rows_[c.row] += c.count;
    cols_[c.col] += c.count;
    total_ += c.count;
  }
}

double ContingencyTable::mutual_information() const {
  const double n = static_cast<double>(total_);
  double mi = 0.0;
  for (const auto& c : cells_) {
    const double nij = static_cast<double>(c.count);
    mi += nij / n *
          std::log(n * nij / (static_cast<double>(rows_[c.row]) * static_cast<double>(cols_[c.col])));
  }
  return std::max(mi, 0.0);
}

double ContingencyTable::row_entropy() const { return entropy(rows_, total_); }
double ContingencyTable::col_entropy() const { return entropy(cols_, total_); }

double ContingencyTable::expected_mutual_information() const {
  const double n = static_cast<double>(total_);
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (const auto& [a, ka] : histogram(rows_)) {
    for (const auto& [b, kb] : histogram(cols_)) {
      const double da = static_cast<double>(a);
      const double db = static_cast<double>(b);
      const double fixed = std::lgamma(da + 1.0) + std::lgamma(db + 1.0) + std::lgamma(n - da + 1.0) +
                           std::lgamma(n - db + 1.0) - lg_n;
      const std::uint64_t lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(a + b) -
                                                              static_cast<std::int64_t>(total_));
      const std::uint64_t hi = std::min(a, b);
      double term = 0.0;
      for (std::uint64_t x = lo; x <= hi; ++x) {
        const double dx = static_cast<double>(x);
        const double log_p = fixed - std::lgamma(dx + 1.0) - std::lgamma(da - dx + 1.0) -
                             std::lgamma(db - dx + 1.0) - std::lgamma(n - da - db + dx + 1.0);
        term += dx / n * std::log(n * dx / (da * db)) * std::exp(log_p);
      }
      emi += static_cast<double>(ka) * static_cast<double>(kb) * term;
    }
  }
  return emi;
}

double nmi(const ContingencyTable& t) {
  const std::size_t r = distinct(t.row_sums());
  const std::size_t c = distinct(t.col_sums());
  if ((r == 1 && c == 1) || t.total() == 0) return 1.0;
  const double mi = t.mutual_information();
  if (mi == 0.0) return 0.0;
  return mi / ((t.row_entropy() + t.col_entropy()) / 2.0);
}

double ami(const ContingencyTable& t) {
  const std::size_t r = distinct(t.row_sums());
  const std::size_t c = distinct(t.col_sums());
  if ((r == 1 && c == 1) || t.total() == 0) return 1.0;
  if (r == 1 || c == 1) return 0.0;
  const double mi = t.mutual_information();
  const double emi = t.expected_mutual_information();
  const double denominator = (t.row_entropy() + t.col_entropy()) / 2.0 - emi;
  if (std::abs(denominator) < 1e-12) return same_partition(t) ? 1.0 : 0.0;
  return (mi - emi) / denominator;
}

double ari(const ContingencyTable& t) {
  if (t.total() < 2) throw std::invalid_argument("ARI needs at least 2 items");
  double index = 0.0;
  for (const auto& c : t.cells()) index += choose2(c.count);
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (auto a : t.row_sums()) sum_a += choose2(a);
  for (auto b : t.col_sums()) sum_b += choose2(b);
  const double expected = sum_a * sum_b / choose2(t.total());
  const double denominator = (sum_a + sum_b) / 2.0 - expected;
  if (denominator == 0.0) return same_partition(t) ? 1.0 : 0.0;
  return (index - expected) / denominator;
}

namespace {

ContingencyTable table_of(const Clustering& u, const Clustering& v) {
  if (u.universe() != v.universe()) throw std::invalid_argument("clusterings cover different node universes");
  const auto mu = u.materialized_membership();
  const auto mv = v.materialized_membership();
  return ContingencyTable(mu, mv);
}

}  // namespace

double nmi(const Clustering& u, const Clustering& v) { return nmi(table_of(u, v)); }
double ami(const Clustering& u, const Clustering& v) { return ami(table_of(u, v)); }
double ari(const Clustering& u, const Clustering& v) { return ari(table_of(u, v)); }

}  // namespace connmod
