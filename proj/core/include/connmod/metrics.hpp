#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "connmod/clustering.hpp"

namespace connmod {

/// Sparse contingency table n_ij = |U_i ∩ V_j| of two labelings of the same
/// items, with marginals a_i (rows) and b_j (columns).
class ContingencyTable {
 public:
  struct Cell {
    std::uint32_t row;
    std::uint32_t col;
    std::uint64_t count;
  };

  /// Labels are arbitrary integers; they are compacted internally.
  /// Throws std::invalid_argument if the sizes differ.
  ContingencyTable(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v);
  /// Dense table given as rows of counts (zero cells allowed).
  explicit ContingencyTable(const std::vector<std::vector<std::uint64_t>>& dense);

  std::uint64_t total() const { return total_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<std::uint64_t>& row_sums() const { return rows_; }
  const std::vector<std::uint64_t>& col_sums() const { return cols_; }

  double mutual_information() const;
  double row_entropy() const;
  double col_entropy() const;
  /// E[MI] under the hypergeometric (fixed marginals) model.
  double expected_mutual_information() const;

 private:
  void finish_marginals();

  std::vector<Cell> cells_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
  std::uint64_t total_ = 0;
};

/// MI / arithmetic mean of the entropies (natural log).
double nmi(const ContingencyTable& t);
/// (MI - E[MI]) / (mean(H_u, H_v) - E[MI]).
double ami(const ContingencyTable& t);
/// Hubert-Arabie adjusted Rand index. Throws std::invalid_argument if N < 2.
double ari(const ContingencyTable& t);

/// Clustering overloads: implicit singletons are materialized first, so nodes
/// dropped by one clustering count as singletons. Throws
/// std::invalid_argument when the universes differ.
double nmi(const Clustering& u, const Clustering& v);
double ami(const Clustering& u, const Clustering& v);
double ari(const Clustering& u, const Clustering& v);

}  // namespace connmod
