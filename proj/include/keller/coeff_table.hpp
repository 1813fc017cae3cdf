#pragma once

#include <cstddef>
#include <vector>

#include "keller/rational.hpp"

namespace keller {

/// Coefficients p_k^(l) of a map x_k + sum_{l=2..m} p_k^(l) z^l with
/// z = x_1 + ... + x_n. Rows are indexed by the 0-based coordinate k,
/// columns by the actual degree l in [2, m]. m = 1 gives an empty table.
class CoeffTable {
 public:
  CoeffTable() = default;
  CoeffTable(std::size_t n, unsigned m);

  /// rows[k] lists p_k^(2), ..., p_k^(m); all rows must have equal length.
  static CoeffTable from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t dim() const noexcept { return n_; }
  unsigned max_degree() const noexcept { return m_; }

  const Rational& at(std::size_t k, unsigned l) const { return data_[index(k, l)]; }
  Rational& at(std::size_t k, unsigned l) { return data_[index(k, l)]; }

  std::vector<Rational> row(std::size_t k) const;
  std::vector<Rational> column(unsigned l) const;
  Rational column_sum(unsigned l) const;
  bool has_zero_column_sums() const;
  bool is_zero() const;

  CoeffTable operator-() const;

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;

 private:
  std::size_t index(std::size_t k, unsigned l) const;

  std::size_t n_ = 0;
  unsigned m_ = 1;
  std::vector<Rational> data_;
};

}  // namespace keller
