#include "keller/matrix.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "keller/errors.hpp"

namespace keller {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DimensionError("matrix entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> diag) {
  RatMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<Rational> RatMatrix::apply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector product: size mismatch");
  std::vector<Rational> y(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  }
  return y;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  RatMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = k;
    while (sel < n && a(sel, k) == 0) ++sel;
    if (sel == n) return Rational(0);
    if (sel != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(sel, c), a(k, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      const Rational factor = a(r, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(r, c) -= factor * a(k, c);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a, a.cols()).size();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  if (rref(aug, n).size() != n) throw DomainError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  }
  return inv;
}

SolveResult solve(const RatMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DimensionError("right-hand side length does not match row count");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  const auto pivots = rref(aug, n);

  SolveResult out;
  out.rank = pivots.size();
  out.augmented_rank = out.rank;
  for (std::size_t r = out.rank; r < aug.rows(); ++r) {
    if (aug(r, n) != 0) {
      out.augmented_rank = out.rank + 1;
      break;
    }
  }
  out.consistent = out.rank == out.augmented_rank;
  if (!out.consistent) return out;

  out.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, n);

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug(i, free);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n)
    : rows_(rows), cols_(cols), n_(n), entries_(rows * cols, Poly(n)) {}

PolyMatrix PolyMatrix::identity(std::size_t size, std::size_t n) {
  PolyMatrix m(size, size, n);
  for (std::size_t i = 0; i < size; ++i) m.set(i, i, Poly::constant(n, Rational(1)));
  return m;
}

void PolyMatrix::set(std::size_t r, std::size_t c, Poly value) {
  if (value.dim() != n_) throw DimensionError("matrix entry lives in a different polynomial ring");
  entries_[r * cols_ + c] = std::move(value);
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, n_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

RatMatrix PolyMatrix::evaluate(std::span<const Rational> point) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = keller::evaluate((*this)(r, c), point);
  }
  return out;
}

namespace {

std::size_t total_terms(const PolyMatrix& m) {
  std::size_t t = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t += m(r, c).term_count();
  }
  return t;
}

// Key of a term in a flattened row: larger monomial first, then lower column.
struct RowKey {
  Monomial mono;
  std::size_t col = 0;
};

struct RowKeyLess {
  bool operator()(const RowKey& a, const RowKey& b) const {
    GrlexLess less;
    if (less(a.mono, b.mono)) return true;
    if (less(b.mono, a.mono)) return false;
    return a.col > b.col;
  }
};

// Largest non-constant term of a row, if any.
std::optional<std::pair<RowKey, Rational>> row_lead(const std::vector<Poly>& row) {
  std::optional<std::pair<RowKey, Rational>> best;
  RowKeyLess less;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c].degree() < 1) continue;
    RowKey key{row[c].leading_monomial(), c};
    if (!best || less(best->first, key)) best.emplace(std::move(key), row[c].leading_coefficient());
  }
  return best;
}

Poly laplace(const PolyMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  const std::size_t k = rows.size();
  if (k == 0) return Poly::constant(m.ring_dim(), Rational(1));
  if (k == 1) return m(rows[0], cols[0]);

  // Expand along the row or column with the most zeros; ties go to the
  // line with fewer terms.
  auto score = [&](bool is_row, std::size_t idx) {
    std::size_t zeros = 0, terms = 0;
    for (std::size_t t = 0; t < k; ++t) {
      const Poly& e = is_row ? m(rows[idx], cols[t]) : m(rows[t], cols[idx]);
      zeros += e.is_zero();
      terms += e.term_count();
    }
    return std::make_pair(zeros, static_cast<long>(-static_cast<long>(terms)));
  };
  bool along_row = true;
  std::size_t line = 0;
  auto best = score(true, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (bool is_row : {true, false}) {
      auto s = score(is_row, i);
      if (s > best) {
        best = s;
        along_row = is_row;
        line = i;
      }
    }
  }

  Poly det(m.ring_dim());
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t r = along_row ? line : t;
    const std::size_t c = along_row ? t : line;
    const Poly& entry = m(rows[r], cols[c]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_rows = rows;
    std::vector<std::size_t> sub_cols = cols;
    sub_rows.erase(sub_rows.begin() + static_cast<long>(r));
    sub_cols.erase(sub_cols.begin() + static_cast<long>(c));
    Poly term = entry * laplace(m, std::move(sub_rows), std::move(sub_cols));
    if ((r + c) % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace

PolyMatrix reduce_constant_rows(const PolyMatrix& m) {
  std::vector<std::vector<Poly>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r].push_back(m(r, c));
  }

  std::map<RowKey, std::pair<std::size_t, Rational>, RowKeyLess> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    while (auto lead = row_lead(rows[r])) {
      auto hit = pivots.find(lead->first);
      if (hit == pivots.end()) {
        pivots.emplace(std::move(lead->first), std::make_pair(r, lead->second));
        break;
      }
      const auto& [p, pivot_coef] = hit->second;
      const Rational factor = lead->second / pivot_coef;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (!rows[p][c].is_zero()) rows[r][c] -= rows[p][c] * factor;
      }
    }
  }

  PolyMatrix reduced(m.rows(), m.cols(), m.ring_dim());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) reduced.set(r, c, std::move(rows[r][c]));
  }
  return total_terms(reduced) < total_terms(m) ? reduced : m;
}

Poly cofactor_determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  std::vector<std::size_t> idx(m.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return laplace(m, idx, idx);
}

Poly bareiss_determinant(const PolyMatrix& input) {
  if (input.rows() != input.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  const std::size_t ring = input.ring_dim();
  if (n == 0) return Poly::constant(ring, Rational(1));

  std::vector<std::vector<Poly>> a(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r].push_back(input(r, c));
  }

  bool negate = false;
  Poly prev = Poly::constant(ring, Rational(1));
  for (std::size_t k = 0; k < n; ++k) {
    // Full pivoting toward the cheapest entry: constants first, then
    // fewest terms, then lowest degree.
    std::optional<std::tuple<bool, std::size_t, int>> best;
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        const Poly& e = a[r][c];
        if (e.is_zero()) continue;
        auto s = std::make_tuple(!e.is_constant(), e.term_count(), e.degree());
        if (!best || s < *best) {
          best = s;
          pr = r;
          pc = c;
        }
      }
    }
    if (!best) return Poly(ring);
    if (pr != k) {
      std::swap(a[pr], a[k]);
      negate = !negate;
    }
    if (pc != k) {
      for (auto& row : a) std::swap(row[pc], row[k]);
      negate = !negate;
    }
    if (k + 1 == n) break;

    const Poly& pivot = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = pivot * a[i][j];
        if (!a[i][k].is_zero() && !a[k][j].is_zero()) num -= a[i][k] * a[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw VerificationError("Bareiss step produced an inexact division");
        a[i][j] = std::move(*q);
      }
      a[i][k] = Poly(ring);
    }
    prev = pivot;
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const PolyMatrix reduced = reduce_constant_rows(reduce_constant_rows(m).transpose());
  return reduced.rows() <= 4 ? cofactor_determinant(reduced) : bareiss_determinant(reduced);
}

}  // namespace keller
