#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "keller/poly.hpp"
#include "keller/rational.hpp"

namespace keller {

/// Dense row-major matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(std::span<const Rational> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  RatMatrix transpose() const;
  std::vector<Rational> apply(std::span<const Rational> x) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Throws DomainError when m is singular.
RatMatrix inverse(const RatMatrix& m);

/// Outcome of an exact linear solve A x = b. Inconsistency is reported,
/// not thrown: `consistent` is false exactly when rank < augmented_rank.
struct SolveResult {
  bool consistent = false;
  std::size_t rank = 0;
  std::size_t augmented_rank = 0;
  /// Free variables set to zero; empty when inconsistent.
  std::vector<Rational> particular;
  /// Basis of the null space of A, one vector per free column.
  std::vector<std::vector<Rational>> nullspace;

  bool unique() const { return consistent && nullspace.empty(); }
};

/// Gauss-Jordan elimination with first-nonzero pivoting in column order.
SolveResult solve(const RatMatrix& a, std::span<const Rational> b);

/// Dense matrix of polynomials that all live in the same ring Q[x_1..x_n].
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n);

  static PolyMatrix identity(std::size_t size, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Number of variables of the entries.
  std::size_t ring_dim() const noexcept { return n_; }

  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Poly value);

  PolyMatrix transpose() const;
  RatMatrix evaluate(std::span<const Rational> point) const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t n_ = 0;
  std::vector<Poly> entries_;
};

/// Exact determinant in Q[x]. The matrix is first simplified with
/// constant-multiplier row and column additions (which leave the
/// determinant unchanged); sizes up to 4 then use Laplace expansion and
/// larger ones fraction-free Bareiss elimination.
Poly determinant(const PolyMatrix& m);

Poly cofactor_determinant(const PolyMatrix& m);
Poly bareiss_determinant(const PolyMatrix& m);

/// Row additions row_r += c * row_p with constant c that cancel leading
/// non-constant terms. Returns the input unchanged if this does not reduce
/// the total term count.
PolyMatrix reduce_constant_rows(const PolyMatrix& m);

}  // namespace keller
