#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "keller/coeff_table.hpp"
#include "keller/matrix.hpp"
#include "keller/poly.hpp"

namespace keller {

/// Expanding (x_1+...+x_n)^m fills a simplex of monomials, so family
/// constructors refuse sizes beyond these bounds.
struct SizeLimits {
  std::size_t max_dim = 8;
  unsigned max_degree = 10;

  void enforce(std::size_t n, unsigned m) const;
};

/// X + sum_{l=2..m} P^(l) z^l with z = x_1 + ... + x_n.
class ZShiftMap {
 public:
  ZShiftMap() = default;
  explicit ZShiftMap(CoeffTable coeffs) : coeffs_(std::move(coeffs)) {}

  static ZShiftMap identity(std::size_t n);

  const CoeffTable& coeffs() const noexcept { return coeffs_; }
  std::size_t dim() const noexcept { return coeffs_.dim(); }
  unsigned max_degree() const noexcept { return coeffs_.max_degree(); }

  /// Every column of the table sums to zero (equivalently det Df = 1).
  bool is_keller() const { return coeffs_.has_zero_column_sums(); }

  PolyMap to_poly_map(const SizeLimits& limits = {}) const;

  friend bool operator==(const ZShiftMap&, const ZShiftMap&) = default;

 private:
  CoeffTable coeffs_;
};

/// u_k = x_k + gamma_k * (alpha_2 z^2 + ... + alpha_m z^m).
struct RankOneSpec {
  std::vector<Rational> gamma;
  /// alpha_2 .. alpha_m
  std::vector<Rational> alphas;

  std::size_t dim() const noexcept { return gamma.size(); }
  unsigned max_degree() const noexcept { return static_cast<unsigned>(alphas.size() + 1); }
  const Rational& alpha(unsigned l) const { return alphas.at(l - 2); }
  Rational gamma_sum() const;

  friend bool operator==(const RankOneSpec&, const RankOneSpec&) = default;
};

/// a ∘ core ∘ b with invertible linear a and b.
struct ConjugatedMap {
  RatMatrix a;
  RatMatrix b;
  ZShiftMap core;

  PolyMap to_poly_map(const SizeLimits& limits = {}) const;
};

/// Table p_k^(l) = gamma_k * alpha_l. Throws DomainError unless the gammas
/// sum to zero.
ZShiftMap build_rank_one(const RankOneSpec& spec);

/// Accepts any table whose columns all sum to zero; throws DomainError
/// naming the first offending degree otherwise.
ZShiftMap build_zero_sum(const CoeffTable& coeffs);

/// X -> a * f(b * X). Throws DomainError if a or b is singular.
PolyMap conjugate(const RatMatrix& a, const PolyMap& f, const RatMatrix& b);

/// Inverse of a Keller z-shift map: the table with every sign flipped.
/// Both compositions with f are expanded and checked against the identity
/// before returning.
ZShiftMap zshift_inverse(const ZShiftMap& f, const SizeLimits& limits = {});

/// outer ∘ inner for an arbitrary inner map. The coordinate sum of inner
/// is expanded once and then raised to each power, which keeps the work
/// proportional to the size of the result rather than of the substitution.
PolyMap compose(const ZShiftMap& outer, const PolyMap& inner);

/// Reads a PolyMap back as a z-shift map if it has exactly that shape.
std::optional<ZShiftMap> recognize_zshift(const PolyMap& f);

}  // namespace keller
