#pragma once

#include <string>
#include <utility>
#include <vector>

#include "keller/poly.hpp"
#include "keller/rational.hpp"

namespace keller {

struct ComplexRational {
  Rational re;
  Rational im;

  Rational norm2() const { return re * re + im * im; }
  /// |re| + |im|, an upper bound for the modulus.
  Rational l1() const { return abs_value(re) + abs_value(im); }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

/// Polynomial in one complex variable z; coeffs[k] multiplies z^k.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<ComplexRational> coeffs);

  /// Reads a real polynomial in (z, i) with i^2 = -1.
  static ComplexPoly from_zi(const Poly& p);

  const std::vector<ComplexRational>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  ComplexPoly derivative() const;
  ComplexRational evaluate(const ComplexRational& z) const;

  /// Real and imaginary parts as polynomials in (x, y), z = x + i y.
  std::pair<Poly, Poly> real_parts() const;

  /// sum_k |c_k|_1 * radius^k, bounding |p(z)| for |z| <= radius.
  Rational modulus_bound(const Rational& radius) const;

  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

 private:
  void trim();

  std::vector<ComplexRational> coeffs_;
};

std::string to_string(const ComplexPoly& p);

}  // namespace keller
