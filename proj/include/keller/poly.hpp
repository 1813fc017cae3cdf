#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "keller/rational.hpp"

namespace keller {

/// Exponent vector x_1^{e_1} ... x_n^{e_n}. Variables are 0-based in the
/// API: index i stands for x_{i+1}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents);

  static Monomial unit(std::size_t n, std::size_t var, std::uint32_t power = 1);

  std::size_t dim() const noexcept { return exps_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with x_1 > x_2 > ... > x_n.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial in x_1..x_n over the rationals. Terms are kept in
/// ascending grlex order and never carry a zero coefficient, so two equal
/// polynomials have identical term maps.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(std::size_t n) : n_(n) {}

  static Poly constant(std::size_t n, const Rational& c);
  static Poly variable(std::size_t n, std::size_t var);
  static Poly term(const Monomial& m, const Rational& c);

  std::size_t dim() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  std::size_t term_count() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  /// Largest term in grlex order. Requires !is_zero().
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  Poly homogeneous_part(std::uint32_t degree) const;

  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  Poly operator-() const;
  Poly pow(unsigned exponent) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void require_same_dim(const Poly& other, const char* op) const;

  std::size_t n_ = 0;
  TermMap terms_;
};

/// Formal partial derivative with respect to x_{var+1}.
Poly partial(const Poly& p, std::size_t var);

Rational evaluate(const Poly& p, std::span<const Rational> point);

/// Replaces x_{i+1} by images[i]. All images must share one dimension,
/// which becomes the dimension of the result.
Poly substitute(const Poly& p, std::span<const Poly> images);

/// Quotient a / b when b divides a exactly in Q[x]; nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Canonical text, highest grlex term first, e.g. "x1^2 - 3/2*x1*x2 + 1".
/// The output is accepted by the expression parser.
std::string to_string(const Poly& p);
std::string to_string(const Poly& p, std::span<const std::string> names);

/// Polynomial self-map of Q^n: n components, each a Poly in n variables.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Poly> components);

  static PolyMap identity(std::size_t n);

  std::size_t dim() const noexcept { return components_.size(); }
  const Poly& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Poly>& components() const noexcept { return components_; }
  int degree() const;
  bool is_identity() const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::vector<Poly> components_;
};

/// p with x_i replaced by m[i].
Poly compose(const Poly& p, const PolyMap& m);
/// outer ∘ inner, fully expanded.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);
std::vector<Rational> evaluate(const PolyMap& f, std::span<const Rational> point);

/// z = x_1 + ... + x_n.
Poly coordinate_sum(std::size_t n);

}  // namespace keller
