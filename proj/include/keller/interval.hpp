#pragma once

#include <span>
#include <string>

#include "keller/poly.hpp"
#include "keller/rational.hpp"

namespace keller {

/// Bounded rational interval; each endpoint is either included or not.
/// Arithmetic returns the exact range of the operation over the operands,
/// including whether each extreme is actually attained.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  static Interval point(const Rational& v) { return {v, v, false, false}; }

  bool is_empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
  bool contains(const Rational& v) const;
  bool contains_zero() const { return contains(Rational(0)); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Rational& c);
Interval pow(const Interval& a, unsigned k);

/// Encloses p over the box whose i-th side is box[i]. Each monomial is
/// bounded separately, so the result may be wider than the true range.
Interval enclose(const Poly& p, std::span<const Interval> box);

std::string to_string(const Interval& iv);

}  // namespace keller
