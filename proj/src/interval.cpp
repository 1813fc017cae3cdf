#include "keller/interval.hpp"

#include <array>

#include "keller/errors.hpp"

namespace keller {

bool Interval::contains(const Rational& v) const {
  if (v < lo || v > hi) return false;
  if (v == lo && lo_open) return false;
  if (v == hi && hi_open) return false;
  return true;
}

Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi, a.lo_open || b.lo_open, a.hi_open || b.hi_open};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo, a.hi_open, a.lo_open}; }

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  struct Corner {
    Rational value;
    bool closed;
  };
  const std::array<Corner, 4> corners{{
      {a.lo * b.lo, !a.lo_open && !b.lo_open},
      {a.lo * b.hi, !a.lo_open && !b.hi_open},
      {a.hi * b.lo, !a.hi_open && !b.lo_open},
      {a.hi * b.hi, !a.hi_open && !b.hi_open},
  }};
  Interval out{corners[0].value, corners[0].value, false, false};
  for (const auto& c : corners) {
    if (c.value < out.lo) out.lo = c.value;
    if (c.value > out.hi) out.hi = c.value;
  }
  // A bilinear form attains its extremes at corners, or along a whole edge
  // when one factor is zero there.
  const bool zero_hit = a.contains_zero() || b.contains_zero();
  bool lo_hit = out.lo == 0 && zero_hit;
  bool hi_hit = out.hi == 0 && zero_hit;
  for (const auto& c : corners) {
    if (c.closed && c.value == out.lo) lo_hit = true;
    if (c.closed && c.value == out.hi) hi_hit = true;
  }
  out.lo_open = !lo_hit;
  out.hi_open = !hi_hit;
  return out;
}

Interval operator*(const Interval& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c, a.lo_open, a.hi_open};
  return {a.hi * c, a.lo * c, a.hi_open, a.lo_open};
}

namespace {

Rational rpow(const Rational& base, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

Interval pow(const Interval& a, unsigned k) {
  if (k == 0) return Interval::point(Rational(1));
  if (k % 2 == 1 || a.lo >= 0) return {rpow(a.lo, k), rpow(a.hi, k), a.lo_open, a.hi_open};
  if (a.hi <= 0) return {rpow(a.hi, k), rpow(a.lo, k), a.hi_open, a.lo_open};
  const Rational lo_k = rpow(a.lo, k);
  const Rational hi_k = rpow(a.hi, k);
  Interval out{Rational(0), lo_k > hi_k ? lo_k : hi_k, false, false};
  const bool lo_attains = lo_k == out.hi && !a.lo_open;
  const bool hi_attains = hi_k == out.hi && !a.hi_open;
  out.hi_open = !(lo_attains || hi_attains);
  return out;
}

Interval enclose(const Poly& p, std::span<const Interval> box) {
  if (box.size() != p.dim()) throw DimensionError("enclosure box has the wrong dimension");
  Interval acc = Interval::point(Rational(0));
  for (const auto& [mono, coeff] : p.terms()) {
    Interval term = Interval::point(Rational(1));
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (mono[i] > 0) term = term * pow(box[i], mono[i]);
    }
    acc = acc + term * coeff;
  }
  return acc;
}

std::string to_string(const Interval& iv) {
  return std::string(iv.lo_open ? "(" : "[") + to_string(iv.lo) + ", " + to_string(iv.hi) + (iv.hi_open ? ")" : "]");
}

}  // namespace keller
