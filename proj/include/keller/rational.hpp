#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace keller {

/// Exact rational number. GMP keeps results of arithmetic in lowest terms
/// with a positive denominator; values built from a raw numerator and
/// denominator must go through make_rational so that invariant holds.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Accepts "7", "-3/4" and finite decimals such as "0.125" (read exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Smallest rational of the form k / 2^20 that is >= sqrt(q), for q >= 0.
Rational sqrt_upper(const Rational& q);

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace keller
