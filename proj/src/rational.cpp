#include "keller/rational.hpp"

#include <cctype>

#include "keller/errors.hpp"

namespace keller {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::string fraction;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) fraction += text[i++];
    if (digits.empty() && fraction.empty()) throw ParseError("malformed number", i);
  }
  if (digits.empty() && fraction.empty()) throw ParseError("expected a number", i);

  Rational value(mpz_class(digits.empty() ? std::string("0") : digits));
  if (!fraction.empty()) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
    Rational frac(mpz_class(fraction), scale);
    frac.canonicalize();
    value += frac;
  }
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::string den;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den += text[i++];
    if (den.empty()) throw ParseError("expected denominator", i);
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator", i);
    value /= Rational(d);
  }
  if (i != text.size()) throw ParseError("unexpected character in number", i);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational sqrt_upper(const Rational& q) {
  if (q < 0) throw DomainError("sqrt_upper of a negative number");
  if (q == 0) return Rational(0);
  // Smallest k with k^2 * den >= num * 2^40.
  mpz_class target = q.get_num();
  target <<= 40;
  const mpz_class scaled = target / q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root * q.get_den() < target) root += 1;
  mpz_class den(1);
  den <<= 20;
  Rational r(root, den);
  r.canonicalize();
  return r;
}

}  // namespace keller
