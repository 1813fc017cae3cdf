#include "keller/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "keller/errors.hpp"

namespace keller {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exps_(std::move(exponents)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::unit(std::size_t n, std::size_t var, std::uint32_t power) {
  if (var >= n) throw DimensionError("variable index out of range");
  std::vector<std::uint32_t> e(n, 0);
  e[var] = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw DimensionError("monomial dimension mismatch");
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  out.degree_ += other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= divisor.exps_[i];
  out.degree_ -= divisor.degree_;
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Poly Poly::constant(std::size_t n, const Rational& c) {
  Poly p(n);
  p.add_term(Monomial(n), c);
  return p;
}

Poly Poly::variable(std::size_t n, std::size_t var) {
  return term(Monomial::unit(n, var), Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p(m.dim());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int Poly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& [m, c] = *terms_.begin();
  return m.degree() == 0 ? c : Rational(0);
}

const Monomial& Poly::leading_monomial() const { return terms_.rbegin()->first; }

const Rational& Poly::leading_coefficient() const { return terms_.rbegin()->second; }

Poly Poly::homogeneous_part(std::uint32_t d) const {
  Poly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.dim() != n_) throw DimensionError("monomial dimension does not match polynomial");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::require_same_dim(const Poly& other, const char* op) const {
  if (n_ != other.n_) {
    throw DimensionError(std::string("dimension mismatch in ") + op + ": " + std::to_string(n_) +
                         " vs " + std::to_string(other.n_));
  }
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_dim(other, "addition");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_dim(other, "subtraction");
  for (const auto& [m, c] : other.terms_) add_term(m, Rational(-c));
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_dim(b, "multiplication");
  Poly out(a.n_);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = out.terms_.try_emplace(ma * mb, 0);
      it->second += ca * cb;
    }
  }
  std::erase_if(out.terms_, [](const auto& t) { return t.second == 0; });
  return out;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(n_, Rational(1));
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Poly partial(const Poly& p, std::size_t var) {
  if (var >= p.dim()) throw DimensionError("partial derivative: variable index out of range");
  Poly out(p.dim());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m[var];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps(m.exponents().begin(), m.exponents().end());
    exps[var] = e - 1;
    out.add_term(Monomial(std::move(exps)), c * e);
  }
  return out;
}

Rational evaluate(const Poly& p, std::span<const Rational> point) {
  if (point.size() != p.dim()) throw DimensionError("evaluation point has wrong dimension");
  // powers[i][e] = point[i]^e, grown on demand
  std::vector<std::vector<Rational>> powers(p.dim(), std::vector<Rational>{Rational(1)});
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const std::uint32_t e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      t *= pw[e];
    }
    sum += t;
  }
  return sum;
}

Poly substitute(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.dim()) throw DimensionError("substitution needs one image per variable");
  const std::size_t k = images.empty() ? 0 : images.front().dim();
  for (const auto& img : images) {
    if (img.dim() != k) throw DimensionError("substitution images have different dimensions");
  }
  std::vector<std::vector<Poly>> powers(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) powers[i].push_back(Poly::constant(k, Rational(1)));

  Poly out(k);
  for (const auto& [m, c] : p.terms()) {
    Poly t = Poly::constant(k, c);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const std::uint32_t e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
      t *= pw[e];
    }
    out += t;
  }
  return out;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (a.dim() != b.dim()) throw DimensionError("division: dimension mismatch");
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (b.is_constant()) {
    return a * Rational(1 / b.constant_term());
  }
  Poly quotient(a.dim());
  Poly rest = a;
  const Monomial& lead = b.leading_monomial();
  const Rational lead_coef = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& top = rest.leading_monomial();
    if (!lead.divides(top)) return std::nullopt;
    const Monomial shift = top / lead;
    const Rational c = rest.leading_coefficient() / lead_coef;
    quotient.add_term(shift, c);
    for (const auto& [m, coef] : b.terms()) rest.add_term(m * shift, Rational(-c * coef));
  }
  return quotient;
}

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

}  // namespace

std::string to_string(const Poly& p) {
  const auto names = default_names(p.dim());
  return to_string(p, names);
}

std::string to_string(const Poly& p, std::span<const std::string> names) {
  if (names.size() != p.dim()) throw DimensionError("wrong number of variable names");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = abs_value(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    if (mag != 1 || m.degree() == 0) factors.push_back(to_string(mag));
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (m[i] == 0) continue;
      factors.push_back(m[i] == 1 ? names[i] : names[i] + "^" + std::to_string(m[i]));
    }
    for (std::size_t f = 0; f < factors.size(); ++f) out << (f ? "*" : "") << factors[f];
  }
  return out.str();
}

PolyMap::PolyMap(std::vector<Poly> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.dim() != components_.size()) {
      throw DimensionError("map component has dimension " + std::to_string(c.dim()) + ", expected " +
                           std::to_string(components_.size()));
    }
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<Poly> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) comps.push_back(Poly::variable(n, i));
  return PolyMap(std::move(comps));
}

int PolyMap::degree() const {
  int d = -1;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

bool PolyMap::is_identity() const { return *this == identity(dim()); }

Poly compose(const Poly& p, const PolyMap& m) {
  if (p.dim() != m.dim()) throw DimensionError("composition: dimension mismatch");
  return substitute(p, m.components());
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("composition: dimension mismatch");
  std::vector<Poly> comps;
  comps.reserve(outer.dim());
  for (const auto& c : outer.components()) comps.push_back(substitute(c, inner.components()));
  return PolyMap(std::move(comps));
}

std::vector<Rational> evaluate(const PolyMap& f, std::span<const Rational> point) {
  std::vector<Rational> out;
  out.reserve(f.dim());
  for (const auto& c : f.components()) out.push_back(evaluate(c, point));
  return out;
}

Poly coordinate_sum(std::size_t n) {
  Poly z(n);
  for (std::size_t i = 0; i < n; ++i) z.add_term(Monomial::unit(n, i), Rational(1));
  return z;
}

}  // namespace keller
