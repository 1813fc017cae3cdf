#include "keller/families.hpp"

#include <algorithm>
#include <string>

#include "keller/errors.hpp"

namespace keller {

void SizeLimits::enforce(std::size_t n, unsigned m) const {
  if (n > max_dim) {
    throw LimitError("dimension " + std::to_string(n) + " exceeds the limit " + std::to_string(max_dim));
  }
  if (m > max_degree) {
    throw LimitError("degree " + std::to_string(m) + " exceeds the limit " + std::to_string(max_degree));
  }
}

ZShiftMap ZShiftMap::identity(std::size_t n) { return ZShiftMap(CoeffTable(n, 1)); }

namespace {

// z^0 .. z^m
std::vector<Poly> z_powers(std::size_t n, unsigned m) {
  std::vector<Poly> pw{Poly::constant(n, Rational(1))};
  const Poly z = coordinate_sum(n);
  for (unsigned l = 1; l <= m; ++l) pw.push_back(pw.back() * z);
  return pw;
}

PolyMap linear_map(const RatMatrix& b) {
  const std::size_t n = b.rows();
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Poly c(n);
    for (std::size_t j = 0; j < n; ++j) c.add_term(Monomial::unit(n, j), b(i, j));
    comps.push_back(std::move(c));
  }
  return PolyMap(std::move(comps));
}

PolyMap apply_linear(const RatMatrix& a, const PolyMap& g) {
  const std::size_t n = g.dim();
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Poly c(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) c += g[j] * a(i, j);
    }
    comps.push_back(std::move(c));
  }
  return PolyMap(std::move(comps));
}

void require_invertible(const RatMatrix& m, std::size_t n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(std::string("conjugating matrix ") + name + " must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (determinant(m) == 0) throw DomainError(std::string("conjugating matrix ") + name + " is singular");
}

}  // namespace

PolyMap ZShiftMap::to_poly_map(const SizeLimits& limits) const {
  const std::size_t n = dim();
  const unsigned m = max_degree();
  limits.enforce(n, m);
  const auto pw = z_powers(n, m);
  std::vector<Poly> comps;
  for (std::size_t k = 0; k < n; ++k) {
    Poly u = Poly::variable(n, k);
    for (unsigned l = 2; l <= m; ++l) {
      const Rational& c = coeffs_.at(k, l);
      if (c != 0) u += pw[l] * c;
    }
    comps.push_back(std::move(u));
  }
  return PolyMap(std::move(comps));
}

Rational RankOneSpec::gamma_sum() const {
  Rational s(0);
  for (const auto& g : gamma) s += g;
  return s;
}

PolyMap ConjugatedMap::to_poly_map(const SizeLimits& limits) const {
  const std::size_t n = core.dim();
  limits.enforce(n, core.max_degree());
  require_invertible(a, n, "A");
  require_invertible(b, n, "B");
  return apply_linear(a, compose(core, linear_map(b)));
}

ZShiftMap build_rank_one(const RankOneSpec& spec) {
  if (spec.gamma.empty()) throw DimensionError("gamma must have at least one entry");
  if (spec.gamma_sum() != 0) {
    throw DomainError("gamma entries sum to " + to_string(spec.gamma_sum()) + ", expected 0");
  }
  CoeffTable t(spec.dim(), spec.max_degree());
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    for (unsigned l = 2; l <= spec.max_degree(); ++l) t.at(k, l) = spec.gamma[k] * spec.alpha(l);
  }
  return ZShiftMap(std::move(t));
}

ZShiftMap build_zero_sum(const CoeffTable& coeffs) {
  for (unsigned l = 2; l <= coeffs.max_degree(); ++l) {
    const Rational s = coeffs.column_sum(l);
    if (s != 0) {
      throw DomainError("coefficients of z^" + std::to_string(l) + " sum to " + to_string(s) + ", expected 0");
    }
  }
  return ZShiftMap(coeffs);
}

PolyMap conjugate(const RatMatrix& a, const PolyMap& f, const RatMatrix& b) {
  const std::size_t n = f.dim();
  require_invertible(a, n, "A");
  require_invertible(b, n, "B");
  return apply_linear(a, compose(f, linear_map(b)));
}

PolyMap compose(const ZShiftMap& outer, const PolyMap& inner) {
  const std::size_t n = outer.dim();
  if (inner.dim() != n) throw DimensionError("composition: dimension mismatch");
  Poly s(n);
  for (const auto& c : inner.components()) s += c;

  std::vector<Poly> s_pw{Poly::constant(n, Rational(1))};
  for (unsigned l = 1; l <= outer.max_degree(); ++l) s_pw.push_back(s_pw.back() * s);

  std::vector<Poly> comps;
  for (std::size_t k = 0; k < n; ++k) {
    Poly u = inner[k];
    for (unsigned l = 2; l <= outer.max_degree(); ++l) {
      const Rational& c = outer.coeffs().at(k, l);
      if (c != 0) u += s_pw[l] * c;
    }
    comps.push_back(std::move(u));
  }
  return PolyMap(std::move(comps));
}

ZShiftMap zshift_inverse(const ZShiftMap& f, const SizeLimits& limits) {
  if (!f.is_keller()) throw DomainError("inverse requires a Keller map (zero column sums)");
  ZShiftMap g(-f.coeffs());
  const PolyMap fm = f.to_poly_map(limits);
  const PolyMap gm = g.to_poly_map(limits);
  if (!compose(g, fm).is_identity() || !compose(f, gm).is_identity()) {
    throw VerificationError("negated table failed to invert the map");
  }
  return g;
}

std::optional<ZShiftMap> recognize_zshift(const PolyMap& f) {
  const std::size_t n = f.dim();
  if (n == 0) return std::nullopt;
  const unsigned m = static_cast<unsigned>(std::max(1, f.degree()));
  const auto pw = z_powers(n, m);

  CoeffTable t(n, m);
  for (std::size_t k = 0; k < n; ++k) {
    Poly candidate = Poly::variable(n, k);
    const Poly rest = f[k] - candidate;
    for (unsigned l = 2; l <= m; ++l) {
      // x_1^l appears in z^l with coefficient 1
      const Rational c = rest.coefficient(Monomial::unit(n, 0, l));
      t.at(k, l) = c;
      if (c != 0) candidate += pw[l] * c;
    }
    if (candidate != f[k]) return std::nullopt;
  }
  return ZShiftMap(std::move(t));
}

}  // namespace keller
