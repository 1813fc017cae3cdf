#include "keller/factor.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "keller/errors.hpp"
#include "keller/jacobian.hpp"

namespace keller {

namespace {

void require_zero_gamma_sum(const RankOneSpec& f, std::size_t index) {
  if (f.gamma_sum() != 0) {
    throw DomainError("factor " + std::to_string(index + 1) + ": gamma entries sum to " + to_string(f.gamma_sum()) +
                      ", expected 0");
  }
}

std::size_t common_dim(std::span<const RankOneSpec> factors) {
  if (factors.empty()) throw DimensionError("at least one factor is required");
  const std::size_t n = factors.front().dim();
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j].dim() != n) throw DimensionError("factors have different dimensions");
    require_zero_gamma_sum(factors[j], j);
  }
  return n;
}

// Planar maps stay small at any degree.
constexpr SizeLimits kPlanarLimits{2, 64};

}  // namespace

ZShiftMap compose_closed_form(std::span<const RankOneSpec> factors, bool verify) {
  const std::size_t n = common_dim(factors);
  unsigned m = 1;
  for (const auto& f : factors) m = std::max(m, f.max_degree());

  CoeffTable t(n, m);
  for (const auto& f : factors) {
    for (unsigned l = 2; l <= f.max_degree(); ++l) {
      const Rational& a = f.alpha(l);
      if (a == 0) continue;
      for (std::size_t k = 0; k < n; ++k) t.at(k, l) += f.gamma[k] * a;
    }
  }
  ZShiftMap product(std::move(t));
  if (verify && compose_iterated(factors) != product.to_poly_map()) {
    throw VerificationError("closed-form composite differs from the expanded composition");
  }
  return product;
}

PolyMap compose_iterated(std::span<const RankOneSpec> factors) {
  common_dim(factors);
  PolyMap acc = build_rank_one(factors.back()).to_poly_map();
  for (std::size_t j = factors.size() - 1; j-- > 0;) acc = compose(build_rank_one(factors[j]), acc);
  return acc;
}

Factorization decompose(const ZShiftMap& f) {
  if (!f.is_keller()) throw DomainError("decomposition requires zero column sums");
  const std::size_t n = f.dim();
  const unsigned m = f.max_degree();
  if (n < 2) return {{}, f};

  const std::size_t count = n - 1;
  RatMatrix basis(n, count);
  for (std::size_t j = 0; j < count; ++j) {
    basis(j, j) = 1;
    basis(j + 1, j) = -1;
  }

  std::vector<RankOneSpec> factors(count);
  for (std::size_t j = 0; j < count; ++j) {
    factors[j].gamma.assign(n, Rational(0));
    factors[j].gamma[j] = 1;
    factors[j].gamma[j + 1] = -1;
    factors[j].alphas.assign(m >= 2 ? m - 1 : 0, Rational(0));
  }
  for (unsigned l = 2; l <= m; ++l) {
    const auto column = f.coeffs().column(l);
    const SolveResult sol = solve(basis, column);
    if (!sol.unique()) throw VerificationError("degree " + std::to_string(l) + " system is not uniquely solvable");
    for (std::size_t j = 0; j < count; ++j) factors[j].alphas[l - 2] = sol.particular[j];
  }

  Factorization out{std::move(factors), f};
  if (compose_closed_form(out.factors) != f) throw VerificationError("factors do not reproduce the map");
  return out;
}

Membership rank_one_membership(const ZShiftMap& f) {
  if (!f.is_keller()) throw DomainError("membership test requires zero column sums");
  const CoeffTable& t = f.coeffs();
  const std::size_t n = t.dim();
  const unsigned m = t.max_degree();

  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 < n; ++k2) {
      for (unsigned l1 = 2; l1 <= m; ++l1) {
        for (unsigned l2 = l1 + 1; l2 <= m; ++l2) {
          Rational v = t.at(k1, l1) * t.at(k2, l2) - t.at(k1, l2) * t.at(k2, l1);
          if (v != 0) return {false, std::nullopt, MinorWitness{k1, k2, l1, l2, std::move(v)}};
        }
      }
    }
  }

  RankOneSpec spec;
  spec.gamma.assign(n, Rational(0));
  spec.alphas.assign(m >= 2 ? m - 1 : 0, Rational(0));
  for (unsigned c = 2; c <= m; ++c) {
    const auto col = t.column(c);
    const auto pivot = std::find_if(col.begin(), col.end(), [](const Rational& q) { return q != 0; });
    if (pivot == col.end()) continue;
    const std::size_t k0 = static_cast<std::size_t>(pivot - col.begin());
    spec.gamma = col;
    for (unsigned l = 2; l <= m; ++l) spec.alphas[l - 2] = t.at(k0, l) / t.at(k0, c);
    break;
  }
  return {true, std::move(spec), std::nullopt};
}

std::string to_string(NormalFormCase c) {
  switch (c) {
    case NormalFormCase::LNonzero:
      return "L-nonzero";
    case NormalFormCase::LZeroLambdaNonzero:
      return "L-zero-lambda-nonzero";
    case NormalFormCase::LZeroLambdaZero:
      return "L-zero-lambda-zero";
  }
  return "unknown";
}

PolyMap NormalForm2D::normal_map() const {
  const unsigned top = perturbation_degree;
  CoeffTable t(2, top);
  for (unsigned l = 2; l < top; ++l) {
    const Rational a = l <= base.max_degree() ? base.alpha(l) : Rational(0);
    t.at(0, l) = a;
    t.at(1, l) = -a;
  }
  t.at(0, top) = alpha_top;
  t.at(1, top) = -alpha_top;
  return ZShiftMap(std::move(t)).to_poly_map(kPlanarLimits);
}

PolyMap NormalForm2D::reconstruct() const { return conjugate(inverse(a), normal_map(), a); }

namespace {

PolyMap swap_coordinates(const PolyMap& f) {
  const std::vector<Poly> images{Poly::variable(2, 1), Poly::variable(2, 0)};
  return PolyMap({substitute(f[1], images), substitute(f[0], images)});
}

RatMatrix matrix2(long a, long b, long c, long d) {
  return RatMatrix(2, 2, {Rational(a), Rational(b), Rational(c), Rational(d)});
}

// Reads (u_1, u_2) back as (x + B(z), y - B(z)) with deg B <= m.
RankOneSpec planar_base(const PolyMap& base, unsigned m) {
  const auto z = recognize_zshift(base);
  if (!z) throw DomainError("the part of degree <= m is not of the form (x + B(x+y), y - B(x+y))");
  const CoeffTable& t = z->coeffs();
  RankOneSpec spec{{Rational(1), Rational(-1)}, std::vector<Rational>(m >= 2 ? m - 1 : 0, Rational(0))};
  for (unsigned l = 2; l <= t.max_degree(); ++l) {
    if (t.at(0, l) + t.at(1, l) != 0) {
      throw DomainError("the part of degree <= m is not of the form (x + B(x+y), y - B(x+y))");
    }
    if (l > m) {
      if (t.at(0, l) != 0) throw DomainError("base map has degree above m");
      continue;
    }
    spec.alphas[l - 2] = t.at(0, l);
  }
  return spec;
}

NormalForm2D normal_form_unswapped(const PolyMap& f, unsigned top) {
  const unsigned m = top - 1;
  const Poly W = f[0].homogeneous_part(top);
  const Poly w = f[1].homogeneous_part(top);
  const PolyMap base_map({f[0] - W, f[1] - w});

  NormalForm2D nf;
  nf.perturbation_degree = top;
  nf.base = planar_base(base_map, m);
  const bool l_zero = std::all_of(nf.base.alphas.begin(), nf.base.alphas.end(), [](const Rational& a) { return a == 0; });

  if (W.is_zero() && w.is_zero()) {
    nf.degenerate = true;
    nf.lambda = 0;
    nf.beta0 = 0;
    nf.alpha_top = 0;
    nf.case_tag = NormalFormCase::LNonzero;
    nf.a = RatMatrix::identity(2);
    return nf;
  }

  if (!(partial(W, 0) * partial(w, 1) - partial(w, 0) * partial(W, 1)).is_zero()) {
    throw DomainError("W_x w_y - w_x W_y is not identically zero");
  }

  if (w.is_zero()) {
    nf.lambda = 0;
  } else {
    const auto& [mono, coeff] = *W.terms().begin();
    nf.lambda = w.coefficient(mono) / coeff;
    if (w != W * nf.lambda) throw DomainError("w is not a constant multiple of W");
  }

  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  nf.beta0 = W.coefficient(Monomial::unit(2, 1, top));
  if (W != (y - x * nf.lambda).pow(top) * nf.beta0) {
    throw DomainError("W is not of the form beta0 * (y - lambda x)^(m+1)");
  }

  if (!l_zero) {
    if (nf.lambda != -1) throw DomainError("base map is not the identity but lambda = " + to_string(nf.lambda) + " != -1");
    nf.case_tag = NormalFormCase::LNonzero;
    nf.a = RatMatrix::identity(2);
    nf.alpha_top = nf.beta0;
  } else if (nf.lambda != 0) {
    nf.case_tag = NormalFormCase::LZeroLambdaNonzero;
    nf.a = RatMatrix(2, 2, {Rational(-nf.lambda), Rational(0), Rational(0), Rational(1)});
    nf.alpha_top = -nf.lambda * nf.beta0;
  } else {
    nf.case_tag = NormalFormCase::LZeroLambdaZero;
    nf.a = matrix2(1, 0, -1, 1);
    nf.alpha_top = nf.beta0;
  }
  return nf;
}

}  // namespace

NormalForm2D normal_form_2d(const PolyMap& f, std::optional<unsigned> m) {
  if (f.dim() != 2) throw DimensionError("normal form needs a map of dimension 2, got " + std::to_string(f.dim()));
  const KellerVerdict verdict = keller_check(f);
  if (!verdict.constant || *verdict.constant != 1) throw DomainError("det Df is not identically 1");

  const int deg = f.degree();
  unsigned top = static_cast<unsigned>(std::max(2, deg));
  if (m) {
    if (*m < 1) throw DomainError("m must be at least 1");
    top = *m + 1;
    if (deg > static_cast<int>(top)) throw DomainError("input has terms of degree above m+1");
  }

  const bool swap = f[0].homogeneous_part(top).is_zero() && !f[1].homogeneous_part(top).is_zero();
  NormalForm2D nf;
  if (swap) {
    nf = normal_form_unswapped(swap_coordinates(f), top);
    const RatMatrix s = matrix2(0, 1, 1, 0);
    nf.a = s * nf.a * s;
    nf.alpha_top = -nf.alpha_top;
    for (auto& a : nf.base.alphas) a = -a;
    nf.swapped = true;
  } else {
    nf = normal_form_unswapped(f, top);
  }

  if (nf.reconstruct() != f) throw VerificationError("A^-1 F A does not reproduce the input");
  const KellerVerdict normal = keller_check(nf.normal_map());
  if (!normal.constant || *normal.constant != 1) throw VerificationError("normal map is not Keller with determinant 1");
  return nf;
}

}  // namespace keller
