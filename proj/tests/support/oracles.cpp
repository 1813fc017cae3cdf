#include "oracles.hpp"

#include <algorithm>
#include <numeric>

#include "keller/domain.hpp"

namespace keller::testing {

namespace {

void compositions(std::size_t n, unsigned remaining, std::vector<std::uint32_t>& cur, std::size_t pos,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    compositions(n, remaining - e, cur, pos + 1, out);
  }
}

mpz_class factorial(unsigned k) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

Poly multinomial_power(std::size_t n, unsigned l) {
  Poly out(n);
  std::vector<std::vector<std::uint32_t>> exps;
  std::vector<std::uint32_t> cur(n, 0);
  compositions(n, l, cur, 0, exps);
  for (const auto& e : exps) {
    mpz_class denom = 1;
    for (const auto k : e) denom *= factorial(k);
    Rational c(factorial(l), denom);
    c.canonicalize();
    out.add_term(Monomial(e), c);
  }
  return out;
}

PolyMap expand_table(const CoeffTable& table) {
  const std::size_t n = table.dim();
  std::vector<Poly> powers;
  for (unsigned l = 2; l <= table.max_degree(); ++l) powers.push_back(multinomial_power(n, l));
  std::vector<Poly> comps;
  for (std::size_t k = 0; k < n; ++k) {
    Poly c(n);
    c.add_term(Monomial::unit(n, k), Rational(1));
    for (unsigned l = 2; l <= table.max_degree(); ++l) {
      for (const auto& [mono, coeff] : powers[l - 2].terms()) c.add_term(mono, coeff * table.at(k, l));
    }
    comps.push_back(std::move(c));
  }
  return PolyMap(std::move(comps));
}

std::vector<Rational> eval_table(const CoeffTable& table, const std::vector<Rational>& x) {
  const Rational z = std::accumulate(x.begin(), x.end(), Rational(0));
  std::vector<Rational> out = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Rational zl = z;
    for (unsigned l = 2; l <= table.max_degree(); ++l) {
      zl *= z;
      out[k] += table.at(k, l) * zl;
    }
  }
  return out;
}

Rational leibniz_det(const RatMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Poly laplace_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(m.ring_dim(), Rational(1));
  if (n == 1) return m(0, 0);
  Poly total(m.ring_dim());
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, m.ring_dim());
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        minor.set(r - 1, cc++, m(r, k));
      }
    }
    const Poly term = m(0, c) * laplace_det(minor);
    if (c % 2) total -= term;
    else total += term;
  }
  return total;
}

std::vector<Rational> segment_increment(const RatMatrix& a, const std::vector<Rational>& x1,
                                        const std::vector<Rational>& x2) {
  std::vector<Rational> out(a.cols(), Rational(0));
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out[j] += a(i, j) * (x2[i] - x1[i]);
  return out;
}

int Gen::uniform(int lo, int hi) {
  return lo + static_cast<int>(uniform_below(rng_, static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Gen::rational() { return make_rational(uniform(-9, 9), uniform(1, 9)); }

Rational Gen::nonzero_rational() {
  int num = 0;
  while (num == 0) num = uniform(-9, 9);
  return make_rational(num, uniform(1, 9));
}

std::vector<Rational> Gen::point(std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(rational());
  return p;
}

std::pair<std::vector<Rational>, std::vector<Rational>> Gen::distinct_pair(std::size_t n) {
  auto a = point(n);
  auto b = point(n);
  while (b == a) b = point(n);
  return {std::move(a), std::move(b)};
}

std::vector<Rational> Gen::zero_sum_vector(std::size_t n) {
  std::vector<Rational> v;
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v.push_back(rational());
    sum += v.back();
  }
  v.push_back(-sum);
  return v;
}

RankOneSpec Gen::rank_one(std::size_t n, unsigned m) {
  RankOneSpec s;
  s.gamma = zero_sum_vector(n);
  for (unsigned l = 2; l <= m; ++l) s.alphas.push_back(rational());
  return s;
}

CoeffTable Gen::keller_table(std::size_t n, unsigned m) {
  CoeffTable t(n, m);
  for (unsigned l = 2; l <= m; ++l) {
    const auto col = zero_sum_vector(n);
    for (std::size_t k = 0; k < n; ++k) t.at(k, l) = col[k];
  }
  return t;
}

CoeffTable Gen::any_table(std::size_t n, unsigned m) {
  CoeffTable t(n, m);
  for (unsigned l = 2; l <= m; ++l)
    for (std::size_t k = 0; k < n; ++k) t.at(k, l) = rational();
  return t;
}

Poly Gen::poly(std::size_t n, unsigned deg, unsigned terms) {
  Poly p(n);
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    unsigned budget = static_cast<unsigned>(uniform(0, static_cast<int>(deg)));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const unsigned take = i + 1 == n ? budget : static_cast<unsigned>(uniform(0, static_cast<int>(budget)));
      e[i] = take;
      budget -= take;
    }
    p.add_term(Monomial(e), rational());
  }
  return p;
}

RatMatrix Gen::invertible_matrix(std::size_t n) {
  for (;;) {
    RatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rational();
    if (leibniz_det(m) != 0) return m;
  }
}

}  // namespace keller::testing
