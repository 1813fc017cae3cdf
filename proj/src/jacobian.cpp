#include "keller/jacobian.hpp"

namespace keller {

PolyMatrix jacobian_matrix(const PolyMap& f) {
  const std::size_t n = f.dim();
  PolyMatrix df(n, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) df.set(i, j, partial(f[j], i));
  }
  return df;
}

KellerVerdict keller_check(const PolyMap& f) {
  KellerVerdict v;
  v.det = determinant(jacobian_matrix(f));
  if (!v.det.is_zero() && v.det.is_constant()) {
    v.is_keller = true;
    v.constant = v.det.constant_term();
  }
  return v;
}

Poly zshift_det_formula(const CoeffTable& p) {
  const std::size_t n = p.dim();
  const Poly z = coordinate_sum(n);
  Poly det = Poly::constant(n, Rational(1));
  Poly z_power = Poly::constant(n, Rational(1));  // z^(l-1)
  for (unsigned l = 2; l <= p.max_degree(); ++l) {
    z_power *= z;
    const Rational weight = p.column_sum(l) * l;
    if (weight != 0) det += z_power * weight;
  }
  return det;
}

}  // namespace keller
