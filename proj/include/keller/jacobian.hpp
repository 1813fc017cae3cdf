#pragma once

#include <optional>

#include "keller/coeff_table.hpp"
#include "keller/matrix.hpp"
#include "keller/poly.hpp"

namespace keller {

/// Df with entry (i, j) = d f_j / d x_i, i.e. row i holds the derivatives
/// of every component with respect to x_i. This is the transpose of the
/// row-per-component layout; determinants are unaffected, and the segment
/// matrix in inject_cert uses the same orientation.
PolyMatrix jacobian_matrix(const PolyMap& f);

struct KellerVerdict {
  bool is_keller = false;
  Poly det;
  /// The nonzero constant value of det Df, set exactly when is_keller.
  std::optional<Rational> constant;
};

KellerVerdict keller_check(const PolyMap& f);

/// Closed form of det Df for f = X + sum_l P^(l) z^l:
/// 1 + sum_l l * (sum_k p_k^(l)) * z^(l-1).
Poly zshift_det_formula(const CoeffTable& p);

}  // namespace keller
