#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "keller/families.hpp"

namespace keller {

/// product = factors[0] ∘ factors[1] ∘ ... ∘ factors[N-1], each factor a
/// rank-one map with zero gamma sum.
struct Factorization {
  std::vector<RankOneSpec> factors;
  ZShiftMap product;
};

/// Composite of rank-one factors read off directly as
/// p_k^(l) = sum_j gamma_k^(j) * alpha_l^(j). Factors of lower degree are
/// padded with zero alphas. Throws DomainError on a nonzero gamma sum.
/// With `verify`, the table is also checked against compose_iterated and a
/// mismatch raises VerificationError.
ZShiftMap compose_closed_form(std::span<const RankOneSpec> factors, bool verify = false);

/// Same composite, obtained by expanding the compositions one factor at a
/// time. Used to cross-check compose_closed_form.
PolyMap compose_iterated(std::span<const RankOneSpec> factors);

/// Splits a Keller z-shift map into n-1 rank-one factors with
/// gamma^(j) = e_j - e_(j+1); the alphas of degree l come from one exact
/// linear solve per degree.
Factorization decompose(const ZShiftMap& f);

/// Nonzero 2x2 minor of the coefficient table: rows k1 < k2 (0-based
/// coordinates), columns l1 < l2 (degrees).
struct MinorWitness {
  std::size_t row1 = 0;
  std::size_t row2 = 0;
  unsigned degree1 = 0;
  unsigned degree2 = 0;
  Rational value;
};

struct Membership {
  bool member = false;
  /// Set for members; build_rank_one(*spec) reproduces the input table.
  std::optional<RankOneSpec> spec;
  /// Set for non-members.
  std::optional<MinorWitness> witness;
};

/// Decides whether a Keller z-shift map is a single rank-one map, i.e.
/// whether its n x (m-1) coefficient table has rank at most one.
Membership rank_one_membership(const ZShiftMap& f);

enum class NormalFormCase { LNonzero, LZeroLambdaNonzero, LZeroLambdaZero };

std::string to_string(NormalFormCase c);

/// f~ = A^-1 ∘ F ∘ A with
/// F = (u_1 + a (x+y)^(m+1), u_2 - a (x+y)^(m+1)), a = alpha_top.
struct NormalForm2D {
  RatMatrix a;
  Rational alpha_top;
  /// Unperturbed map (u_1, u_2); gamma = (1, -1).
  RankOneSpec base;
  /// m + 1
  unsigned perturbation_degree = 2;
  NormalFormCase case_tag = NormalFormCase::LNonzero;
  /// w = lambda * W
  Rational lambda;
  /// W = beta0 * (y - lambda x)^(m+1)
  Rational beta0;
  /// The input was handled in swapped coordinates (W = 0, w != 0); lambda
  /// and beta0 then describe the swapped map (y, x) -> f(y, x) reversed.
  bool swapped = false;
  /// W = w = 0: nothing to normalize; reported as L-nonzero with A = I and
  /// alpha_top = 0.
  bool degenerate = false;

  PolyMap normal_map() const;
  /// A^-1 ∘ F ∘ A
  PolyMap reconstruct() const;
};

/// Normal form of a planar map f~ = (u_1 + W, u_2 + w) with det Df~ = 1,
/// where (u_1, u_2) is a rank-one map of degree <= m and W, w are
/// homogeneous of degree m + 1. Without `m`, the top total degree of f~ is
/// taken as m + 1. Throws DomainError when the input is outside this shape.
NormalForm2D normal_form_2d(const PolyMap& f, std::optional<unsigned> m = std::nullopt);

}  // namespace keller
