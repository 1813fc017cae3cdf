#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "keller/complex_poly.hpp"
#include "keller/domain.hpp"
#include "keller/families.hpp"

namespace keller::cli {

/// A map read from text. Expression input fills only `map`; the family
/// format also keeps the parameters it was built from.
struct MapSource {
  PolyMap map;
  /// "" for expression input, otherwise "rank-one", "zero-sum" or "factors".
  std::string family;
  std::optional<ZShiftMap> zshift;
  std::optional<RankOneSpec> rank_one;
  std::vector<RankOneSpec> factors;
  /// Conjugating matrices of a rank-one family, X -> a * f(b * X).
  std::optional<RatMatrix> a;
  std::optional<RatMatrix> b;

  /// The z-shift structure, given explicitly or recognized from the map.
  std::optional<ZShiftMap> as_zshift() const;
};

/// One expression per component. With `n` unset the dimension is the
/// number of components.
MapSource map_from_expressions(const std::vector<std::string>& exprs, std::optional<std::size_t> n = std::nullopt);

/// Reads a map file: either one component per line, with '#' comments and
/// blank lines ignored, or the key/value family format
///
///   family = "rank-one"        # or "zero-sum", "factors"
///   n = 3
///   m = 3
///   gamma = [1, 2, -3]         # rank-one
///   alpha = [1, 2]             # alpha_2 .. alpha_m
///   p2 = [-11, 6, 5]           # zero-sum: coefficients of z^2 per coordinate
///   factor1.gamma = [...]      # factors, numbered from 1
///
/// The zero-sum and factor families are validated while reading.
MapSource parse_map_text(std::string_view text, std::optional<std::size_t> n = std::nullopt);

/// Canonical text of a map, one component per line; parse_map_text reads
/// it back to the same map.
std::string canonical_text(const PolyMap& f);

/// Constraints joined by '&':
///   box(-1:1, -1:1)            closed box, one lo:hi per coordinate
///   ball(0, 0; 1)              open ball with center and radius
///   ball(0, 0; 1; closed)      closed ball
///   x1 + 2*x2 <= 3             linear inequality (<, <=, >, >=)
ConvexDomain parse_domain(std::string_view text, std::size_t n);

/// Comma-separated rational coordinates.
std::vector<Rational> parse_point(std::string_view text);

/// Polynomial in z; the name i is the imaginary unit.
ComplexPoly parse_complex_poly(std::string_view text);

}  // namespace keller::cli
