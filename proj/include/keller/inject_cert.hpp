#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "keller/complex_poly.hpp"
#include "keller/domain.hpp"
#include "keller/families.hpp"
#include "keller/interval.hpp"
#include "keller/matrix.hpp"

namespace keller {

enum class CertStatus { ProvenInjective, FailureWitness, Inconclusive };

std::string to_string(CertStatus s);

/// Two points with their segment matrix. A failure witness always has
/// det == 0, and values_collide records whether f(x1) == f(x2).
struct PairWitness {
  std::vector<Rational> x1;
  std::vector<Rational> x2;
  RatMatrix matrix;
  Rational det;
  std::vector<Rational> f1;
  std::vector<Rational> f2;
  bool values_collide = false;
};

struct SamplingStats {
  std::size_t pairs_tested = 0;
  Rational min_abs_det;
  std::size_t zero_det_pairs = 0;
};

/// Result of a grid certifier. `min_margin` is a lower bound on the
/// certified quantity over all cells that meet the domain.
struct GridEvidence {
  unsigned resolution = 0;
  std::size_t cells_checked = 0;
  std::string quantity;
  std::optional<Rational> min_margin;
  /// Shear check only: the angle as an exact point (cos, sin) of the unit
  /// circle and its approximate value in radians.
  std::optional<Rational> cos_gamma;
  std::optional<Rational> sin_gamma;
  std::optional<double> gamma;
  unsigned angles_tried = 0;
};

struct Certificate {
  CertStatus status = CertStatus::Inconclusive;
  std::string method;
  std::optional<PairWitness> witness;
  std::optional<SamplingStats> sampling;
  std::optional<GridEvidence> grid;
  /// Interval-Jacobian check only: enclosure of every segment determinant.
  std::optional<Interval> det_enclosure;
  std::vector<std::string> notes;
};

/// a_ij = integral over t in [0,1] of (d f_j / d x_i)(x1 + t (x2 - x1)),
/// computed exactly from the antiderivative of a polynomial in t.
RatMatrix segment_matrix(const PolyMap& f, std::span<const Rational> x1, std::span<const Rational> x2);
/// Same, reusing a precomputed jacobian_matrix(f).
RatMatrix segment_matrix(const PolyMatrix& jacobian, std::span<const Rational> x1, std::span<const Rational> x2);

struct SamplingOptions {
  /// Sample coordinates lie on a grid with 2^bits steps per side.
  unsigned denominator_bits = 8;
  /// Pairs checked before any random draw.
  std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> seed_pairs;
};

/// Tests random pairs from d (deterministic in `seed`). Reports a failure
/// witness only for a pair with f(x1) == f(x2); otherwise the result is
/// inconclusive with the smallest |det| seen. Never reports a proof.
Certificate certify_injective_sampling(const PolyMap& f, const ConvexDomain& d, std::size_t trials,
                                       std::uint64_t seed, const SamplingOptions& options = {});

/// For a Keller z-shift map every segment matrix has determinant
/// 1 + (sum of the column sums) * (...) = 1, which proves injectivity on
/// all of Q^n and R^n. Throws DomainError for non-Keller input.
Certificate certify_injective_symbolic_zshift(const ZShiftMap& f);

/// Encloses every Jacobian entry over the bounding box of d and evaluates
/// the determinant in interval arithmetic. Segment matrix entries are
/// averages of the same partials over points of d, so an enclosure that
/// excludes zero proves injectivity on d.
Certificate linewise_check(const PolyMap& f, const ConvexDomain& d);

/// For analytic f = u + i v on a planar domain, proves injectivity when
/// u_x = Re f' or v_x = Im f' keeps one strict sign over d. Each grid cell
/// that meets d contributes its center value minus a slack bounded by the
/// gradient enclosure on the cell.
Certificate analytic_pair_check(const ComplexPoly& f, const ConvexDomain& d, unsigned grid);

struct PlanarShearInput {
  ComplexPoly h;
  ComplexPoly g;
  Rational radius{1};
};

struct ShearOptions {
  unsigned gamma_steps = 360;
  /// Extra angles tried between the best angle and its neighbours.
  unsigned refine_steps = 8;
};

/// Searches for one angle gamma with Re(e^{i gamma} h'(z)) > |g'(z)| on the
/// disk |z| < radius. The disk's bounding square is split into grid x grid
/// cells and the condition is checked at each cell center with a slack
/// from global bounds on |h''| and |g''|.
Certificate planar_shear_check(const PlanarShearInput& input, unsigned grid, const ShearOptions& options = {});

/// Exact point of the unit circle near angle `gamma` (radians).
std::pair<Rational, Rational> unit_circle_point(double gamma);

/// Re(e^{i gamma} h'(z)) - |g'(z)| in floating point, for plotting.
double shear_margin(const PlanarShearInput& input, const Rational& cos_gamma, const Rational& sin_gamma,
                    const ComplexRational& z);

struct PValentOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned denominator_bits = 8;
};

struct PValentResult {
  /// Number of pieces when every piece is certified injective.
  std::optional<std::size_t> bound;
  std::vector<Certificate> pieces;
};

/// Certifies each piece with the strongest applicable criterion (closed
/// form for z-shift maps, then the interval Jacobian, then sampling).
PValentResult pvalent_bound(const PolyMap& f, std::span<const ConvexDomain> pieces, const PValentOptions& options = {});

}  // namespace keller
