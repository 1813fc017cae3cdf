#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "keller/interval.hpp"
#include "keller/rational.hpp"

namespace keller {

/// a . x <= b, or a . x < b when strict.
struct HalfSpace {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

/// |x - center| < radius, or <= radius when not strict.
struct Ball {
  std::vector<Rational> center;
  Rational radius;
  bool strict = true;
};

/// Intersection of an optional box with balls and half-spaces. Every
/// constraint is convex, so the intersection is too.
class ConvexDomain {
 public:
  enum class Kind { Box, Ball, HalfSpaceIntersection };

  /// Closed box with the given sides.
  static ConvexDomain box(std::vector<Interval> sides);
  static ConvexDomain ball(Ball b);
  static ConvexDomain half_spaces(std::size_t n, std::vector<HalfSpace> hs);

  /// Throws DimensionError when the dimensions differ.
  ConvexDomain intersect(const ConvexDomain& other) const;

  Kind kind() const;
  std::size_t dim() const noexcept { return n_; }
  const std::optional<std::vector<Interval>>& box_sides() const noexcept { return box_; }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  const std::vector<HalfSpace>& half_spaces() const noexcept { return half_spaces_; }

  bool contains(std::span<const Rational> x) const;

  /// Smallest box, with open sides where the domain is strictly bounded,
  /// implied by the box, the balls and the axis-aligned half-spaces.
  /// Throws DomainError when a side is unbounded or empty.
  std::vector<Interval> bounding_box() const;

  /// False only if the closed cell certainly misses the domain.
  bool may_intersect(std::span<const Interval> cell) const;

  std::string describe() const;

 private:
  std::size_t n_ = 0;
  std::optional<std::vector<Interval>> box_;
  std::vector<Ball> balls_;
  std::vector<HalfSpace> half_spaces_;
};

std::string to_string(ConvexDomain::Kind k);

/// Uniform integer in [0, bound) by rejection, identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Draws points lo + (hi - lo) * j / 2^bits per coordinate of the bounding
/// box, keeping the first one inside the domain. Throws DomainError when
/// no grid point is found, which covers empty domains.
class DomainSampler {
 public:
  DomainSampler(const ConvexDomain& domain, unsigned denominator_bits, std::uint64_t seed);

  std::vector<Rational> next();

 private:
  const ConvexDomain& domain_;
  std::vector<Interval> box_;
  unsigned bits_;
  std::mt19937_64 rng_;
};

}  // namespace keller
