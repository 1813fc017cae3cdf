#include <gtest/gtest.h>

#include <set>

#include "keller/domain.hpp"
#include "keller/errors.hpp"
#include "keller/interval.hpp"
#include "oracles.hpp"

using namespace keller;
using keller::testing::Gen;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
Interval closed(Rational lo, Rational hi) { return {lo, hi, false, false}; }

}  // namespace

TEST(IntervalArith, SumsAndProductsTrackOpenEnds) {
  const Interval a{q(-1), q(2), true, false};
  const Interval b = closed(q(3), q(4));
  EXPECT_EQ(a + b, (Interval{q(2), q(6), true, false}));
  EXPECT_EQ(-a, (Interval{q(-2), q(1), false, true}));

  const Interval p = a * b;
  EXPECT_EQ(p.lo, q(-4));
  EXPECT_EQ(p.hi, q(8));
  EXPECT_TRUE(p.lo_open);
  EXPECT_FALSE(p.hi_open);

  // 0 is attained by [0,1] even though the other factor's ends are open.
  const Interval zero_end = closed(q(0), q(1)) * Interval{q(1), q(2), true, true};
  EXPECT_EQ(zero_end.lo, q(0));
  EXPECT_FALSE(zero_end.lo_open);
}

TEST(IntervalArith, EvenPowersStayNonnegative) {
  const Interval sq = pow(closed(q(-2), q(1)), 2);
  EXPECT_EQ(sq, closed(q(0), q(4)));
  EXPECT_EQ(pow(Interval{q(-1), q(1), true, true}, 2), (Interval{q(0), q(1), false, true}));
  EXPECT_EQ(pow(closed(q(-2), q(1)), 3), closed(q(-8), q(1)));
  EXPECT_EQ(pow(closed(q(2), q(3)), 0), Interval::point(q(1)));
}

TEST(IntervalArith, ContainsAndEmpty) {
  const Interval a{q(0), q(1), true, false};
  EXPECT_FALSE(a.contains_zero());
  EXPECT_TRUE(a.contains(q(1)));
  EXPECT_TRUE((Interval{q(1), q(1), true, false}).is_empty());
  EXPECT_EQ(to_string(a), "(0, 1]");
}

TEST(IntervalEnclose, ContainsEveryValueOnTheBox) {
  Gen gen(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const Poly p = gen.poly(n, 3, 4);
    std::vector<Interval> box;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational a = gen.rational(), b = gen.rational();
      box.push_back(closed(a < b ? a : b, a < b ? b : a));
    }
    const Interval e = enclose(p, box);
    for (int k = 0; k < 10; ++k) {
      std::vector<Rational> pt;
      for (const auto& side : box) {
        const Rational t = make_rational(gen.uniform(0, 8), 8);
        pt.push_back(side.lo + (side.hi - side.lo) * t);
      }
      EXPECT_TRUE(e.contains(evaluate(p, pt)));
    }
  }
}

TEST(Domain, KindsAndMembership) {
  const ConvexDomain box = ConvexDomain::box({closed(q(-1), q(1)), closed(q(-1), q(1))});
  EXPECT_EQ(box.kind(), ConvexDomain::Kind::Box);
  EXPECT_TRUE(box.contains(std::vector<Rational>{q(1), q(-1)}));
  EXPECT_FALSE(box.contains(std::vector<Rational>{q(2), q(0)}));

  const ConvexDomain disk = ConvexDomain::ball({{q(0), q(0)}, q(1), true});
  EXPECT_EQ(disk.kind(), ConvexDomain::Kind::Ball);
  EXPECT_FALSE(disk.contains(std::vector<Rational>{q(1), q(0)}));
  EXPECT_TRUE(disk.contains(std::vector<Rational>{q(1, 2), q(1, 2)}));

  const ConvexDomain right = ConvexDomain::half_spaces(2, {{{q(-1), q(0)}, q(0), true}});
  const ConvexDomain piece = box.intersect(right);
  EXPECT_EQ(piece.kind(), ConvexDomain::Kind::HalfSpaceIntersection);
  EXPECT_FALSE(piece.contains(std::vector<Rational>{q(0), q(0)}));
  EXPECT_EQ(to_string(piece.kind()), "halfspace-intersection");

  EXPECT_THROW(box.intersect(ConvexDomain::box({closed(q(0), q(1))})), DimensionError);
}

TEST(Domain, BoundingBoxTightensStrictSides) {
  const ConvexDomain box = ConvexDomain::box({closed(q(-1), q(1)), closed(q(-1), q(1))});
  const ConvexDomain right = box.intersect(ConvexDomain::half_spaces(2, {{{q(-1), q(0)}, q(0), true}}));
  const auto bb = right.bounding_box();
  EXPECT_EQ(bb[0], (Interval{q(0), q(1), true, false}));
  EXPECT_EQ(bb[1], closed(q(-1), q(1)));

  const auto disk = ConvexDomain::ball({{q(0), q(0)}, q(1), true}).bounding_box();
  EXPECT_EQ(disk[0], (Interval{q(-1), q(1), true, true}));

  EXPECT_THROW(ConvexDomain::half_spaces(2, {{{q(1), q(0)}, q(0), false}}).bounding_box(), DomainError);
}

TEST(Domain, MayIntersectIsConservative) {
  const ConvexDomain disk = ConvexDomain::ball({{q(0), q(0)}, q(1), true});
  const std::vector<Interval> far{closed(q(2), q(3)), closed(q(2), q(3))};
  const std::vector<Interval> near{closed(q(0), q(1, 2)), closed(q(0), q(1, 2))};
  EXPECT_FALSE(disk.may_intersect(far));
  EXPECT_TRUE(disk.may_intersect(near));
}

TEST(Sampler, DeterministicGridPointsInsideTheDomain) {
  const ConvexDomain disk = ConvexDomain::ball({{q(0), q(0)}, q(1), true});
  DomainSampler a(disk, 4, 7), b(disk, 4, 7);
  for (int i = 0; i < 50; ++i) {
    const auto p = a.next();
    EXPECT_EQ(p, b.next());
    EXPECT_TRUE(disk.contains(p));
    for (const auto& c : p) EXPECT_EQ(Rational(c * 16).get_den(), 1);
  }
}

TEST(Sampler, EmptyDomainThrows) {
  const ConvexDomain box = ConvexDomain::box({closed(q(0), q(1))});
  const ConvexDomain empty = box.intersect(ConvexDomain::half_spaces(1, {{{q(1)}, q(-1), false}}));
  EXPECT_THROW(DomainSampler(empty, 4, 1).next(), DomainError);
}

TEST(Sampler, UniformBelowStaysInRangeAndCoversIt) {
  std::mt19937_64 rng(5);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto v = uniform_below(rng, 7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}
