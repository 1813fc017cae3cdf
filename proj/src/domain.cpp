#include "keller/domain.hpp"

#include <limits>

#include "keller/errors.hpp"

namespace keller {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + " has dimension " + std::to_string(got) + ", expected " +
                         std::to_string(want));
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> x) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

struct Bound {
  std::optional<Rational> value;
  bool open = false;
};

// Keeps the tighter of two lower (upper when `upper`) bounds; on a tie the
// open one wins.
void tighten(Bound& cur, const Rational& v, bool open, bool upper) {
  if (!cur.value || (upper ? v < *cur.value : v > *cur.value)) {
    cur = {v, open};
  } else if (v == *cur.value) {
    cur.open = cur.open || open;
  }
}

}  // namespace

ConvexDomain ConvexDomain::box(std::vector<Interval> sides) {
  ConvexDomain d;
  d.n_ = sides.size();
  d.box_ = std::move(sides);
  return d;
}

ConvexDomain ConvexDomain::ball(Ball b) {
  if (b.radius <= 0) throw DomainError("ball radius must be positive");
  ConvexDomain d;
  d.n_ = b.center.size();
  d.balls_.push_back(std::move(b));
  return d;
}

ConvexDomain ConvexDomain::half_spaces(std::size_t n, std::vector<HalfSpace> hs) {
  for (const auto& h : hs) require_dim(h.a.size(), n, "half-space normal");
  ConvexDomain d;
  d.n_ = n;
  d.half_spaces_ = std::move(hs);
  return d;
}

ConvexDomain ConvexDomain::intersect(const ConvexDomain& other) const {
  require_dim(other.n_, n_, "intersected domain");
  ConvexDomain d = *this;
  if (other.box_) {
    if (!d.box_) {
      d.box_ = other.box_;
    } else {
      for (std::size_t i = 0; i < n_; ++i) {
        Interval& s = (*d.box_)[i];
        const Interval& t = (*other.box_)[i];
        if (t.lo > s.lo || (t.lo == s.lo && t.lo_open)) {
          s.lo = t.lo;
          s.lo_open = t.lo_open;
        }
        if (t.hi < s.hi || (t.hi == s.hi && t.hi_open)) {
          s.hi = t.hi;
          s.hi_open = t.hi_open;
        }
      }
    }
  }
  d.balls_.insert(d.balls_.end(), other.balls_.begin(), other.balls_.end());
  d.half_spaces_.insert(d.half_spaces_.end(), other.half_spaces_.begin(), other.half_spaces_.end());
  return d;
}

ConvexDomain::Kind ConvexDomain::kind() const {
  if (balls_.empty() && half_spaces_.empty()) return Kind::Box;
  if (!box_ && balls_.size() == 1 && half_spaces_.empty()) return Kind::Ball;
  return Kind::HalfSpaceIntersection;
}

bool ConvexDomain::contains(std::span<const Rational> x) const {
  require_dim(x.size(), n_, "point");
  if (box_) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(*box_)[i].contains(x[i])) return false;
    }
  }
  for (const auto& b : balls_) {
    Rational d2(0);
    for (std::size_t i = 0; i < n_; ++i) d2 += (x[i] - b.center[i]) * (x[i] - b.center[i]);
    const Rational r2 = b.radius * b.radius;
    if (b.strict ? d2 >= r2 : d2 > r2) return false;
  }
  for (const auto& h : half_spaces_) {
    const Rational v = dot(h.a, x);
    if (h.strict ? v >= h.b : v > h.b) return false;
  }
  return true;
}

std::vector<Interval> ConvexDomain::bounding_box() const {
  std::vector<Bound> lo(n_), hi(n_);
  if (box_) {
    for (std::size_t i = 0; i < n_; ++i) {
      lo[i] = {(*box_)[i].lo, (*box_)[i].lo_open};
      hi[i] = {(*box_)[i].hi, (*box_)[i].hi_open};
    }
  }
  for (const auto& b : balls_) {
    for (std::size_t i = 0; i < n_; ++i) {
      tighten(lo[i], b.center[i] - b.radius, b.strict, false);
      tighten(hi[i], b.center[i] + b.radius, b.strict, true);
    }
  }
  for (const auto& h : half_spaces_) {
    std::optional<std::size_t> axis;
    bool single = true;
    for (std::size_t i = 0; i < n_; ++i) {
      if (h.a[i] == 0) continue;
      if (axis) single = false;
      axis = i;
    }
    if (!axis || !single) continue;
    const Rational v = h.b / h.a[*axis];
    if (h.a[*axis] > 0) {
      tighten(hi[*axis], v, h.strict, true);
    } else {
      tighten(lo[*axis], v, h.strict, false);
    }
  }

  std::vector<Interval> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!lo[i].value || !hi[i].value) {
      throw DomainError("domain is unbounded along x" + std::to_string(i + 1) + "; add a box or ball constraint");
    }
    Interval side{*lo[i].value, *hi[i].value, lo[i].open, hi[i].open};
    if (side.is_empty()) throw DomainError("domain is empty along x" + std::to_string(i + 1));
    out.push_back(std::move(side));
  }
  return out;
}

bool ConvexDomain::may_intersect(std::span<const Interval> cell) const {
  require_dim(cell.size(), n_, "cell");
  if (box_) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (cell[i].hi < (*box_)[i].lo || cell[i].lo > (*box_)[i].hi) return false;
    }
  }
  for (const auto& b : balls_) {
    Rational d2(0);
    for (std::size_t i = 0; i < n_; ++i) {
      Rational gap(0);
      if (b.center[i] < cell[i].lo) gap = cell[i].lo - b.center[i];
      if (b.center[i] > cell[i].hi) gap = b.center[i] - cell[i].hi;
      d2 += gap * gap;
    }
    if (d2 > b.radius * b.radius) return false;
  }
  for (const auto& h : half_spaces_) {
    Rational least(0);
    for (std::size_t i = 0; i < n_; ++i) least += h.a[i] * (h.a[i] > 0 ? cell[i].lo : cell[i].hi);
    if (least > h.b) return false;
  }
  return true;
}

std::string to_string(ConvexDomain::Kind k) {
  switch (k) {
    case ConvexDomain::Kind::Box:
      return "box";
    case ConvexDomain::Kind::Ball:
      return "ball";
    case ConvexDomain::Kind::HalfSpaceIntersection:
      return "halfspace-intersection";
  }
  return "unknown";
}

std::string ConvexDomain::describe() const {
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += " & ";
  };
  if (box_) {
    out += "box(";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) out += ", ";
      out += to_string((*box_)[i]);
    }
    out += ")";
  }
  for (const auto& b : balls_) {
    sep();
    out += "ball(";
    for (std::size_t i = 0; i < n_; ++i) out += (i ? "," : "") + to_string(b.center[i]);
    out += "; " + to_string(b.radius) + (b.strict ? ")" : "; closed)");
  }
  for (const auto& h : half_spaces_) {
    sep();
    std::string lhs;
    for (std::size_t i = 0; i < n_; ++i) {
      if (h.a[i] == 0) continue;
      if (!lhs.empty()) lhs += " + ";
      lhs += to_string(h.a[i]) + "*x" + std::to_string(i + 1);
    }
    out += (lhs.empty() ? "0" : lhs) + (h.strict ? " < " : " <= ") + to_string(h.b);
  }
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

DomainSampler::DomainSampler(const ConvexDomain& domain, unsigned denominator_bits, std::uint64_t seed)
    : domain_(domain), box_(domain.bounding_box()), bits_(denominator_bits), rng_(seed) {
  if (bits_ > 62) throw DomainError("denominator bits must be at most 62");
}

std::vector<Rational> DomainSampler::next() {
  constexpr int kAttempts = 20000;
  const std::uint64_t steps = std::uint64_t{1} << bits_;
  Rational denom;
  mpz_ui_pow_ui(denom.get_num_mpz_t(), 2, bits_);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Rational> x;
    x.reserve(box_.size());
    for (const auto& side : box_) {
      const Rational j(static_cast<unsigned long>(uniform_below(rng_, steps + 1)));
      Rational v = side.lo + (side.hi - side.lo) * j / denom;
      v.canonicalize();
      x.push_back(std::move(v));
    }
    if (domain_.contains(x)) return x;
  }
  throw DomainError("no sample point found in the domain; it is empty or thinner than the sampling grid");
}

}  // namespace keller
