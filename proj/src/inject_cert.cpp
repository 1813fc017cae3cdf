#include "keller/inject_cert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "keller/errors.hpp"
#include "keller/jacobian.hpp"

namespace keller {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::ProvenInjective:
      return "proven-injective";
    case CertStatus::FailureWitness:
      return "failure-witness";
    case CertStatus::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

using Univariate = std::vector<Rational>;

Univariate mul(const Univariate& a, const Univariate& b) {
  Univariate out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

RatMatrix segment_matrix(const PolyMatrix& jacobian, std::span<const Rational> x1, std::span<const Rational> x2) {
  const std::size_t n = jacobian.ring_dim();
  if (x1.size() != n || x2.size() != n) throw DimensionError("segment endpoints must have dimension " + std::to_string(n));
  if (std::equal(x1.begin(), x1.end(), x2.begin())) throw DomainError("segment endpoints coincide");

  std::vector<unsigned> max_exp(n, 0);
  for (std::size_t r = 0; r < jacobian.rows(); ++r) {
    for (std::size_t c = 0; c < jacobian.cols(); ++c) {
      for (const auto& [mono, coeff] : jacobian(r, c).terms()) {
        for (std::size_t k = 0; k < n; ++k) max_exp[k] = std::max(max_exp[k], mono[k]);
      }
    }
  }
  // powers[k][e] = (x1_k + t (x2_k - x1_k))^e as coefficients in t
  std::vector<std::vector<Univariate>> powers(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Univariate line{x1[k], x2[k] - x1[k]};
    powers[k].push_back({Rational(1)});
    for (unsigned e = 1; e <= max_exp[k]; ++e) powers[k].push_back(mul(powers[k].back(), line));
  }

  RatMatrix out(jacobian.rows(), jacobian.cols());
  for (std::size_t r = 0; r < jacobian.rows(); ++r) {
    for (std::size_t c = 0; c < jacobian.cols(); ++c) {
      Univariate acc{Rational(0)};
      for (const auto& [mono, coeff] : jacobian(r, c).terms()) {
        Univariate term{coeff};
        for (std::size_t k = 0; k < n; ++k) {
          if (mono[k] > 0) term = mul(term, powers[k][mono[k]]);
        }
        if (acc.size() < term.size()) acc.resize(term.size(), Rational(0));
        for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
      }
      Rational integral(0);
      for (std::size_t i = 0; i < acc.size(); ++i) integral += acc[i] / Rational(static_cast<unsigned long>(i + 1));
      out(r, c) = integral;
    }
  }
  return out;
}

RatMatrix segment_matrix(const PolyMap& f, std::span<const Rational> x1, std::span<const Rational> x2) {
  return segment_matrix(jacobian_matrix(f), x1, x2);
}

namespace {

std::optional<PairWitness> check_pair(const PolyMap& f, const PolyMatrix& jac, std::vector<Rational> x1,
                                      std::vector<Rational> x2, SamplingStats& stats) {
  RatMatrix a = segment_matrix(jac, x1, x2);
  Rational det = determinant(a);
  const Rational abs_det = abs_value(det);
  if (stats.pairs_tested == 0 || abs_det < stats.min_abs_det) stats.min_abs_det = abs_det;
  ++stats.pairs_tested;
  if (det != 0) return std::nullopt;
  ++stats.zero_det_pairs;

  auto f1 = evaluate(f, x1);
  auto f2 = evaluate(f, x2);
  if (f1 != f2) return std::nullopt;
  return PairWitness{std::move(x1), std::move(x2), std::move(a), std::move(det), std::move(f1), std::move(f2), true};
}

}  // namespace

Certificate certify_injective_sampling(const PolyMap& f, const ConvexDomain& d, std::size_t trials,
                                       std::uint64_t seed, const SamplingOptions& options) {
  if (trials < 1) throw DomainError("at least one trial is required");
  if (d.dim() != f.dim()) throw DimensionError("domain and map dimensions differ");
  const PolyMatrix jac = jacobian_matrix(f);
  Certificate cert;
  cert.method = "segment-sampling";
  SamplingStats stats;

  auto finish_witness = [&](PairWitness w) {
    // An independent recheck before emitting.
    if (determinant(segment_matrix(f, w.x1, w.x2)) != 0 || evaluate(f, w.x1) != evaluate(f, w.x2)) {
      throw VerificationError("failure witness did not survive recomputation");
    }
    cert.status = CertStatus::FailureWitness;
    cert.witness = std::move(w);
    cert.sampling = stats;
    cert.notes.push_back("f takes the same value at two distinct points of the domain");
    return cert;
  };

  for (const auto& [x1, x2] : options.seed_pairs) {
    if (!d.contains(x1) || !d.contains(x2)) throw DomainError("seed pair lies outside the domain");
    if (x1 == x2) throw DomainError("seed pair points coincide");
    if (auto w = check_pair(f, jac, x1, x2, stats)) return finish_witness(std::move(*w));
  }

  DomainSampler sampler(d, options.denominator_bits, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto x1 = sampler.next();
    auto x2 = sampler.next();
    for (int redraw = 0; x1 == x2 && redraw < 64; ++redraw) x2 = sampler.next();
    if (x1 == x2) continue;
    if (auto w = check_pair(f, jac, std::move(x1), std::move(x2), stats)) return finish_witness(std::move(*w));
  }

  cert.status = CertStatus::Inconclusive;
  cert.sampling = stats;
  cert.notes.push_back("sampled pairs cannot establish injectivity for all pairs");
  return cert;
}

Certificate certify_injective_symbolic_zshift(const ZShiftMap& f) {
  if (!f.is_keller()) throw DomainError("closed-form certificate requires zero column sums");
  Certificate cert;
  cert.status = CertStatus::ProvenInjective;
  cert.method = "zshift-closed-form";
  cert.notes.push_back("every segment matrix is I plus a rank-one matrix of zero trace, so its determinant is 1");
  return cert;
}

namespace {

Interval interval_det(const std::vector<std::vector<Interval>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Interval acc = Interval::point(Rational(0));
  for (std::size_t c = 0; c < n; ++c) {
    const Interval& e = m[0][c];
    if (e.lo == 0 && e.hi == 0) continue;
    std::vector<std::vector<Interval>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Interval> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Interval term = e * interval_det(minor);
    acc = c % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

Rational abs_sup(const Interval& iv) { return std::max(abs_value(iv.lo), abs_value(iv.hi)); }

}  // namespace

Certificate linewise_check(const PolyMap& f, const ConvexDomain& d) {
  const std::size_t n = f.dim();
  if (d.dim() != n) throw DimensionError("domain and map dimensions differ");
  if (n > 8) throw LimitError("interval determinant supports dimension at most 8");
  const auto box = d.bounding_box();
  const PolyMatrix jac = jacobian_matrix(f);
  std::vector<std::vector<Interval>> m(n, std::vector<Interval>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = enclose(jac(i, j), box);
  }
  Certificate cert;
  cert.method = "interval-jacobian";
  cert.det_enclosure = interval_det(m);
  if (cert.det_enclosure->contains_zero()) {
    cert.status = CertStatus::Inconclusive;
    cert.notes.push_back("determinant enclosure " + to_string(*cert.det_enclosure) + " contains 0");
  } else {
    cert.status = CertStatus::ProvenInjective;
    cert.notes.push_back("determinant enclosure " + to_string(*cert.det_enclosure) + " excludes 0");
  }
  return cert;
}

namespace {

struct Cell {
  std::vector<Interval> box;
  std::vector<Rational> center;
};

std::vector<Cell> grid_cells(const ConvexDomain& d, const std::vector<Interval>& outer, unsigned grid) {
  const Rational g(grid);
  std::vector<Rational> w;
  for (const auto& s : outer) w.push_back((s.hi - s.lo) / g);
  std::vector<Cell> cells;
  for (unsigned a = 0; a < grid; ++a) {
    for (unsigned b = 0; b < grid; ++b) {
      const unsigned idx[2] = {a, b};
      Cell c;
      for (std::size_t k = 0; k < 2; ++k) {
        const Rational lo = outer[k].lo + w[k] * Rational(idx[k]);
        const Rational hi = lo + w[k];
        c.box.push_back({lo, hi, false, false});
        c.center.push_back((lo + hi) / 2);
      }
      if (d.may_intersect(c.box)) cells.push_back(std::move(c));
    }
  }
  return cells;
}

// Smallest |q| - slack over cells if q has one strict sign on all of them.
std::optional<Rational> sign_margin(const Poly& q, const std::vector<Cell>& cells, int& sign) {
  const Poly qx = partial(q, 0);
  const Poly qy = partial(q, 1);
  std::optional<Rational> margin;
  sign = 0;
  for (const auto& c : cells) {
    const Rational v = evaluate(q, c.center);
    const Rational slack = abs_sup(enclose(qx, c.box)) * (c.box[0].hi - c.box[0].lo) / 2 +
                           abs_sup(enclose(qy, c.box)) * (c.box[1].hi - c.box[1].lo) / 2;
    int s = 0;
    if (v - slack > 0) s = 1;
    if (v + slack < 0) s = -1;
    if (s == 0 || (sign != 0 && s != sign)) return std::nullopt;
    sign = s;
    const Rational m = abs_value(v) - slack;
    if (!margin || m < *margin) margin = m;
  }
  return margin;
}

}  // namespace

Certificate analytic_pair_check(const ComplexPoly& f, const ConvexDomain& d, unsigned grid) {
  if (grid == 0) throw DomainError("grid resolution must be positive");
  if (d.dim() != 2) throw DimensionError("analytic check needs a planar domain");
  const auto cells = grid_cells(d, d.bounding_box(), grid);
  if (cells.empty()) throw DomainError("no grid cell meets the domain");
  const auto [ux, vx] = f.derivative().real_parts();

  Certificate cert;
  cert.method = "analytic-pair";
  GridEvidence ev;
  ev.resolution = grid;
  ev.cells_checked = cells.size();
  const std::pair<const Poly*, const char*> candidates[] = {{&ux, "u_x"}, {&vx, "v_x"}};
  for (const auto& [q, name] : candidates) {
    int sign = 0;
    if (auto m = sign_margin(*q, cells, sign)) {
      ev.quantity = name;
      ev.min_margin = *m;
      cert.status = CertStatus::ProvenInjective;
      cert.grid = ev;
      cert.notes.push_back(std::string(name) + (sign > 0 ? " > 0" : " < 0") + " throughout the domain");
      return cert;
    }
  }
  ev.quantity = "u_x, v_x";
  cert.status = CertStatus::Inconclusive;
  cert.grid = ev;
  cert.notes.push_back("neither u_x nor v_x was shown to keep a strict sign on the grid");
  return cert;
}

std::pair<Rational, Rational> unit_circle_point(double gamma) {
  const double t = std::tan(gamma / 2);
  if (!std::isfinite(t) || std::abs(t) > 1e12) return {Rational(-1), Rational(0)};
  const Rational q(t);
  const Rational one(1);
  const Rational den = one + q * q;
  return {(one - q * q) / den, 2 * q / den};
}

double shear_margin(const PlanarShearInput& input, const Rational& cos_gamma, const Rational& sin_gamma,
                    const ComplexRational& z) {
  const ComplexRational hp = input.h.derivative().evaluate(z);
  const ComplexRational gp = input.g.derivative().evaluate(z);
  const Rational re = cos_gamma * hp.re - sin_gamma * hp.im;
  return to_double(re) - std::sqrt(to_double(gp.norm2()));
}

namespace {

struct ShearCell {
  Rational hp_re;
  Rational hp_im;
  Rational gp_norm2;
};

struct AngleResult {
  bool certified = false;
  /// Smallest (lower - |g'|) seen before the scan stopped.
  Rational worst;
  std::size_t failing_cell = 0;
};

}  // namespace

Certificate planar_shear_check(const PlanarShearInput& input, unsigned grid, const ShearOptions& options) {
  if (grid == 0) throw DomainError("grid resolution must be positive");
  if (options.gamma_steps == 0) throw DomainError("gamma_steps must be positive");
  if (input.radius <= 0) throw DomainError("disk radius must be positive");

  const Rational r = input.radius;
  const auto disk = ConvexDomain::ball({{Rational(0), Rational(0)}, r, true});
  const auto cells = grid_cells(disk, {{-r, r, false, false}, {-r, r, false, false}}, grid);

  const ComplexPoly hp = input.h.derivative();
  const ComplexPoly gp = input.g.derivative();
  // Every cell lies inside the square [-r, r]^2, within radius r * sqrt(2).
  const Rational outer = sqrt_upper(2 * r * r);
  const Rational lipschitz = hp.derivative().modulus_bound(outer) + gp.derivative().modulus_bound(outer);
  // Half-diagonal of a cell, bounded by half the sum of its sides.
  const Rational delta = 2 * r / Rational(grid);
  const Rational slack = lipschitz * delta;

  std::vector<ShearCell> data;
  data.reserve(cells.size());
  for (const auto& c : cells) {
    const ComplexRational z{c.center[0], c.center[1]};
    const ComplexRational h1 = hp.evaluate(z);
    data.push_back({h1.re, h1.im, gp.evaluate(z).norm2()});
  }

  std::size_t hint = 0;
  std::optional<Rational> best_worst;
  auto try_angle = [&](const Rational& cs, const Rational& sn) {
    AngleResult res;
    bool first = true;
    auto visit = [&](std::size_t i) {
      const ShearCell& c = data[i];
      const Rational lower = cs * c.hp_re - sn * c.hp_im - slack;
      const bool ok = lower > 0 && lower * lower > c.gp_norm2;
      const Rational value = lower - Rational(std::sqrt(to_double(c.gp_norm2)));
      if (first || value < res.worst) {
        res.worst = value;
        first = false;
      }
      if (!ok) res.failing_cell = i;
      return ok;
    };
    bool all_ok = true;
    // The last failing cell is the most likely to fail again.
    if (!visit(hint)) {
      all_ok = false;
      if (best_worst && res.worst < *best_worst) return res;
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (i == hint) continue;
      if (!visit(i)) {
        all_ok = false;
        if (best_worst && res.worst < *best_worst) break;
      }
    }
    res.certified = all_ok;
    return res;
  };

  Certificate cert;
  cert.method = "planar-shear";
  GridEvidence ev;
  ev.resolution = grid;
  ev.cells_checked = data.size();
  ev.quantity = "Re(e^{i gamma} h') - |g'|";

  const double step = 2 * M_PI / options.gamma_steps;
  std::optional<double> best_angle;
  auto record = [&](double gamma, const Rational& cs, const Rational& sn, const AngleResult& res) {
    ++ev.angles_tried;
    if (res.certified) {
      ev.gamma = gamma;
      ev.cos_gamma = cs;
      ev.sin_gamma = sn;
      // A conservative margin: center value minus slack and an upper bound on |g'|.
      Rational worst;
      bool first = true;
      for (const auto& c : data) {
        const Rational v = cs * c.hp_re - sn * c.hp_im - slack - sqrt_upper(c.gp_norm2);
        if (first || v < worst) worst = v;
        first = false;
      }
      ev.min_margin = worst;
      return true;
    }
    hint = res.failing_cell;
    if (!best_worst || res.worst > *best_worst) {
      best_worst = res.worst;
      best_angle = gamma;
    }
    return false;
  };

  auto angle_point = [](unsigned k, unsigned steps) -> std::pair<Rational, Rational> {
    if (k == 0) return {Rational(1), Rational(0)};
    if (2 * k == steps) return {Rational(-1), Rational(0)};
    return unit_circle_point(2 * M_PI * (static_cast<double>(k) / static_cast<double>(steps)));
  };

  for (unsigned k = 0; k < options.gamma_steps; ++k) {
    const auto [cs, sn] = angle_point(k, options.gamma_steps);
    const double gamma = 2 * M_PI * (static_cast<double>(k) / static_cast<double>(options.gamma_steps));
    if (record(gamma, cs, sn, try_angle(cs, sn))) {
      cert.status = CertStatus::ProvenInjective;
      cert.grid = ev;
      cert.notes.push_back("close-to-convex: one angle satisfies the shear condition on every cell");
      return cert;
    }
  }
  if (best_angle) {
    const double center = *best_angle;
    for (unsigned j = 1; j < options.refine_steps; ++j) {
      for (const double sign : {1.0, -1.0}) {
        const double gamma = center + sign * step * j / options.refine_steps;
        const auto [cs, sn] = unit_circle_point(gamma);
        if (record(gamma, cs, sn, try_angle(cs, sn))) {
          cert.status = CertStatus::ProvenInjective;
          cert.grid = ev;
          cert.notes.push_back("close-to-convex: a refined angle satisfies the shear condition on every cell");
          return cert;
        }
      }
    }
  }
  cert.status = CertStatus::Inconclusive;
  if (best_angle) {
    ev.gamma = *best_angle;
    ev.min_margin = best_worst;
  }
  cert.grid = ev;
  cert.notes.push_back("no angle satisfied the shear condition on every cell");
  return cert;
}

PValentResult pvalent_bound(const PolyMap& f, std::span<const ConvexDomain> pieces, const PValentOptions& options) {
  if (pieces.empty()) throw DomainError("at least one piece is required");
  PValentResult out;
  const auto z = recognize_zshift(f);
  const bool closed_form = z && z->is_keller();
  bool all = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Certificate c;
    if (closed_form) {
      if (pieces[i].dim() != f.dim()) throw DimensionError("piece and map dimensions differ");
      c = certify_injective_symbolic_zshift(*z);
    } else {
      c = linewise_check(f, pieces[i]);
      if (c.status != CertStatus::ProvenInjective) {
        SamplingOptions so;
        so.denominator_bits = options.denominator_bits;
        c = certify_injective_sampling(f, pieces[i], options.trials, options.seed + i, so);
      }
    }
    all = all && c.status == CertStatus::ProvenInjective;
    out.pieces.push_back(std::move(c));
  }
  if (all) out.bound = pieces.size();
  return out;
}

}  // namespace keller
