#include "keller/cli/report.hpp"

#include <cstdio>

namespace keller::cli {

Json Render::number(const Rational& q) const {
  if (as_float) return to_double(q);
  return to_string(q);
}

Json Render::numbers(std::span<const Rational> v) const {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(number(q));
  return out;
}

Json Render::matrix(const RatMatrix& m) const {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json Render::table(const CoeffTable& t) const {
  Json degrees = Json::array();
  for (unsigned l = 2; l <= t.max_degree(); ++l) degrees.push_back(l);
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.dim(); ++k) rows.push_back(numbers(t.row(k)));
  return {{"degrees", std::move(degrees)}, {"rows", std::move(rows)}};
}

Json Render::spec(const RankOneSpec& s) const {
  return {{"gamma", numbers(s.gamma)}, {"alpha", numbers(s.alphas)}};
}

Json Render::interval(const Interval& iv) const {
  return {{"lo", number(iv.lo)}, {"hi", number(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

Json poly_json(const Poly& p) { return to_string(p); }

Json map_json(const PolyMap& f) {
  Json out = Json::array();
  for (const auto& c : f.components()) out.push_back(poly_json(c));
  return out;
}

Json poly_matrix_json(const PolyMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(poly_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json jacobian_json(const PolyMap& f, const Render&) {
  const PolyMatrix j = jacobian_matrix(f);
  return {{"dimension", f.dim()}, {"matrix", poly_matrix_json(j)}, {"determinant", poly_json(determinant(j))}};
}

Json verdict_json(const KellerVerdict& v, const Render& r) {
  return {{"is_keller", v.is_keller},
          {"determinant", poly_json(v.det)},
          {"constant", v.constant ? r.number(*v.constant) : Json(nullptr)}};
}

Json inverse_json(const ZShiftMap& inverse, const Render& r) {
  return {{"map", map_json(inverse.to_poly_map())}, {"table", r.table(inverse.coeffs())}};
}

Json composition_json(const PolyMap& composite, const Render&) {
  return {{"map", map_json(composite)}, {"is_identity", composite.is_identity()}};
}

Json factorization_json(const Factorization& f, const Render& r) {
  Json factors = Json::array();
  for (const auto& s : f.factors) factors.push_back(r.spec(s));
  return {{"factor_count", f.factors.size()}, {"factors", std::move(factors)}, {"product", r.table(f.product.coeffs())}};
}

Json membership_json(const Membership& m, const Render& r) {
  Json out{{"member", m.member}};
  out["spec"] = m.spec ? r.spec(*m.spec) : Json(nullptr);
  if (m.witness) {
    const auto& w = *m.witness;
    out["witness"] = {{"coordinates", {w.row1 + 1, w.row2 + 1}},
                      {"degrees", {w.degree1, w.degree2}},
                      {"minor", r.number(w.value)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json normal_form_json(const NormalForm2D& nf, const Render& r) {
  return {{"case", to_string(nf.case_tag)},
          {"A", r.matrix(nf.a)},
          {"alpha_top", r.number(nf.alpha_top)},
          {"perturbation_degree", nf.perturbation_degree},
          {"base", r.spec(nf.base)},
          {"lambda", r.number(nf.lambda)},
          {"beta0", r.number(nf.beta0)},
          {"swapped", nf.swapped},
          {"degenerate", nf.degenerate},
          {"normal_map", map_json(nf.normal_map())}};
}

Json certificate_json(const Certificate& c, const Render& r) {
  Json out{{"status", to_string(c.status)}, {"method", c.method}};
  if (c.witness) {
    const auto& w = *c.witness;
    out["witness"] = {{"x1", r.numbers(w.x1)},     {"x2", r.numbers(w.x2)},
                      {"matrix", r.matrix(w.matrix)}, {"det", r.number(w.det)},
                      {"f_x1", r.numbers(w.f1)},   {"f_x2", r.numbers(w.f2)},
                      {"values_collide", w.values_collide}};
  }
  if (c.sampling) {
    out["sampling"] = {{"pairs_tested", c.sampling->pairs_tested},
                       {"min_abs_det", r.number(c.sampling->min_abs_det)},
                       {"zero_det_pairs", c.sampling->zero_det_pairs}};
  }
  if (c.grid) {
    const auto& g = *c.grid;
    Json grid{{"resolution", g.resolution}, {"cells_checked", g.cells_checked}, {"quantity", g.quantity}};
    if (g.min_margin) grid["min_margin"] = r.number(*g.min_margin);
    if (g.gamma) grid["gamma"] = *g.gamma;
    if (g.cos_gamma) grid["cos_gamma"] = r.number(*g.cos_gamma);
    if (g.sin_gamma) grid["sin_gamma"] = r.number(*g.sin_gamma);
    if (g.angles_tried) grid["angles_tried"] = g.angles_tried;
    out["grid"] = std::move(grid);
  }
  if (c.det_enclosure) out["det_enclosure"] = r.interval(*c.det_enclosure);
  out["notes"] = c.notes;
  return out;
}

Json pvalent_json(const PValentResult& p, const Render& r) {
  Json pieces = Json::array();
  for (const auto& c : p.pieces) pieces.push_back(certificate_json(c, r));
  return {{"bound", p.bound ? Json(*p.bound) : Json(nullptr)}, {"pieces", std::move(pieces)}};
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    out += csv_field(path) + "," + csv_field(j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string to_csv(const Json& j) {
  std::string out = "path,value\n";
  flatten(j, "", out);
  return out;
}

}  // namespace keller::cli
