#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "keller/factor.hpp"
#include "keller/inject_cert.hpp"
#include "keller/jacobian.hpp"

namespace keller::cli {

using Json = nlohmann::ordered_json;

/// Exact rationals render as strings such as "-3/2"; with `as_float` they
/// become JSON numbers instead. Polynomials always stay exact text.
struct Render {
  bool as_float = false;

  Json number(const Rational& q) const;
  Json numbers(std::span<const Rational> v) const;
  Json matrix(const RatMatrix& m) const;
  Json table(const CoeffTable& t) const;
  Json spec(const RankOneSpec& s) const;
  Json interval(const Interval& iv) const;
};

Json poly_json(const Poly& p);
Json map_json(const PolyMap& f);
Json poly_matrix_json(const PolyMatrix& m);

Json jacobian_json(const PolyMap& f, const Render& r);
Json verdict_json(const KellerVerdict& v, const Render& r);
Json inverse_json(const ZShiftMap& inverse, const Render& r);
Json composition_json(const PolyMap& composite, const Render& r);
Json factorization_json(const Factorization& f, const Render& r);
Json membership_json(const Membership& m, const Render& r);
Json normal_form_json(const NormalForm2D& nf, const Render& r);
Json certificate_json(const Certificate& c, const Render& r);
Json pvalent_json(const PValentResult& p, const Render& r);

/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string digest(std::string_view text);

/// Flattens a report into "path,value" lines, one per scalar.
std::string to_csv(const Json& j);

}  // namespace keller::cli
