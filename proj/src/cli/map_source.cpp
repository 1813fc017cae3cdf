#include "keller/cli/map_source.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "keller/cli/parser.hpp"
#include "keller/errors.hpp"
#include "keller/factor.hpp"

namespace keller::cli {

std::optional<ZShiftMap> MapSource::as_zshift() const {
  if (zshift) return zshift;
  return recognize_zshift(map);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Offset of `part` inside `whole`; both views must share storage.
std::size_t offset_in(std::string_view whole, std::string_view part) {
  return static_cast<std::size_t>(part.data() - whole.data());
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

Rational rational_at(std::string_view whole, std::string_view token) {
  const std::string_view t = trim(token);
  try {
    return parse_rational(t);
  } catch (const ParseError& e) {
    throw ParseError("malformed number '" + std::string(t) + "'", offset_in(whole, t) + std::min(e.position(), t.size()));
  }
}

struct Line {
  std::string_view text;
  std::size_t offset;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({line, offset_in(text, line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

// ---- family format ----------------------------------------------------------

struct Value {
  std::optional<std::string> str;
  std::optional<Rational> number;
  std::optional<std::vector<Rational>> list;
  std::optional<std::vector<std::vector<Rational>>> matrix;
  std::size_t pos = 0;
};

std::vector<Rational> parse_list(std::string_view whole, std::string_view body) {
  std::vector<Rational> out;
  if (trim(body).empty()) return out;
  for (auto item : split(body, ',')) out.push_back(rational_at(whole, item));
  return out;
}

Value parse_value(std::string_view whole, std::string_view v) {
  Value out;
  out.pos = offset_in(whole, v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    out.str = std::string(v.substr(1, v.size() - 2));
  } else if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    const std::string_view body = trim(v.substr(1, v.size() - 2));
    if (!body.empty() && body.front() == '[') {
      std::vector<std::vector<Rational>> rows;
      std::size_t i = 0;
      while (i < body.size()) {
        if (body[i] != '[') throw ParseError("expected '['", offset_in(whole, body) + i);
        const std::size_t close = body.find(']', i);
        if (close == std::string_view::npos) throw ParseError("unclosed '['", offset_in(whole, body) + i);
        rows.push_back(parse_list(whole, body.substr(i + 1, close - i - 1)));
        i = close + 1;
        while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
      }
      out.matrix = std::move(rows);
    } else {
      out.list = parse_list(whole, body);
    }
  } else {
    out.number = rational_at(whole, v);
  }
  return out;
}

class FamilyReader {
 public:
  FamilyReader(std::string_view whole, const std::vector<Line>& lines) : whole_(whole) {
    for (const auto& line : lines) {
      const std::size_t eq = line.text.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line.offset);
      const std::string key(trim(line.text.substr(0, eq)));
      if (key.empty()) throw ParseError("missing key", line.offset);
      if (values_.count(key)) throw ParseError("duplicate key '" + key + "'", line.offset);
      values_[key] = parse_value(whole, trim(line.text.substr(eq + 1)));
      order_.push_back(key);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  const Value& get(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParseError("missing key '" + key + "'", whole_.size());
    used_.insert(key);
    return it->second;
  }

  std::string string(const std::string& key) {
    const Value& v = get(key);
    if (!v.str) throw ParseError("'" + key + "' must be a quoted string", v.pos);
    return *v.str;
  }

  std::vector<Rational> list(const std::string& key) {
    const Value& v = get(key);
    if (!v.list) throw ParseError("'" + key + "' must be a list [a, b, ...]", v.pos);
    return *v.list;
  }

  std::optional<std::size_t> count(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const Value& v = get(key);
    if (!v.number || v.number->get_den() != 1 || *v.number < 1 || *v.number > 1000) {
      throw ParseError("'" + key + "' must be a positive integer", v.pos);
    }
    return static_cast<std::size_t>(v.number->get_num().get_ui());
  }

  std::optional<RatMatrix> matrix(const std::string& key, std::size_t n) {
    if (!has(key)) return std::nullopt;
    const Value& v = get(key);
    if (!v.matrix) throw ParseError("'" + key + "' must be a matrix [[...], ...]", v.pos);
    if (v.matrix->size() != n) throw DimensionError("'" + key + "' must have " + std::to_string(n) + " rows");
    std::vector<Rational> entries;
    for (const auto& row : *v.matrix) {
      if (row.size() != n) throw DimensionError("'" + key + "' must have " + std::to_string(n) + " columns");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return RatMatrix(n, n, std::move(entries));
  }

  std::vector<std::string> keys() const { return order_; }

  void reject_unused() const {
    for (const auto& key : order_) {
      if (!used_.count(key)) throw ParseError("unknown key '" + key + "'", values_.at(key).pos);
    }
  }

 private:
  std::string_view whole_;
  std::map<std::string, Value> values_;
  std::vector<std::string> order_;
  std::set<std::string> used_;
};

void check_declared(std::optional<std::size_t> declared, std::size_t actual, const char* what) {
  if (declared && *declared != actual) {
    throw DimensionError(std::string(what) + " is declared as " + std::to_string(*declared) + " but the data implies " +
                         std::to_string(actual));
  }
}

RankOneSpec read_spec(FamilyReader& r, const std::string& prefix) {
  RankOneSpec spec{r.list(prefix + "gamma"), r.list(prefix + "alpha")};
  if (spec.gamma.empty()) throw DimensionError(prefix + "gamma must not be empty");
  return spec;
}

MapSource read_family(std::string_view whole, const std::vector<Line>& lines, std::optional<std::size_t> n_hint) {
  FamilyReader r(whole, lines);
  MapSource src;
  src.family = r.string("family");
  const auto n_decl = r.count("n");
  const auto m_decl = r.count("m");

  if (src.family == "rank-one") {
    RankOneSpec spec = read_spec(r, "");
    const std::size_t n = spec.dim();
    check_declared(n_decl, n, "n");
    check_declared(n_hint, n, "n");
    check_declared(m_decl, spec.max_degree(), "m");
    ZShiftMap core = build_rank_one(spec);
    src.a = r.matrix("A", n);
    src.b = r.matrix("B", n);
    if (src.a || src.b) {
      ConjugatedMap cm{src.a.value_or(RatMatrix::identity(n)), src.b.value_or(RatMatrix::identity(n)), core};
      src.map = cm.to_poly_map();
    } else {
      src.map = core.to_poly_map();
      src.zshift = core;
    }
    src.rank_one = std::move(spec);
  } else if (src.family == "zero-sum") {
    std::map<unsigned, std::vector<Rational>> columns;
    for (const auto& key : r.keys()) {
      if (key.size() < 2 || key[0] != 'p' || !std::all_of(key.begin() + 1, key.end(), ::isdigit)) continue;
      const unsigned l = static_cast<unsigned>(std::stoul(key.substr(1)));
      if (l < 2) throw ParseError("coefficient degrees start at 2", whole.size());
      columns[l] = r.list(key);
    }
    if (columns.empty()) throw ParseError("zero-sum family needs at least one key p2, p3, ...", whole.size());
    const std::size_t n = columns.begin()->second.size();
    for (const auto& [l, col] : columns) {
      if (col.size() != n) throw DimensionError("p" + std::to_string(l) + " has " + std::to_string(col.size()) + " entries, expected " + std::to_string(n));
    }
    check_declared(n_decl, n, "n");
    check_declared(n_hint, n, "n");
    const unsigned m = std::max<unsigned>(columns.rbegin()->first, m_decl ? static_cast<unsigned>(*m_decl) : 1);
    if (m_decl && *m_decl < columns.rbegin()->first) throw DimensionError("m is smaller than the highest listed degree");
    CoeffTable t(n, m);
    for (const auto& [l, col] : columns) {
      for (std::size_t k = 0; k < n; ++k) t.at(k, l) = col[k];
    }
    src.zshift = build_zero_sum(t);
    src.map = src.zshift->to_poly_map();
  } else if (src.family == "factors") {
    for (std::size_t j = 1; r.has("factor" + std::to_string(j) + ".gamma"); ++j) {
      src.factors.push_back(read_spec(r, "factor" + std::to_string(j) + "."));
    }
    if (src.factors.empty()) throw ParseError("factors family needs factor1.gamma and factor1.alpha", whole.size());
    src.zshift = compose_closed_form(src.factors);
    check_declared(n_decl, src.zshift->dim(), "n");
    check_declared(n_hint, src.zshift->dim(), "n");
    if (m_decl && *m_decl < src.zshift->max_degree()) throw DimensionError("m is smaller than a factor's degree");
    src.map = src.zshift->to_poly_map();
  } else {
    throw ParseError("unknown family \"" + src.family + "\"; expected rank-one, zero-sum or factors",
                     whole.find(src.family));
  }
  r.reject_unused();
  return src;
}

}  // namespace

MapSource map_from_expressions(const std::vector<std::string>& exprs, std::optional<std::size_t> n) {
  if (exprs.empty()) throw DimensionError("a map needs at least one component");
  const std::size_t dim = n.value_or(exprs.size());
  if (dim != exprs.size()) {
    throw DimensionError("map has " + std::to_string(exprs.size()) + " components but n = " + std::to_string(dim));
  }
  const VariableSet vars = VariableSet::standard(dim);
  std::vector<Poly> comps;
  for (const auto& e : exprs) comps.push_back(parse_poly(e, vars));
  MapSource src;
  src.map = PolyMap(std::move(comps));
  return src;
}

MapSource parse_map_text(std::string_view text, std::optional<std::size_t> n) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("map text has no components", 0);
  const bool family = std::any_of(lines.begin(), lines.end(), [](const Line& l) { return l.text.find('=') != std::string_view::npos; });
  if (family) return read_family(text, lines, n);

  const std::size_t dim = n.value_or(lines.size());
  if (dim != lines.size()) {
    throw DimensionError("map has " + std::to_string(lines.size()) + " components but n = " + std::to_string(dim));
  }
  const VariableSet vars = VariableSet::standard(dim);
  std::vector<Poly> comps;
  for (const auto& line : lines) {
    try {
      comps.push_back(parse_poly(line.text, vars));
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), line.offset + e.position());
    }
  }
  MapSource src;
  src.map = PolyMap(std::move(comps));
  return src;
}

std::string canonical_text(const PolyMap& f) {
  std::string out;
  for (const auto& c : f.components()) out += to_string(c) + "\n";
  return out;
}

ConvexDomain parse_domain(std::string_view text, std::size_t n) {
  std::optional<ConvexDomain> dom;
  for (std::string_view part : split(text, '&')) {
    part = trim(part);
    if (part.empty()) throw ParseError("empty domain constraint", offset_in(text, part));
    ConvexDomain piece;
    if (part.starts_with("box(") || part.starts_with("ball(")) {
      if (part.back() != ')') throw ParseError("expected ')'", offset_in(text, part) + part.size());
      const bool is_box = part.starts_with("box(");
      const std::string_view body = part.substr(is_box ? 4 : 5, part.size() - (is_box ? 5 : 6));
      if (is_box) {
        std::vector<Interval> sides;
        for (auto side : split(body, ',')) {
          const std::size_t colon = side.find(':');
          if (colon == std::string_view::npos) throw ParseError("box sides are written lo:hi", offset_in(text, side));
          Interval iv{rational_at(text, side.substr(0, colon)), rational_at(text, side.substr(colon + 1)), false, false};
          if (iv.is_empty()) throw DomainError("box side " + to_string(iv) + " is empty");
          sides.push_back(std::move(iv));
        }
        if (sides.size() != n) throw DimensionError("box has " + std::to_string(sides.size()) + " sides, expected " + std::to_string(n));
        piece = ConvexDomain::box(std::move(sides));
      } else {
        const auto fields = split(body, ';');
        if (fields.size() < 2 || fields.size() > 3) throw ParseError("ball is written ball(c1, ..., cn; r)", offset_in(text, body));
        Ball b;
        for (auto c : split(fields[0], ',')) b.center.push_back(rational_at(text, c));
        b.radius = rational_at(text, fields[1]);
        if (fields.size() == 3) {
          if (trim(fields[2]) != "closed") throw ParseError("expected 'closed'", offset_in(text, fields[2]));
          b.strict = false;
        }
        if (b.center.size() != n) throw DimensionError("ball center has " + std::to_string(b.center.size()) + " coordinates, expected " + std::to_string(n));
        piece = ConvexDomain::ball(std::move(b));
      }
    } else {
      static const std::string_view ops[] = {"<=", ">=", "<", ">"};
      std::size_t at = std::string_view::npos;
      std::string_view op;
      for (auto o : ops) {
        const std::size_t p = part.find(o);
        if (p != std::string_view::npos && (at == std::string_view::npos || p < at || (p == at && o.size() > op.size()))) {
          at = p;
          op = o;
        }
      }
      if (at == std::string_view::npos) throw ParseError("expected box(...), ball(...) or a linear inequality", offset_in(text, part));
      const auto parse_side = [&](std::string_view s) {
        try {
          return parse_poly(s, n);
        } catch (const ParseError& e) {
          throw ParseError(e.detail(), offset_in(text, s) + e.position());
        }
      };
      const Poly lhs = parse_side(part.substr(0, at));
      const Poly rhs = parse_side(part.substr(at + op.size()));
      const Poly diff = op[0] == '<' ? lhs - rhs : rhs - lhs;  // diff <= 0 or < 0
      if (diff.degree() > 1) throw ParseError("inequality must be linear", offset_in(text, part));
      HalfSpace h;
      for (std::size_t i = 0; i < n; ++i) h.a.push_back(diff.coefficient(Monomial::unit(n, i)));
      h.b = -diff.constant_term();
      h.strict = op.size() == 1;
      piece = ConvexDomain::half_spaces(n, {std::move(h)});
    }
    dom = dom ? dom->intersect(piece) : piece;
  }
  if (!dom) throw ParseError("empty domain", 0);
  return *dom;
}

std::vector<Rational> parse_point(std::string_view text) {
  std::vector<Rational> out;
  for (auto c : split(text, ',')) out.push_back(rational_at(text, c));
  return out;
}

ComplexPoly parse_complex_poly(std::string_view text) {
  return ComplexPoly::from_zi(parse_poly(text, VariableSet::named({"z", "i"})));
}

}  // namespace keller::cli
