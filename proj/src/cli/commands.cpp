#include "keller/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "keller/cli/map_source.hpp"
#include "keller/errors.hpp"

namespace keller::cli {

namespace {

/// Bad invocation detected after CLI11 accepted the flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> maps;
  std::vector<std::string> exprs;
  std::optional<std::size_t> n;
  std::string format = "json";
  bool as_float = false;
  std::string plot;
  unsigned plot_grid = 5;
  std::string emit_map;

  std::uint64_t seed = 1;
  std::size_t trials = 100;
  unsigned bits = 8;
  std::optional<unsigned> grid;
  std::string domain;
  std::vector<std::string> pieces;
  std::vector<std::string> pairs;

  std::string h;
  std::string g = "0";
  std::string f;
  std::string radius = "1";
  unsigned gamma_steps = 360;
  std::optional<unsigned> m;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read map file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

PlotFormat plot_format(const Options& o) { return o.format == "csv" ? PlotFormat::Csv : PlotFormat::Json; }

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

std::string table_data(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                       const std::string& kind, PlotFormat format) {
  if (format == PlotFormat::Json) {
    Json j{{"kind", kind}, {"columns", columns}, {"rows", rows}};
    return j.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt_double(row[i]);
    out += "\n";
  }
  return out;
}

class Session {
 public:
  explicit Session(const Options& o) : o_(o), render_{o.as_float} {}

  Json run(const std::string& cmd, std::string& digest_text) {
    static const std::map<std::string, Json (Session::*)(std::string&)> table{
        {"jacobian", &Session::jacobian},
        {"keller", &Session::keller},
        {"inverse", &Session::inverse},
        {"compose", &Session::compose},
        {"decompose", &Session::decompose_cmd},
        {"member", &Session::member},
        {"normal-form-2d", &Session::normal_form},
        {"inject-sample", &Session::inject_sample},
        {"inject-symbolic", &Session::inject_symbolic},
        {"shear-check", &Session::shear_check},
        {"analytic-check", &Session::analytic_check},
        {"pvalent", &Session::pvalent},
    };
    return (this->*table.at(cmd))(digest_text);
  }

 private:
  std::vector<MapSource> sources() const {
    std::vector<MapSource> out;
    for (const auto& path : o_.maps) out.push_back(parse_map_text(read_file(path), o_.n));
    if (!o_.exprs.empty()) out.push_back(map_from_expressions(o_.exprs, o_.n));
    return out;
  }

  MapSource single_source(std::string& digest_text) const {
    auto all = sources();
    if (all.size() != 1) throw UsageError("give the map either with one --map FILE or with --expr per component");
    digest_text = canonical_text(all.front().map);
    maybe_plot(all.front().map);
    return std::move(all.front());
  }

  ZShiftMap zshift_of(const MapSource& src) const {
    auto z = src.as_zshift();
    if (!z) throw DomainError("the map is not of the form X + sum_l P^(l) (x1 + ... + xn)^l");
    return *z;
  }

  void maybe_plot(const PolyMap& f) const {
    if (o_.plot.empty()) return;
    if (f.dim() != 2) throw DomainError("plot data needs a planar map (n = 2)");
    std::vector<Interval> box{{Rational(-1), Rational(1)}, {Rational(-1), Rational(1)}};
    if (!o_.domain.empty()) box = parse_domain(o_.domain, 2).bounding_box();
    write_file(o_.plot, image_grid_data(f, box, o_.plot_grid, plot_format(o_)));
  }

  Json jacobian(std::string& d) { return jacobian_json(single_source(d).map, render_); }

  Json keller(std::string& d) { return verdict_json(keller_check(single_source(d).map), render_); }

  Json inverse(std::string& d) {
    const ZShiftMap g = zshift_inverse(zshift_of(single_source(d)));
    if (!o_.emit_map.empty()) write_file(o_.emit_map, canonical_text(g.to_poly_map()));
    return inverse_json(g, render_);
  }

  Json compose(std::string& d) {
    auto all = sources();
    if (all.size() == 1 && !all.front().factors.empty()) {
      const auto& src = all.front();
      d = canonical_text(src.map);
      const ZShiftMap product = compose_closed_form(src.factors, true);
      Json out = composition_json(product.to_poly_map(), render_);
      out["table"] = render_.table(product.coeffs());
      return out;
    }
    if (all.size() != 2) throw UsageError("compose needs two maps (outer first), or one factors family file");
    d = canonical_text(all[0].map) + "---\n" + canonical_text(all[1].map);
    if (all[0].map.dim() != all[1].map.dim()) throw DimensionError("maps have different dimensions");
    if (auto z = all[0].as_zshift()) return composition_json(keller::compose(*z, all[1].map), render_);
    return composition_json(keller::compose(all[0].map, all[1].map), render_);
  }

  Json decompose_cmd(std::string& d) { return factorization_json(decompose(zshift_of(single_source(d))), render_); }

  Json member(std::string& d) { return membership_json(rank_one_membership(zshift_of(single_source(d))), render_); }

  Json normal_form(std::string& d) { return normal_form_json(normal_form_2d(single_source(d).map, o_.m), render_); }

  ConvexDomain domain_for(std::size_t n) const {
    if (o_.domain.empty()) throw UsageError("--domain is required");
    return parse_domain(o_.domain, n);
  }

  Json inject_sample(std::string& d) {
    const MapSource src = single_source(d);
    const ConvexDomain dom = domain_for(src.map.dim());
    d += "domain=" + dom.describe() + "\n";
    SamplingOptions so;
    so.denominator_bits = o_.bits;
    for (const auto& p : o_.pairs) {
      const std::size_t semi = p.find(';');
      if (semi == std::string::npos) throw UsageError("--pair is written 'a,b;c,d'");
      so.seed_pairs.emplace_back(parse_point(p.substr(0, semi)), parse_point(p.substr(semi + 1)));
    }
    return certificate_json(certify_injective_sampling(src.map, dom, o_.trials, o_.seed, so), render_);
  }

  Json inject_symbolic(std::string& d) {
    return certificate_json(certify_injective_symbolic_zshift(zshift_of(single_source(d))), render_);
  }

  Json shear_check(std::string& d) {
    if (o_.h.empty()) throw UsageError("--h is required");
    const PlanarShearInput in{parse_complex_poly(o_.h), parse_complex_poly(o_.g), parse_rational(o_.radius)};
    d = "h=" + to_string(in.h) + "\ng=" + to_string(in.g) + "\nradius=" + to_string(in.radius) + "\n";
    ShearOptions so;
    so.gamma_steps = o_.gamma_steps;
    const Certificate c = planar_shear_check(in, o_.grid.value_or(32), so);
    if (!o_.plot.empty()) {
      const Rational cs = c.grid && c.grid->cos_gamma ? *c.grid->cos_gamma : Rational(1);
      const Rational sn = c.grid && c.grid->sin_gamma ? *c.grid->sin_gamma : Rational(0);
      write_file(o_.plot, shear_margin_data(in, cs, sn, o_.plot_grid, plot_format(o_)));
    }
    return certificate_json(c, render_);
  }

  Json analytic_check(std::string& d) {
    if (o_.f.empty()) throw UsageError("--f is required");
    const ComplexPoly f = parse_complex_poly(o_.f);
    const ConvexDomain dom = domain_for(2);
    d = "f=" + to_string(f) + "\ndomain=" + dom.describe() + "\n";
    return certificate_json(analytic_pair_check(f, dom, o_.grid.value_or(64)), render_);
  }

  Json pvalent(std::string& d) {
    const MapSource src = single_source(d);
    if (o_.pieces.empty()) throw UsageError("at least one --piece is required");
    std::vector<ConvexDomain> pieces;
    for (const auto& p : o_.pieces) {
      pieces.push_back(parse_domain(p, src.map.dim()));
      d += "piece=" + pieces.back().describe() + "\n";
    }
    PValentOptions po;
    po.trials = o_.trials;
    po.seed = o_.seed;
    po.denominator_bits = o_.bits;
    return pvalent_json(pvalent_bound(src.map, pieces, po), render_);
  }

  const Options& o_;
  Render render_;
};

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Report and plot format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--float", o.as_float, "Render rational scalars as decimals");
}

void add_map_options(CLI::App* sub, Options& o, bool many = false) {
  sub->add_option("--map", o.maps, many ? "Map file (repeatable; outer map first)" : "Map file");
  sub->add_option("--expr", o.exprs, "One component expression (repeat per component)");
  sub->add_option("--n", o.n, "Number of variables")->check(CLI::Range(1, 64));
}

void add_plot_options(CLI::App* sub, Options& o) {
  sub->add_option("--plot", o.plot, "Write plot data to this file");
  sub->add_option("--plot-grid", o.plot_grid, "Lattice points per side in plot data")->check(CLI::Range(1, 1000));
}

void add_sampling_options(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--trials", o.trials, "Number of random pairs")->check(CLI::Range(1, 10000000));
  sub->add_option("--bits", o.bits, "Sample grid has 2^bits steps per side")->check(CLI::Range(0, 62));
}

}  // namespace

std::string image_grid_data(const PolyMap& f, const std::vector<Interval>& box, unsigned grid, PlotFormat format) {
  if (f.dim() != 2 || box.size() != 2) throw DomainError("plot data needs a planar map (n = 2)");
  if (grid == 0) throw DomainError("plot grid must be positive");
  std::vector<std::vector<double>> rows;
  for (unsigned i = 0; i < grid; ++i) {
    for (unsigned j = 0; j < grid; ++j) {
      const unsigned idx[2] = {i, j};
      std::vector<Rational> p;
      for (std::size_t k = 0; k < 2; ++k) {
        const Rational t = grid == 1 ? Rational(1, 2) : Rational(idx[k], grid - 1);
        p.push_back(box[k].lo + (box[k].hi - box[k].lo) * t);
      }
      const auto v = evaluate(f, p);
      rows.push_back({to_double(p[0]), to_double(p[1]), to_double(v[0]), to_double(v[1])});
    }
  }
  return table_data({"x", "y", "u", "v"}, rows, "image-grid", format);
}

std::string shear_margin_data(const PlanarShearInput& input, const Rational& cos_gamma, const Rational& sin_gamma,
                              unsigned grid, PlotFormat format) {
  if (grid == 0) throw DomainError("plot grid must be positive");
  std::vector<std::vector<double>> rows;
  const Rational r = input.radius;
  for (unsigned i = 0; i < grid; ++i) {
    for (unsigned j = 0; j < grid; ++j) {
      const Rational x = grid == 1 ? Rational(0) : -r + 2 * r * Rational(i, grid - 1);
      const Rational y = grid == 1 ? Rational(0) : -r + 2 * r * Rational(j, grid - 1);
      if (x * x + y * y >= r * r) continue;
      rows.push_back({to_double(x), to_double(y), shear_margin(input, cos_gamma, sin_gamma, {x, y})});
    }
  }
  return table_data({"x", "y", "margin"}, rows, "shear-margin", format);
}

CommandResult run_command(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Exact construction, inversion, factorization and injectivity certification of Keller maps",
               "keller-lab"};
  app.require_subcommand(1, 1);

  struct Spec {
    const char* name;
    const char* help;
    bool many_maps;
  };
  const Spec map_commands[] = {
      {"jacobian", "Symbolic Jacobian matrix and determinant", false},
      {"keller", "Decide whether det Df is a nonzero constant", false},
      {"inverse", "Inverse of a Keller z-shift map, verified both ways", false},
      {"compose", "Compose two maps, or the factors of a factors family", true},
      {"decompose", "Split a Keller z-shift map into rank-one factors", false},
      {"member", "Rank-one membership test with a 2x2 minor witness", false},
      {"normal-form-2d", "Planar perturbation normal form A^-1 F A", false},
      {"inject-sample", "Sampled segment-determinant test on a convex domain", false},
      {"inject-symbolic", "Closed-form injectivity proof for Keller z-shift maps", false},
      {"pvalent", "Valence bound from per-piece injectivity certificates", false},
  };
  for (const auto& s : map_commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_map_options(sub, o, s.many_maps);
    add_output_options(sub, o);
    add_plot_options(sub, o);
    const std::string name = s.name;
    if (name == "inverse") sub->add_option("--emit-map", o.emit_map, "Also write the inverse as a map file");
    if (name == "normal-form-2d") sub->add_option("--m", o.m, "Degree m of the base map (perturbation degree m+1)");
    if (name == "inject-sample" || name == "pvalent") add_sampling_options(sub, o);
    if (name == "inject-sample") {
      sub->add_option("--domain", o.domain, "Convex domain, e.g. 'box(-1:1,-1:1)'");
      sub->add_option("--pair", o.pairs, "Pair 'a,b;c,d' tested before random draws (repeatable)");
    }
    if (name == "pvalent") sub->add_option("--piece", o.pieces, "Convex piece (repeatable)");
    if (name != "inject-sample" && name != "pvalent") sub->add_option("--domain", o.domain, "Plot window");
  }
  {
    CLI::App* sub = app.add_subcommand("shear-check", "Shear condition Re(e^{i gamma} h') > |g'| on a disk");
    // --h names the analytic part, so help is reachable only as --help here.
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--h", o.h, "h(z), e.g. 'z'");
    sub->add_option("--g", o.g, "g(z), e.g. 'z^2/4'");
    sub->add_option("--radius", o.radius, "Disk radius");
    sub->add_option("--grid", o.grid, "Cells per side")->check(CLI::Range(1, 4096));
    sub->add_option("--gamma-steps", o.gamma_steps, "Angles tried")->check(CLI::Range(1, 100000));
    add_output_options(sub, o);
    add_plot_options(sub, o);
  }
  {
    CLI::App* sub = app.add_subcommand("analytic-check", "Sign test of Re f' or Im f' for analytic f on a domain");
    sub->add_option("--f", o.f, "f(z), with i the imaginary unit");
    sub->add_option("--domain", o.domain, "Planar convex domain");
    sub->add_option("--grid", o.grid, "Cells per side")->check(CLI::Range(1, 4096));
    add_output_options(sub, o);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    if (code == 0) return {kOk, out.str(), err.str()};
    return {kUsageFailure, out.str(), err.str()};
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    Session session(o);
    std::string digest_text;
    Json result = session.run(cmd, digest_text);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Json report{{"command", cmd},
                {"input_digest", digest(digest_text)},
                {"result", std::move(result)},
                {"elapsed_ms", std::round(ms * 1000) / 1000}};
    return {kOk, o.format == "csv" ? to_csv(report) : report.dump(2) + "\n", ""};
  } catch (const ParseError& e) {
    return {kUsageFailure, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const UsageError& e) {
    return {kUsageFailure, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {kDomainFailure, "", std::string("domain error: ") + e.what() + "\n"};
  } catch (const DimensionError& e) {
    return {kDomainFailure, "", std::string("dimension error: ") + e.what() + "\n"};
  } catch (const VerificationError& e) {
    return {kInternalFailure, "", std::string("internal verification failed: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kInternalFailure, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace keller::cli
