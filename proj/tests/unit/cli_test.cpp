#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "keller/cli/commands.hpp"
#include "keller/cli/map_source.hpp"
#include "keller/cli/parser.hpp"
#include "keller/errors.hpp"
#include "oracles.hpp"

using namespace keller;
using namespace keller::cli;
using keller::testing::Gen;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
Poly X(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

const char* kExampleMap =
    "# composite of two rank-one factors\n"
    "x1 - 11*(x1+x2+x3)^2 - 13*(x1+x2+x3)^3\n"
    "x2 + 6*(x1+x2+x3)^2 + 9*(x1+x2+x3)^3\n"
    "\n"
    "x3 + 5*(x1+x2+x3)^2 + 4*(x1+x2+x3)^3\n";

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("keller-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json report_of(const CommandResult& r) {
  EXPECT_EQ(r.exit_code, kOk) << r.err;
  return Json::parse(r.out);
}

std::size_t parse_error_position(const std::string& text, std::size_t n) {
  try {
    parse_poly(text, n);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for " << text;
  return std::string::npos;
}

}  // namespace

TEST(ParsePoly, Examples) {
  const Poly x1 = X(2, 0), x2 = X(2, 1);
  EXPECT_EQ(parse_poly("x1 + (x1+x2)^2", 2), x1 + x1 * x1 + x1 * x2 * q(2) + x2 * x2);
  const Poly z = coordinate_sum(3);
  EXPECT_EQ(parse_poly("x1 - 11*(x1+x2+x3)^2 - 13*(x1+x2+x3)^3", 3), X(3, 0) - z.pow(2) * q(11) - z.pow(3) * q(13));
  EXPECT_EQ(parse_poly("3/2*x1", 2).coefficient(Monomial::unit(2, 0)), q(3, 2));
}

TEST(ParsePoly, PrecedenceAndAliases) {
  const Poly x = X(2, 0), y = X(2, 1);
  EXPECT_EQ(parse_poly("-x^2", 2), -(x * x));
  EXPECT_EQ(parse_poly("2^3^2", 1), Poly::constant(1, q(512)));
  EXPECT_EQ(parse_poly("x - y - x", 2), -y);
  EXPECT_EQ(parse_poly("(x + y)/4 * 2", 2), (x + y) * q(1, 2));
  EXPECT_EQ(parse_poly("x*y", 2), parse_poly("x1*x2", 2));
  EXPECT_EQ(parse_poly("0.5*x", 1), X(1, 0) * q(1, 2));
}

TEST(ParsePoly, ErrorsCarryPositions) {
  EXPECT_EQ(parse_error_position("x1 + * x2", 2), 5u);
  EXPECT_EQ(parse_error_position("x1 + x3", 2), 5u);
  EXPECT_EQ(parse_error_position("(x1 + x2", 2), 8u);
  EXPECT_EQ(parse_error_position("x1^x2", 2), 2u);
  EXPECT_EQ(parse_error_position("x1^65", 2), 2u);
  EXPECT_EQ(parse_error_position("x1 / x2", 2), 3u);
  EXPECT_EQ(parse_error_position("x1 / 0", 2), 3u);
  EXPECT_EQ(parse_error_position("x1 $ 2", 2), 3u);
  EXPECT_EQ(parse_error_position("", 2), 0u);
  EXPECT_EQ(parse_error_position("x1 x2", 2), 3u);
}

TEST(ParsePoly, PrintThenParseIsAFixedPoint) {
  Gen gen(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 5));
    const Poly p = gen.poly(n, 5, 6);
    const std::string text = to_string(p);
    const Poly back = parse_poly(text, n);
    EXPECT_EQ(back, p) << text;
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(ParsePoly, NamedVariables) {
  const VariableSet vars = VariableSet::named({"z", "i"});
  EXPECT_EQ(vars.index_of("i"), 1);
  EXPECT_EQ(vars.index_of("x"), -1);
  EXPECT_EQ(parse_poly("z*i", vars), X(2, 0) * X(2, 1));
}

TEST(MapText, LinesCommentsAndRoundTrip) {
  const MapSource src = parse_map_text(kExampleMap);
  EXPECT_EQ(src.family, "");
  ASSERT_EQ(src.map.dim(), 3u);
  const auto z = src.as_zshift();
  ASSERT_TRUE(z);
  EXPECT_EQ(z->coeffs(), CoeffTable::from_rows({{q(-11), q(-13)}, {q(6), q(9)}, {q(5), q(4)}}));
  EXPECT_EQ(parse_map_text(canonical_text(src.map)).map, src.map);
}

TEST(MapText, DimensionMustMatch) {
  EXPECT_THROW(parse_map_text("x1 + x2\nx2\n", 3), DimensionError);
  EXPECT_THROW(map_from_expressions({"x1", "x2"}, 3), DimensionError);
}

TEST(MapText, RankOneFamily) {
  const MapSource src = parse_map_text("family = \"rank-one\"\nn = 3\nm = 3\ngamma = [1, 2, -3]\nalpha = [1, 2]\n");
  EXPECT_EQ(src.family, "rank-one");
  ASSERT_TRUE(src.rank_one);
  EXPECT_EQ(src.map, build_rank_one(*src.rank_one).to_poly_map());
}

TEST(MapText, RankOneFamilyWithConjugation) {
  const MapSource src =
      parse_map_text("family = \"rank-one\"\ngamma = [1, -1]\nalpha = [1]\nA = [[2, 0], [0, 1]]\nB = [[1/2, 0], [0, 1]]\n");
  ASSERT_TRUE(src.a && src.b);
  EXPECT_EQ(src.map, conjugate(*src.a, build_rank_one(*src.rank_one).to_poly_map(), *src.b));
  EXPECT_TRUE(keller_check(src.map).is_keller);
}

TEST(MapText, ZeroSumFamilyIsValidatedWhileReading) {
  const MapSource ok = parse_map_text("family = \"zero-sum\"\np2 = [-11, 6, 5]\np3 = [-13, 9, 4]\n");
  EXPECT_EQ(ok.map, parse_map_text(kExampleMap).map);
  EXPECT_THROW(parse_map_text("family = \"zero-sum\"\np2 = [1, 2, 3]\n"), DomainError);
}

TEST(MapText, FactorsFamily) {
  const MapSource src = parse_map_text(
      "family = \"factors\"\nfactor1.gamma = [1, 2, -3]\nfactor1.alpha = [1, 2]\n"
      "factor2.gamma = [-3, 1, 2]\nfactor2.alpha = [4, 5]\n");
  ASSERT_EQ(src.factors.size(), 2u);
  EXPECT_EQ(src.map, parse_map_text(kExampleMap).map);
}

TEST(MapText, MalformedFamiliesAreParseErrors) {
  EXPECT_THROW(parse_map_text("family = \"other\"\n"), ParseError);
  EXPECT_THROW(parse_map_text("family = \"rank-one\"\ngamma = [1, -1]\nalpha = [1]\nbogus = 3\n"), ParseError);
  EXPECT_THROW(parse_map_text("family = \"rank-one\"\ngamma = [1, -1]\ngamma = [1, -1]\n"), ParseError);
  EXPECT_THROW(parse_map_text("family = \"rank-one\"\ngamma = [1, -1\nalpha = [1]\n"), ParseError);
}

TEST(DomainText, Forms) {
  const ConvexDomain box = parse_domain("box(-1:1, -1/2:1/2)", 2);
  EXPECT_EQ(box.kind(), ConvexDomain::Kind::Box);
  EXPECT_TRUE(box.contains(std::vector<Rational>{q(1), q(1, 2)}));

  const ConvexDomain disk = parse_domain("ball(0, 0; 1)", 2);
  EXPECT_FALSE(disk.contains(std::vector<Rational>{q(1), q(0)}));
  EXPECT_TRUE(parse_domain("ball(0, 0; 1; closed)", 2).contains(std::vector<Rational>{q(1), q(0)}));

  const ConvexDomain cut = parse_domain("box(-1:1,-1:1) & x1 + 2*x2 <= 1 & x > -1/2", 2);
  EXPECT_TRUE(cut.contains(std::vector<Rational>{q(0), q(0)}));
  EXPECT_FALSE(cut.contains(std::vector<Rational>{q(0), q(1)}));
  EXPECT_FALSE(cut.contains(std::vector<Rational>{q(-1, 2), q(0)}));

  EXPECT_THROW(parse_domain("box(-1:1)", 2), DimensionError);
  EXPECT_THROW(parse_domain("x1^2 < 1", 2), ParseError);
  EXPECT_THROW(parse_domain("sphere(0,0;1)", 2), ParseError);
}

TEST(ComplexText, ImaginaryUnit) {
  const ComplexPoly p = parse_complex_poly("z^2/4 + i*z - 3");
  ASSERT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coeffs()[0], (ComplexRational{q(-3), q(0)}));
  EXPECT_EQ(p.coeffs()[1], (ComplexRational{q(0), q(1)}));
  EXPECT_EQ(p.coeffs()[2], (ComplexRational{q(1, 4), q(0)}));
  EXPECT_EQ(parse_complex_poly("i^2"), ComplexPoly({{q(-1), q(0)}}));
}

TEST(RunCommand, KellerOnExample) {
  TempDir dir;
  const Json r = report_of(run_command({"keller", "--map", dir.write("ex.txt", kExampleMap)}));
  EXPECT_EQ(r["command"], "keller");
  EXPECT_EQ(r["result"]["is_keller"], true);
  EXPECT_EQ(r["result"]["constant"], "1");
  EXPECT_EQ(r["input_digest"].get<std::string>().size(), 16u);
}

TEST(RunCommand, MemberOnExample) {
  TempDir dir;
  const Json r = report_of(run_command({"member", "--map", dir.write("ex.txt", kExampleMap)}));
  EXPECT_EQ(r["result"]["member"], false);
  EXPECT_EQ(r["result"]["witness"]["minor"], "-21");
  EXPECT_EQ(r["result"]["witness"]["coordinates"], Json({1, 2}));
}

TEST(RunCommand, InverseThenComposeIsIdentity) {
  TempDir dir;
  const std::string ex = dir.write("ex.txt", kExampleMap);
  const std::string inv = dir.file("inv.txt");
  report_of(run_command({"inverse", "--map", ex, "--emit-map", inv}));
  for (const auto& order : {std::pair{inv, ex}, std::pair{ex, inv}}) {
    const Json r = report_of(run_command({"compose", "--map", order.first, "--map", order.second}));
    EXPECT_EQ(r["result"]["is_identity"], true);
    EXPECT_EQ(r["result"]["map"], Json({"x1", "x2", "x3"}));
  }
}

TEST(RunCommand, DigestIgnoresSurfaceSyntax) {
  TempDir dir;
  const Json a = report_of(run_command({"keller", "--map", dir.write("ex.txt", kExampleMap)}));
  const Json b = report_of(run_command({"keller", "--map", dir.write("canon.txt", canonical_text(parse_map_text(kExampleMap).map))}));
  EXPECT_EQ(a["input_digest"], b["input_digest"]);
}

TEST(RunCommand, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run_command({"frobnicate"}).exit_code, kUsageFailure);
  EXPECT_EQ(run_command({}).exit_code, kUsageFailure);
  EXPECT_EQ(run_command({"keller", "--expr", "x1 +", "--expr", "x2"}).exit_code, kUsageFailure);
  EXPECT_EQ(run_command({"keller", "--expr", "x", "--expr", "y", "--format", "xml"}).exit_code, kUsageFailure);
  EXPECT_EQ(run_command({"keller", "--map", dir.file("missing.txt")}).exit_code, kUsageFailure);
  const std::string bad = dir.write("bad.toml", "family = \"zero-sum\"\np2 = [1, 2, 3]\n");
  const CommandResult r = run_command({"keller", "--map", bad});
  EXPECT_EQ(r.exit_code, kDomainFailure);
  EXPECT_NE(r.err.find("z^2"), std::string::npos);
  EXPECT_EQ(run_command({"member", "--expr", "x^2", "--expr", "y"}).exit_code, kDomainFailure);
  EXPECT_EQ(run_command({"inject-sample", "--expr", "x^2", "--expr", "y", "--domain", "box(0:1)"}).exit_code,
            kDomainFailure);
  EXPECT_EQ(run_command({"keller", "--help"}).exit_code, kOk);
}

TEST(RunCommand, CsvAndFloatRendering) {
  const CommandResult r = run_command({"normal-form-2d", "--expr", "x + 2*y^3", "--expr", "y", "--format", "csv"});
  ASSERT_EQ(r.exit_code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("path,value\n", 0), 0u);
  EXPECT_NE(r.out.find("result.A.1.0,-1\n"), std::string::npos);

  const Json f = report_of(run_command({"shear-check", "--h", "z", "--g", "z^2/4", "--float"}));
  EXPECT_TRUE(f["result"]["grid"]["min_margin"].is_number());
}

TEST(RunCommand, InjectSampleWithSymmetricPair) {
  const Json r = report_of(run_command({"inject-sample", "--expr", "x^2", "--expr", "y", "--domain", "box(-1:1,-1:1)",
                                        "--pair", "-1/2,1/3;1/2,1/3", "--trials", "5"}));
  EXPECT_EQ(r["result"]["status"], "failure-witness");
  EXPECT_EQ(r["result"]["witness"]["values_collide"], true);
  EXPECT_EQ(r["result"]["witness"]["det"], "0");
}

TEST(PlotData, ImageGridHasOneRowPerLatticePoint) {
  TempDir dir;
  const std::string out = dir.file("img.csv");
  const CommandResult r =
      run_command({"jacobian", "--expr", "x+(x+y)^2", "--expr", "y-(x+y)^2", "--plot", out, "--format", "csv"});
  ASSERT_EQ(r.exit_code, kOk) << r.err;
  const std::string text = slurp(out);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
  EXPECT_EQ(text.rfind("x,y,u,v\n", 0), 0u);
}

TEST(PlotData, IdentityShearMarginsAreOne) {
  const PlanarShearInput in{ComplexPoly({{q(0), q(0)}, {q(1), q(0)}}), ComplexPoly(), q(1)};
  const Json j = Json::parse(shear_margin_data(in, q(1), q(0), 7, PlotFormat::Json));
  EXPECT_EQ(j["kind"], "shear-margin");
  ASSERT_FALSE(j["rows"].empty());
  for (const auto& row : j["rows"]) EXPECT_EQ(row[2].get<double>(), 1.0);
}

TEST(PlotData, FoldShowsDuplicateImagesAcrossTheAxis) {
  const PolyMap fold({X(2, 0) * X(2, 0), X(2, 1)});
  const std::vector<Interval> box{{q(-1), q(1)}, {q(-1), q(1)}};
  const Json j = Json::parse(image_grid_data(fold, box, 5, PlotFormat::Json));
  ASSERT_EQ(j["rows"].size(), 25u);
  std::map<std::pair<double, double>, std::set<double>> preimages;
  for (const auto& row : j["rows"]) preimages[{row[2], row[3]}].insert(row[0].get<double>());
  std::size_t folded = 0;
  for (const auto& [image, xs] : preimages) {
    if (xs.size() == 2) {
      EXPECT_EQ(*xs.begin(), -*xs.rbegin());
      ++folded;
    }
  }
  EXPECT_EQ(folded, 10u);
  EXPECT_THROW(image_grid_data(PolyMap::identity(3), box, 5, PlotFormat::Json), DomainError);
}

// Each subcommand's payload must be exactly what the library call and its
// serializer produce for the same input.
TEST(ThinAdapter, PayloadsMatchLibraryCalls) {
  TempDir dir;
  const std::string ex = dir.write("ex.txt", kExampleMap);
  const MapSource src = parse_map_text(kExampleMap);
  const ZShiftMap z = *src.as_zshift();
  const Render r{};
  auto result = [](const std::vector<std::string>& args) { return report_of(run_command(args))["result"]; };

  EXPECT_EQ(result({"jacobian", "--map", ex}), jacobian_json(src.map, r));
  EXPECT_EQ(result({"keller", "--map", ex}), verdict_json(keller_check(src.map), r));
  EXPECT_EQ(result({"inverse", "--map", ex}), inverse_json(zshift_inverse(z), r));
  EXPECT_EQ(result({"decompose", "--map", ex}), factorization_json(decompose(z), r));
  EXPECT_EQ(result({"member", "--map", ex}), membership_json(rank_one_membership(z), r));
  EXPECT_EQ(result({"inject-symbolic", "--map", ex}), certificate_json(certify_injective_symbolic_zshift(z), r));
  EXPECT_EQ(result({"compose", "--map", ex, "--map", ex}), composition_json(compose(z, src.map), r));

  const PolyMap nf_in = map_from_expressions({"x + 2*y^3", "y"}).map;
  EXPECT_EQ(result({"normal-form-2d", "--expr", "x + 2*y^3", "--expr", "y"}), normal_form_json(normal_form_2d(nf_in), r));

  const PolyMap fold = map_from_expressions({"x^2", "y"}).map;
  const ConvexDomain box = parse_domain("box(-1:1,-1:1)", 2);
  EXPECT_EQ(result({"inject-sample", "--expr", "x^2", "--expr", "y", "--domain", "box(-1:1,-1:1)", "--seed", "5",
                    "--trials", "30"}),
            certificate_json(certify_injective_sampling(fold, box, 30, 5), r));

  const std::vector<ConvexDomain> pieces{parse_domain("box(-1:1,-1:1) & x < 0", 2),
                                         parse_domain("box(-1:1,-1:1) & x > 0", 2)};
  EXPECT_EQ(result({"pvalent", "--expr", "x^2", "--expr", "y", "--piece", "box(-1:1,-1:1) & x < 0", "--piece",
                    "box(-1:1,-1:1) & x > 0"}),
            pvalent_json(pvalent_bound(fold, pieces, {100, 1, 8}), r));

  const PlanarShearInput shear{parse_complex_poly("z"), parse_complex_poly("z^2/4"), q(1)};
  EXPECT_EQ(result({"shear-check", "--h", "z", "--g", "z^2/4", "--grid", "16"}),
            certificate_json(planar_shear_check(shear, 16), r));

  const ConvexDomain half = parse_domain("ball(0,0;1) & x > 1/10", 2);
  EXPECT_EQ(result({"analytic-check", "--f", "z^2", "--domain", "ball(0,0;1) & x > 1/10", "--grid", "32"}),
            certificate_json(analytic_pair_check(parse_complex_poly("z^2"), half, 32), r));
}

TEST(Report, CsvFlatteningAndDigest) {
  const Json j{{"a", 1}, {"b", {{"c", "x,y"}, {"d", Json::array({true, nullptr})}}}};
  EXPECT_EQ(to_csv(j), "path,value\na,1\nb.c,\"x,y\"\nb.d.0,true\nb.d.1,null\n");
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}
