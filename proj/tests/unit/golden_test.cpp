#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "keller/cli/commands.hpp"

using keller::cli::Json;

namespace {

const std::filesystem::path kGoldenDir = KELLER_GOLDEN_DIR;
const std::filesystem::path kDataDir = KELLER_DATA_DIR;

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

std::string data(const char* file) { return (kDataDir / file).string(); }

std::vector<GoldenCase> cases() {
  return {
      {"jacobian_planar", {"jacobian", "--map", data("rank_one_planar.toml")}},
      {"keller_example", {"keller", "--map", data("example.txt")}},
      {"keller_fold", {"keller", "--expr", "x^2", "--expr", "y"}},
      {"inverse_example", {"inverse", "--map", data("example_zero_sum.toml")}},
      {"compose_factors", {"compose", "--map", data("example_factors.toml")}},
      {"decompose_example", {"decompose", "--map", data("example.txt")}},
      {"member_example", {"member", "--map", data("example.txt")}},
      {"member_rank_one", {"member", "--map", data("rank_one_planar.toml")}},
      {"normal_form_lambda_nonzero",
       {"normal-form-2d", "--expr", "x + (y - 2*x)^3", "--expr", "y + 2*(y - 2*x)^3"}},
      {"inject_sample_fold",
       {"inject-sample", "--expr", "x^2", "--expr", "y", "--domain", "box(-1:1,-1:1)", "--pair", "-1/2,1/3;1/2,1/3"}},
      {"inject_symbolic_example", {"inject-symbolic", "--map", data("example.txt")}},
      {"pvalent_fold",
       {"pvalent", "--expr", "x^2", "--expr", "y", "--piece", "box(-1:1,-1:1) & x < 0", "--piece",
        "box(-1:1,-1:1) & x > 0"}},
      {"shear_small_perturbation", {"shear-check", "--h", "z", "--g", "z^2/4", "--grid", "16"}},
      {"analytic_half_disk", {"analytic-check", "--f", "z^2", "--domain", "ball(0,0;1) & x > 1/10", "--grid", "16"}},
  };
}

/// The report minus its timing.
Json stable(Json report) {
  report.erase("elapsed_ms");
  return report;
}

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, ReportMatchesCommittedFile) {
  const auto& c = GetParam();
  const auto r = keller::cli::run_command(c.args);
  ASSERT_EQ(r.exit_code, keller::cli::kOk) << r.err;
  const Json actual = stable(Json::parse(r.out));
  const auto path = kGoldenDir / (c.name + ".json");
  if (std::getenv("UPDATE_GOLDEN")) {
    std::ofstream(path) << actual.dump(2) << "\n";
    GTEST_SKIP() << "rewrote " << path;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden file " << path << " (run with UPDATE_GOLDEN=1 to create it)";
  const Json expected = Json::parse(in);
  EXPECT_EQ(actual, expected) << "actual:\n" << actual.dump(2);
  // Field order is part of the contract, so compare the text as well.
  EXPECT_EQ(actual.dump(), expected.dump());
}

INSTANTIATE_TEST_SUITE_P(Reports, Golden, ::testing::ValuesIn(cases()),
                         [](const auto& info) { return info.param.name; });

}  // namespace
