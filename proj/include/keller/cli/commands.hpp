#pragma once

#include <string>
#include <vector>

#include "keller/cli/report.hpp"
#include "keller/complex_poly.hpp"
#include "keller/inject_cert.hpp"

namespace keller::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsageFailure = 2, kInternalFailure = 3 };

struct CommandResult {
  int exit_code = kOk;
  /// The report (or help text) destined for stdout.
  std::string out;
  /// Diagnostics destined for stderr.
  std::string err;
};

/// Runs one keller-lab invocation; args excludes the program name. Never
/// throws: failures are turned into an exit code and a message.
CommandResult run_command(const std::vector<std::string>& args);

enum class PlotFormat { Csv, Json };

/// Images f(x, y) of a grid x grid lattice spanning `box` (planar maps only).
std::string image_grid_data(const PolyMap& f, const std::vector<Interval>& box, unsigned grid, PlotFormat format);

/// Shear margins Re(e^{i gamma} h') - |g'| at lattice points inside the disk.
std::string shear_margin_data(const PlanarShearInput& input, const Rational& cos_gamma, const Rational& sin_gamma,
                              unsigned grid, PlotFormat format);

}  // namespace keller::cli
