#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xyghz/report.hpp"

namespace xyghz::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kNonConvergence = 2 };

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// gamma = 0 critical temperatures: header row of eta values, then T2/J and T3/J rows.
Table table1(double J = 1.0);

/// Long-format T3/J curves for each gamma on eta = 0, eta_max/steps, ..., eta_max.
/// `converged` receives false if any row failed to converge.
Table fig1(const std::vector<double>& gammas, double eta_max, int steps, bool* converged = nullptr);

}  // namespace xyghz::cli
