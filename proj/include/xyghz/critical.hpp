#pragma once

// Critical temperatures of the XY-chain pipeline:
//   kind 1: concurrence of the pair state reaches 0,
//   kind 2: Bell fraction of the pair state reaches 1/2,
//   kind 3: swapped-resource teleportation fidelity (mu = pi/4) reaches 2/3.

#include <span>
#include <vector>

namespace xyghz {

enum class CriticalKind { kConcurrence = 1, kBellFraction = 2, kFidelity = 3 };

/// Parses 1, 2 or 3. Throws std::invalid_argument otherwise.
CriticalKind critical_kind_from_int(int kind);

struct SolverOptions {
  double t_hi = 5.0;        // upper scan bound, units of J
  double scan_step = 0.05;  // units of J
  double t_lo = 1e-6;       // lowest scanned temperature, units of J
  double tolerance = 1e-8;  // final bracket width, units of J
  /// Raise t_hi to twice the large-eta asymptote when gamma > 0 and eta > 2.
  bool auto_expand = true;
};

struct CriticalResult {
  CriticalKind kind = CriticalKind::kConcurrence;
  double gamma = 0.0;
  double eta = 0.0;
  double t_over_j = 0.0;
  double bracket_lo = 0.0;  // units of J
  double bracket_hi = 0.0;
  bool converged = false;
  /// Sign changes seen by the scan; more than one means reentrant behaviour
  /// and t_over_j is the largest root.
  int crossings = 0;
};

/// Signed distance from the threshold at temperature T; positive means the
/// resource is still useful (entangled / F > 1/2 / Phi > 2/3).
double critical_function(CriticalKind kind, double gamma, double eta, double J, double T);

/// Value of critical_function's underlying quantity minus threshold at T = 0.
double zero_temperature_margin(CriticalKind kind, double gamma, double eta, double J);

CriticalResult solve_critical(CriticalKind kind, double gamma, double eta, double J,
                              const SolverOptions& opts = {});

CriticalResult t1_critical(double gamma, double eta, double J, const SolverOptions& opts = {});
CriticalResult t2_critical(double gamma, double eta, double J, const SolverOptions& opts = {});
CriticalResult t3_critical(double gamma, double eta, double J, const SolverOptions& opts = {});

/// eta J / (ln eta - ln gamma + ln 2)
double t2_asymptote(double gamma, double eta, double J);
/// eta J / (3 ln eta - 3 ln gamma + ln 2)
double t3_asymptote(double gamma, double eta, double J);

/// One result per grid value, in grid order. Rows are solved concurrently
/// when `parallel` is set.
std::vector<CriticalResult> sweep(CriticalKind kind, double gamma, std::span<const double> eta_grid,
                                  double J, const SolverOptions& opts = {}, bool parallel = true);

}  // namespace xyghz
