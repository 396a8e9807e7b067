#pragma once

// Two-qubit Heisenberg XY chain in a uniform longitudinal field:
//
//   H = (1+g)J/2 X.X + (1-g)J/2 Y.Y + B_m/2 (Z.I + I.Z),   B_m = eta J.
//
// Spectrum {B, J, -J, -B} with B = sqrt(eta^2 + g^2) |J|.

#include <array>

#include "xyghz/qcore.hpp"

namespace xyghz {

struct ChainParams {
  double J = 1.0;
  double gamma = 0.0;
  double eta = 0.0;
  double T = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double field() const { return eta * J; }
  /// The energy scale of the {|00>, |11>} block.
  double script_b() const;
  double beta() const { return 1.0 / T; }
  /// gamma J / B, taken as 0 when B = 0.
  double anisotropy_ratio() const;
};

/// Ground-state phase at T = 0, keyed on eta^2 + gamma^2 versus 1.
enum class GroundPhase { kBelowCritical, kCritical, kAboveCritical };

GroundPhase ground_phase(const ChainParams& p, double tie_tol = 1e-12);

struct SpectrumXY {
  std::array<double, 4> energies{};  // B, J, -J, -B
  std::array<Ket, 4> eigenkets;
  /// log Z at the parameter temperature (NaN when T = 0).
  double log_partition = 0.0;
};

struct PairMetrics {
  std::array<double, 4> lambdas{};  // descending
  double concurrence = 0.0;
  /// Largest canonical Bell overlap.
  double fef = 0.0;
};

CMatrix hamiltonian(const ChainParams& p);

SpectrumXY spectrum(const ChainParams& p);

/// Gibbs state at T > 0 from the analytic eigenpairs with max-shifted
/// Boltzmann weights. Throws std::domain_error for T <= 0.
DensityOp thermal_state(const ChainParams& p);

/// T = 0 limit: the singlet-like -|J| eigenstate below the critical field,
/// the Phi^3 eigenstate above it, and their equal mixture on the boundary.
/// Requires J != 0.
DensityOp ground_state(const ChainParams& p);

/// thermal_state for T > 0, ground_state for T = 0.
DensityOp chain_state(const ChainParams& p);

/// Closed-form lambdas, concurrence and Bell fraction for T > 0; the T = 0
/// case is evaluated from ground_state with the generic oracles.
PairMetrics pair_metrics(const ChainParams& p);

/// The two-branch Bell fraction formula keyed on sqrt(eta^2+gamma^2) vs 1.
/// Equals PairMetrics::fef whenever that branch holds the largest overlap,
/// which is always true at low enough temperature.
double fef_branch(const ChainParams& p);

/// Temperature-scaled hyperbolic functions: each value is multiplied by
/// e^{-m} with m = beta * max(B, |J|), so nothing overflows for large beta.
struct ScaledHyperbolics {
  double shift = 0.0;  // m
  double cosh_b = 0.0;
  double sinh_b = 0.0;
  double cosh_j = 0.0;
  double sinh_j = 0.0;
  double exp_pj = 0.0;  // e^{beta J - m}
  double exp_mj = 0.0;  // e^{-beta J - m}
};

ScaledHyperbolics scaled_hyperbolics(const ChainParams& p);

}  // namespace xyghz
