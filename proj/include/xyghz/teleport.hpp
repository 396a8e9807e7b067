#pragma once

// Conditional teleportation of one qubit A1 through a three-qubit resource on
// (A2, B, C): Bell measurement on A1 A2, a single-qubit measurement on B in the
// rotated basis {cos mu|0> + sin mu|1>, -sin mu|0> + cos mu|1>}, and a Pauli
// correction on C chosen by (swap outcome i, Bell outcome j, B outcome k).
//
// Four-qubit register order: (A1, A2, B, C).

#include <array>
#include <numbers>
#include <optional>
#include <vector>

#include "xyghz/qcore.hpp"
#include "xyghz/swapnet.hpp"
#include "xyghz/xychain.hpp"

namespace xyghz {

/// Which resource qubit reconstructs the input. kC measures B; kB is the
/// mirrored protocol that measures C.
enum class Receiver { kC, kB };

struct TeleportConfig {
  double mu = std::numbers::pi / 4.0;
  Receiver receiver = Receiver::kC;

  /// Throws std::invalid_argument unless 0 <= mu <= pi/4.
  void validate() const;
};

struct MeasurementFamily {
  std::array<Projector, 4> bell;    // on A1 A2, index j
  std::array<Projector, 2> single;  // on the measured resource qubit, k = 1, 2
};

MeasurementFamily measurement_family(const TeleportConfig& cfg);

/// Linear map from an input operator on A1 to the unnormalised receiver
/// operator of one (j, k) branch: images of |0><0|, |0><1|, |1><0|, |1><1|.
struct BranchMap {
  std::array<CMatrix, 4> images;

  CMatrix apply(const CMatrix& input) const;
};

/// Literal projection: (P_j x P_k x I)(input x resource)(P_j x P_k x I), traced
/// down to the receiver. Returns the unnormalised 2x2 operator.
CMatrix branch_operator(const DensityOp& resource, const CMatrix& input, int j, int k,
                        const TeleportConfig& cfg);

BranchMap branch_map(const DensityOp& resource, int j, int k, const TeleportConfig& cfg);

struct ConditionedState {
  double probability = 0.0;
  std::optional<DensityOp> state;  // empty when probability <= 1e-14
};

ConditionedState conditioned_state(const DensityOp& resource, const Ket& input, int j, int k,
                                   const TeleportConfig& cfg);

/// Bloch-averaged <phi| s_c M(|phi><phi|) s_c |phi> for a branch map.
double corrected_branch_fidelity(const BranchMap& map, int pauli_index);

/// Pauli index in 0..3 maximising corrected_branch_fidelity for this
/// resource. Ties resolve to the smallest index.
int best_pauli_for_resource(const DensityOp& resource, int j, int k, const TeleportConfig& cfg);

/// Indexed [i][j][k-1].
using CorrectionTable = std::array<std::array<std::array<int, 2>, 4>, 8>;

/// Fixed correction table. The reference resource for swap outcome i is the
/// state that outcome leaves when three pure singlets are swapped; the best
/// Pauli is searched at mu = pi/4 and cached.
const CorrectionTable& correction_table(Receiver receiver = Receiver::kC);

int correction_for(int i, int j, int k, Receiver receiver = Receiver::kC);

struct PathRecord {
  int i = 0;
  int j = 0;
  int k = 1;
  int correction = 0;
  /// p_i times the Bloch-averaged branch probability q_jk.
  double weight = 0.0;
  /// Contribution of the path to the averaged fidelity.
  double fidelity = 0.0;
};

struct TeleportResult {
  double c1 = 0.0;
  double c2 = 0.0;
  double phi_closed = 0.0;
  std::optional<double> phi_simulated;
  CorrectionTable corrections{};
  std::vector<PathRecord> paths;  // 64 entries once simulated
};

/// Closed form C1 + C2 cos(mu) sin(mu); at T = 0 the three ground-state
/// limits. Covers J > 0.
TeleportResult fidelity_closed_form(const ChainParams& p, const TeleportConfig& cfg);

/// Full simulation: swap three chains, run every (i, j, k) branch with its
/// tabulated correction and average over input states.
double fidelity_simulated(const ChainParams& p, const TeleportConfig& cfg);

/// Closed form plus the simulated value and per-path records.
TeleportResult teleport_report(const ChainParams& p, const TeleportConfig& cfg);

/// Same pipeline on an explicit swap result.
double fidelity_from_swap(const SwapResult& swap, const TeleportConfig& cfg,
                          std::vector<PathRecord>* paths = nullptr);

}  // namespace xyghz
