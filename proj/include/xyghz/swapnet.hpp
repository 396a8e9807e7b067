#pragma once

// Entanglement swapping of three two-qubit pairs A_k B_k through a GHZ-basis
// measurement on A1 A2 A3, leaving a three-qubit state on B1 B2 B3.
//
// Six-qubit register order: (A1, B1, A2, B2, A3, B3).

#include <array>
#include <optional>

#include "xyghz/qcore.hpp"
#include "xyghz/xychain.hpp"

namespace xyghz {

inline constexpr std::array<int, 3> kSwapMeasuredQubits{0, 2, 4};
inline constexpr std::array<int, 3> kSwapKeptQubits{1, 3, 5};

struct SwapOutcome {
  double probability = 0.0;
  /// Conditional state on B1 B2 B3; empty when probability <= 1e-14.
  std::optional<DensityOp> state;
};

struct SwapResult {
  std::array<SwapOutcome, 8> outcomes;
  /// sum_i p_i chi^(i)
  DensityOp mixture;
};

/// Measures GHZ outcome `outcome` on the A qubits of chi1 x chi2 x chi3 and
/// returns its probability and the renormalised B state.
SwapOutcome swap_once(const DensityOp& chi1, const DensityOp& chi2, const DensityOp& chi3,
                      int outcome);

/// All eight outcomes.
SwapResult swap_states(const DensityOp& chi1, const DensityOp& chi2, const DensityOp& chi3);

/// Three identical copies of chain_state(p).
SwapResult swap_all(const ChainParams& p);

}  // namespace xyghz
