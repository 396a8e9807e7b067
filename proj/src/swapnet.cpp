#include "xyghz/swapnet.hpp"

#include <stdexcept>
#include <string>

namespace xyghz {

namespace {

void check_pair(const DensityOp& chi, const char* name) {
  if (chi.dim() != 4) {
    throw std::invalid_argument(std::string("swap: ") + name + " is not a two-qubit state");
  }
}

DensityOp product_register(const DensityOp& chi1, const DensityOp& chi2, const DensityOp& chi3) {
  check_pair(chi1, "chi1");
  check_pair(chi2, "chi2");
  check_pair(chi3, "chi3");
  return tensor(tensor(chi1, chi2), chi3);
}

SwapOutcome measure_outcome(const DensityOp& product, int outcome) {
  const Projector ghz = Projector::onto(ghz_ket(outcome));
  const Measurement m = measure(product, ghz, kSwapMeasuredQubits);
  SwapOutcome out;
  out.probability = m.probability;
  if (m.post_state) out.state = partial_trace(*m.post_state, kSwapKeptQubits);
  return out;
}

}  // namespace

SwapOutcome swap_once(const DensityOp& chi1, const DensityOp& chi2, const DensityOp& chi3,
                      int outcome) {
  if (outcome < 0 || outcome > 7) {
    throw std::out_of_range("swap_once: outcome " + std::to_string(outcome) + " outside 0..7");
  }
  return measure_outcome(product_register(chi1, chi2, chi3), outcome);
}

SwapResult swap_states(const DensityOp& chi1, const DensityOp& chi2, const DensityOp& chi3) {
  const DensityOp product = product_register(chi1, chi2, chi3);
  std::array<SwapOutcome, 8> outcomes;
  CMatrix mixture = CMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    outcomes[static_cast<std::size_t>(i)] = measure_outcome(product, i);
    const SwapOutcome& o = outcomes[static_cast<std::size_t>(i)];
    if (o.state) mixture += o.probability * o.state->matrix();
  }
  return SwapResult{std::move(outcomes), DensityOp::trusted(std::move(mixture))};
}

SwapResult swap_all(const ChainParams& p) {
  const DensityOp chi = chain_state(p);
  return swap_states(chi, chi, chi);
}

}  // namespace xyghz
