#include "xyghz/teleport.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xyghz {

namespace {

constexpr std::array<int, 2> kBellQubits{0, 1};

int measured_qubit(Receiver r) { return r == Receiver::kC ? 2 : 3; }
int receiver_qubit(Receiver r) { return r == Receiver::kC ? 3 : 2; }

void check_branch(int j, int k) {
  if (j < 0 || j > 3) throw std::out_of_range("teleport: Bell outcome j must be in 0..3");
  if (k < 1 || k > 2) throw std::out_of_range("teleport: single-qubit outcome k must be 1 or 2");
}

Ket rotated_basis_ket(double mu, int k) {
  CVector v(2);
  if (k == 1) {
    v << std::cos(mu), std::sin(mu);
  } else {
    v << -std::sin(mu), std::cos(mu);
  }
  return Ket::normalized(std::move(v));
}

CorrectionTable build_table(Receiver receiver) {
  const TeleportConfig cfg{std::numbers::pi / 4.0, receiver};
  const DensityOp singlet = DensityOp::pure(bell_ket(2));
  const SwapResult ideal = swap_states(singlet, singlet, singlet);
  CorrectionTable table{};
  for (int i = 0; i < 8; ++i) {
    const auto& state = ideal.outcomes[static_cast<std::size_t>(i)].state;
    if (!state) throw std::logic_error("correction table: ideal swap outcome has zero weight");
    for (int j = 0; j < 4; ++j) {
      for (int k = 1; k <= 2; ++k) {
        table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
             [static_cast<std::size_t>(k - 1)] = best_pauli_for_resource(*state, j, k, cfg);
      }
    }
  }
  return table;
}

}  // namespace

void TeleportConfig::validate() const {
  if (!(mu >= 0.0 && mu <= std::numbers::pi / 4.0 + 1e-12)) {
    throw std::invalid_argument("mu must lie in [0, pi/4], got " + std::to_string(mu));
  }
}

MeasurementFamily measurement_family(const TeleportConfig& cfg) {
  cfg.validate();
  return MeasurementFamily{
      {Projector::onto(bell_ket(0)), Projector::onto(bell_ket(1)), Projector::onto(bell_ket(2)),
       Projector::onto(bell_ket(3))},
      {Projector::onto(rotated_basis_ket(cfg.mu, 1)),
       Projector::onto(rotated_basis_ket(cfg.mu, 2))}};
}

CMatrix BranchMap::apply(const CMatrix& input) const {
  return input(0, 0) * images[0] + input(0, 1) * images[1] + input(1, 0) * images[2] +
         input(1, 1) * images[3];
}

CMatrix branch_operator(const DensityOp& resource, const CMatrix& input, int j, int k,
                        const TeleportConfig& cfg) {
  check_branch(j, k);
  if (resource.dim() != 8) throw std::invalid_argument("teleport: resource must be three qubits");
  if (input.rows() != 2 || input.cols() != 2) {
    throw std::invalid_argument("teleport: input must be a single-qubit operator");
  }
  const MeasurementFamily fam = measurement_family(cfg);
  const std::array<int, 1> measured{measured_qubit(cfg.receiver)};
  const std::array<int, 1> kept{receiver_qubit(cfg.receiver)};

  const CMatrix p = embed(fam.bell[static_cast<std::size_t>(j)].matrix(), kBellQubits, 4) *
                    embed(fam.single[static_cast<std::size_t>(k - 1)].matrix(), measured, 4);
  const CMatrix joint = kron(input, resource.matrix());
  return partial_trace(CMatrix(p * joint * p), kept);
}

BranchMap branch_map(const DensityOp& resource, int j, int k, const TeleportConfig& cfg) {
  BranchMap map;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CMatrix unit = CMatrix::Zero(2, 2);
      unit(a, b) = 1.0;
      map.images[static_cast<std::size_t>(2 * a + b)] = branch_operator(resource, unit, j, k, cfg);
    }
  }
  return map;
}

ConditionedState conditioned_state(const DensityOp& resource, const Ket& input, int j, int k,
                                   const TeleportConfig& cfg) {
  if (input.dim() != 2) throw std::invalid_argument("teleport: input must be a single qubit");
  const CMatrix out = branch_operator(resource, input.outer(), j, k, cfg);
  ConditionedState c;
  c.probability = out.trace().real();
  if (c.probability > kZeroProbability) c.state = DensityOp::trusted(out / c.probability);
  return c;
}

double corrected_branch_fidelity(const BranchMap& map, int pauli_index) {
  const CMatrix s = pauli(pauli_index);
  BranchMap corrected;
  for (std::size_t n = 0; n < 4; ++n) corrected.images[n] = s * map.images[n] * s;
  return bloch_average([&](const Ket& phi) {
    const CVector& v = phi.amplitudes();
    return v.dot(corrected.apply(phi.outer()) * v).real();
  });
}

int best_pauli_for_resource(const DensityOp& resource, int j, int k, const TeleportConfig& cfg) {
  const BranchMap map = branch_map(resource, j, k, cfg);
  int best = 0;
  double best_value = corrected_branch_fidelity(map, 0);
  for (int c = 1; c < 4; ++c) {
    const double v = corrected_branch_fidelity(map, c);
    if (v > best_value + 1e-12) {
      best = c;
      best_value = v;
    }
  }
  return best;
}

const CorrectionTable& correction_table(Receiver receiver) {
  static const CorrectionTable to_c = build_table(Receiver::kC);
  static const CorrectionTable to_b = build_table(Receiver::kB);
  return receiver == Receiver::kC ? to_c : to_b;
}

int correction_for(int i, int j, int k, Receiver receiver) {
  if (i < 0 || i > 7) throw std::out_of_range("teleport: swap outcome i must be in 0..7");
  check_branch(j, k);
  return correction_table(receiver)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                   [static_cast<std::size_t>(k - 1)];
}

TeleportResult fidelity_closed_form(const ChainParams& p, const TeleportConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!(p.J > 0.0)) throw std::domain_error("closed-form fidelity covers J > 0 only");

  TeleportResult r;
  r.corrections = correction_table(cfg.receiver);
  if (p.T == 0.0) {
    const double g = p.gamma;
    switch (ground_phase(p)) {
      case GroundPhase::kBelowCritical:
        r.c1 = 2.0 / 3.0;
        r.c2 = 2.0 / 3.0;
        break;
      case GroundPhase::kCritical:
        r.c1 = 0.5;
        r.c2 = (1.0 + g + g * g + g * g * g) / 12.0;
        break;
      case GroundPhase::kAboveCritical: {
        const double ratio = g / std::hypot(p.eta, g);
        r.c1 = 2.0 / 3.0;
        r.c2 = 2.0 / 3.0 * ratio * ratio * ratio;
        break;
      }
    }
  } else {
    // Both coefficients are homogeneous in the hyperbolic functions, so the
    // common e^{-m} scale cancels.
    const ScaledHyperbolics h = scaled_hyperbolics(p);
    const double g = p.anisotropy_ratio();
    const double cb = h.cosh_b;
    const double cj = h.cosh_j;
    const double sb = h.sinh_b;
    const double sj = h.sinh_j;
    const double sum = cb + cj;
    r.c1 = 2.0 * (cb * cb + cb * cj + cj * cj) / (3.0 * sum * sum);
    r.c2 = 2.0 * (sj * sj * sj + g * sj * sj * sb + g * g * sj * sb * sb + g * g * g * sb * sb * sb) /
           (3.0 * sum * sum * sum);
  }
  r.phi_closed = r.c1 + r.c2 * std::cos(cfg.mu) * std::sin(cfg.mu);
  return r;
}

double fidelity_from_swap(const SwapResult& swap, const TeleportConfig& cfg,
                          std::vector<PathRecord>* paths) {
  cfg.validate();
  const CMatrix half_identity = 0.5 * CMatrix::Identity(2, 2);
  BranchMap total;
  for (auto& m : total.images) m = CMatrix::Zero(2, 2);
  if (paths != nullptr) paths->clear();

  for (int i = 0; i < 8; ++i) {
    const SwapOutcome& outcome = swap.outcomes[static_cast<std::size_t>(i)];
    for (int j = 0; j < 4; ++j) {
      for (int k = 1; k <= 2; ++k) {
        const int c = correction_for(i, j, k, cfg.receiver);
        PathRecord rec{i, j, k, c, 0.0, 0.0};
        if (outcome.state) {
          const BranchMap map = branch_map(*outcome.state, j, k, cfg);
          const CMatrix s = pauli(c);
          for (std::size_t n = 0; n < 4; ++n) {
            total.images[n] += outcome.probability * (s * map.images[n] * s);
          }
          if (paths != nullptr) {
            rec.weight = outcome.probability * map.apply(half_identity).trace().real();
            rec.fidelity = outcome.probability * corrected_branch_fidelity(map, c);
          }
        }
        if (paths != nullptr) paths->push_back(rec);
      }
    }
  }
  return corrected_branch_fidelity(total, 0);
}

double fidelity_simulated(const ChainParams& p, const TeleportConfig& cfg) {
  cfg.validate();
  return fidelity_from_swap(swap_all(p), cfg);
}

TeleportResult teleport_report(const ChainParams& p, const TeleportConfig& cfg) {
  TeleportResult r = fidelity_closed_form(p, cfg);
  r.phi_simulated = fidelity_from_swap(swap_all(p), cfg, &r.paths);
  return r;
}

}  // namespace xyghz
