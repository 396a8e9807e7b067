#include "xyghz/xychain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace xyghz {

namespace {

// a|00> + b|11>, normalised.
Ket even_parity_ket(double a, double b) {
  CVector v = CVector::Zero(4);
  v(0) = a;
  v(3) = b;
  return Ket::normalized(std::move(v));
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

void ChainParams::validate() const {
  if (!std::isfinite(J)) throw std::invalid_argument("J must be finite");
  if (!(gamma >= -1.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [-1, 1], got " + std::to_string(gamma));
  }
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
  if (std::isnan(T) || T < 0.0) {
    throw std::invalid_argument("T must be >= 0, got " + std::to_string(T));
  }
}

double ChainParams::script_b() const { return std::hypot(eta, gamma) * std::abs(J); }

double ChainParams::anisotropy_ratio() const {
  const double b = script_b();
  return b > 0.0 ? gamma * J / b : 0.0;
}

GroundPhase ground_phase(const ChainParams& p, double tie_tol) {
  const double d = p.eta * p.eta + p.gamma * p.gamma - 1.0;
  if (std::abs(d) <= tie_tol) return GroundPhase::kCritical;
  return d < 0.0 ? GroundPhase::kBelowCritical : GroundPhase::kAboveCritical;
}

CMatrix hamiltonian(const ChainParams& p) {
  const CMatrix xx = kron(pauli(1), pauli(1));
  const CMatrix yy = kron(pauli(2), pauli(2));
  const CMatrix zi = kron(pauli(3), pauli(0));
  const CMatrix iz = kron(pauli(0), pauli(3));
  return 0.5 * (1.0 + p.gamma) * p.J * xx + 0.5 * (1.0 - p.gamma) * p.J * yy +
         0.5 * p.field() * (zi + iz);
}

SpectrumXY spectrum(const ChainParams& p) {
  p.validate();
  const double b = p.script_b();
  const double bm = p.field();
  const double gj = p.gamma * p.J;

  // The {|00>,|11>} block is [[B_m, gJ], [gJ, -B_m]]. Of the two parallel
  // forms of each eigenvector, use the one without cancellation.
  Ket phi0 = Ket::basis(2, 0b00);
  Ket phi3 = Ket::basis(2, 0b11);
  if (b > 0.0) {
    if (bm >= 0.0) {
      phi0 = even_parity_ket(b + bm, gj);
    } else {
      phi0 = even_parity_ket(sign_of(gj) * gj, sign_of(gj) * (b - bm));
    }
    if (bm <= 0.0) {
      phi3 = even_parity_ket(b - bm, -gj);
    } else if (gj == 0.0) {
      phi3 = Ket::basis(2, 0b11);
    } else {
      phi3 = even_parity_ket(sign_of(gj) * gj, -sign_of(gj) * (b + bm));
    }
  }

  SpectrumXY s{{b, p.J, -p.J, -b}, {phi0, bell_ket(1), bell_ket(2), phi3}, 0.0};
  if (p.T > 0.0) {
    const double beta = p.beta();
    const double shift = beta * std::max(b, std::abs(p.J));
    double sum = 0.0;
    for (double e : s.energies) sum += std::exp(-beta * e - shift);
    s.log_partition = shift + std::log(sum);
  } else {
    s.log_partition = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

DensityOp thermal_state(const ChainParams& p) {
  p.validate();
  if (!(p.T > 0.0)) {
    throw std::domain_error("thermal_state requires T > 0; use ground_state for T = 0");
  }
  const SpectrumXY s = spectrum(p);
  const double beta = p.beta();
  const double shift = beta * std::max(s.energies[0], std::abs(p.J));

  std::array<double, 4> w{};
  double total = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    w[a] = std::exp(-beta * s.energies[a] - shift);
    total += w[a];
  }
  CMatrix rho = CMatrix::Zero(4, 4);
  for (std::size_t a = 0; a < 4; ++a) rho += (w[a] / total) * s.eigenkets[a].outer();
  return DensityOp::trusted(std::move(rho));
}

DensityOp ground_state(const ChainParams& p) {
  p.validate();
  if (p.J == 0.0) throw std::domain_error("ground_state: J = 0 has a degenerate spectrum");
  const SpectrumXY s = spectrum(p);
  // -|J| level: singlet for antiferromagnetic J, triplet Bell state otherwise.
  const CMatrix low_pair = (p.J > 0.0 ? s.eigenkets[2] : s.eigenkets[1]).outer();
  const CMatrix low_even = s.eigenkets[3].outer();
  switch (ground_phase(p)) {
    case GroundPhase::kBelowCritical: return DensityOp::trusted(low_pair);
    case GroundPhase::kCritical: return DensityOp::trusted(0.5 * (low_pair + low_even));
    case GroundPhase::kAboveCritical: break;
  }
  return DensityOp::trusted(low_even);
}

DensityOp chain_state(const ChainParams& p) {
  return p.T > 0.0 ? thermal_state(p) : ground_state(p);
}

ScaledHyperbolics scaled_hyperbolics(const ChainParams& p) {
  if (!(p.T > 0.0)) throw std::domain_error("scaled_hyperbolics requires T > 0");
  const double beta = p.beta();
  const double xb = beta * p.script_b();
  const double xj = beta * p.J;
  ScaledHyperbolics h;
  h.shift = std::max(xb, std::abs(xj));
  const double epb = std::exp(xb - h.shift);
  const double emb = std::exp(-xb - h.shift);
  h.exp_pj = std::exp(xj - h.shift);
  h.exp_mj = std::exp(-xj - h.shift);
  h.cosh_b = 0.5 * (epb + emb);
  h.sinh_b = 0.5 * (epb - emb);
  h.cosh_j = 0.5 * (h.exp_pj + h.exp_mj);
  h.sinh_j = 0.5 * (h.exp_pj - h.exp_mj);
  return h;
}

PairMetrics pair_metrics(const ChainParams& p) {
  p.validate();
  PairMetrics m;
  if (p.T == 0.0) {
    const DensityOp rho = ground_state(p);
    m.concurrence = wootters_concurrence(rho, &m.lambdas);
    m.fef = bell_fraction(rho);
    return m;
  }

  const ScaledHyperbolics h = scaled_hyperbolics(p);
  const double z = 2.0 * (h.cosh_b + h.cosh_j);
  const double g = std::abs(p.anisotropy_ratio());
  const double unit = std::exp(-h.shift);
  const double root = std::hypot(unit, g * h.sinh_b);
  const double upper = root + g * h.sinh_b;
  // (root - g s) rewritten as unit^2 / (root + g s) to avoid cancellation.
  const double lower = upper > 0.0 ? unit * unit / upper : 0.0;

  m.lambdas = {h.exp_pj / z, h.exp_mj / z, upper / z, lower / z};
  std::sort(m.lambdas.begin(), m.lambdas.end(), std::greater<>());
  m.concurrence = std::max(m.lambdas[0] - m.lambdas[1] - m.lambdas[2] - m.lambdas[3], 0.0);

  const double ratio = p.anisotropy_ratio();
  const double even_plus = h.cosh_b + ratio * h.sinh_b;   // <Bell_3|.|Bell_3> * Z
  const double even_minus = h.cosh_b - ratio * h.sinh_b;  // <Bell_0|.|Bell_0> * Z
  m.fef = std::max({h.exp_pj, h.exp_mj, even_plus, even_minus}) / z;
  return m;
}

double fef_branch(const ChainParams& p) {
  p.validate();
  const ScaledHyperbolics h = scaled_hyperbolics(p);
  const double z = 2.0 * (h.cosh_b + h.cosh_j);
  if (std::hypot(p.eta, p.gamma) <= 1.0) return h.exp_pj / z;
  return (h.cosh_b + p.anisotropy_ratio() * h.sinh_b) / z;
}

}  // namespace xyghz
