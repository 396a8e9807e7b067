#include "xyghz/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace xyghz {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_index(int index, int upper, const char* what) {
  if (index < 0 || index >= upper) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(index) +
                            " outside [0, " + std::to_string(upper - 1) + "]");
  }
}

void check_square_power_of_two(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  if (!is_power_of_two(m.rows())) {
    throw std::invalid_argument(std::string(what) + ": dimension is not a power of two");
  }
}

Ket two_term(int qubits, Eigen::Index i0, Eigen::Index i1, double sign) {
  CVector v = CVector::Zero(Eigen::Index{1} << qubits);
  v(i0) = kInvSqrt2;
  v(i1) = sign * kInvSqrt2;
  return Ket::from_amplitudes(std::move(v));
}

void check_subset(std::span<const int> subset, int qubits, const char* what) {
  if (subset.empty()) {
    throw std::invalid_argument(std::string(what) + ": qubit subset is empty");
  }
  std::vector<bool> seen(static_cast<std::size_t>(qubits), false);
  for (int q : subset) {
    if (q < 0 || q >= qubits) {
      throw std::invalid_argument(std::string(what) + ": qubit index " + std::to_string(q) +
                                  " out of range for " + std::to_string(qubits) + " qubits");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument(std::string(what) + ": duplicate qubit index " +
                                  std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

// Bit of qubit q (0 = most significant) in a full-register index.
inline Eigen::Index bit_of(Eigen::Index index, int q, int qubits) {
  return (index >> (qubits - 1 - q)) & 1;
}

// Sub-register index formed by reading `targets` (in order) out of `index`.
Eigen::Index gather(Eigen::Index index, std::span<const int> targets, int qubits) {
  Eigen::Index out = 0;
  for (int q : targets) out = (out << 1) | bit_of(index, q, qubits);
  return out;
}

// Overwrites the `targets` bits of `index` with the bits of `sub`.
Eigen::Index scatter(Eigen::Index index, Eigen::Index sub, std::span<const int> targets,
                     int qubits) {
  const int k = static_cast<int>(targets.size());
  for (int t = 0; t < k; ++t) {
    const Eigen::Index mask = Eigen::Index{1} << (qubits - 1 - targets[t]);
    const Eigen::Index bit = (sub >> (k - 1 - t)) & 1;
    index = bit ? (index | mask) : (index & ~mask);
  }
  return index;
}

}  // namespace

// ---------------------------------------------------------------- Ket

Ket Ket::from_amplitudes(CVector amplitudes) {
  qubit_count(amplitudes.size());
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("Ket: squared norm " + std::to_string(norm2) + " is not 1");
  }
  return Ket(std::move(amplitudes));
}

Ket Ket::normalized(CVector amplitudes) {
  qubit_count(amplitudes.size());
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("Ket: cannot normalise a zero vector");
  amplitudes /= n;
  return Ket(std::move(amplitudes));
}

Ket Ket::basis(int qubits, Eigen::Index index) {
  if (qubits < 1) throw std::invalid_argument("Ket::basis: need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  if (index < 0 || index >= dim) throw std::out_of_range("Ket::basis: index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

// ---------------------------------------------------------------- DensityOp

DensityOp DensityOp::trusted(CMatrix m) {
  check_square_power_of_two(m, "DensityOp");
  return DensityOp(std::move(m));
}

DensityOp DensityOp::from_matrix(CMatrix m) {
  DensityOp rho = trusted(std::move(m));
  if (auto why = rho.invariant_violation(); !why.empty()) {
    throw std::invalid_argument("DensityOp: " + why);
  }
  return rho;
}

DensityOp DensityOp::pure(const Ket& k) { return DensityOp(k.outer()); }

DensityOp DensityOp::maximally_mixed(int qubits) {
  if (qubits < 1) throw std::invalid_argument("DensityOp: need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  return DensityOp(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::string DensityOp::invariant_violation() const {
  const double herm = hermiticity_defect(m_);
  if (herm > kHermitianTol) return "not Hermitian (defect " + std::to_string(herm) + ")";
  const complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) return "trace " + std::to_string(tr.real()) + " is not 1";
  const double low = hermitian_eigenvalues(m_)(0);
  if (low < -kEigenTol) return "negative eigenvalue " + std::to_string(low);
  return {};
}

// ---------------------------------------------------------------- Projector

Projector Projector::from_matrix(CMatrix m) {
  check_square_power_of_two(m, "Projector");
  if (hermiticity_defect(m) > 1e-10) throw std::invalid_argument("Projector: not Hermitian");
  if ((m * m - m).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Projector: not idempotent");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - std::round(tr)) > 1e-9) {
    throw std::invalid_argument("Projector: trace is not an integer");
  }
  return Projector(std::move(m));
}

Projector Projector::onto(const Ket& k) { return Projector(k.outer()); }

int Projector::rank() const { return static_cast<int>(std::lround(m_.trace().real())); }

// ---------------------------------------------------------------- constructors

CMatrix pauli(int index) {
  check_index(index, 4, "pauli");
  CMatrix m(2, 2);
  const complex i{0.0, 1.0};
  switch (index) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -i, i, 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Ket bell_ket(int index) {
  check_index(index, 4, "bell_ket");
  switch (index) {
    case 0: return two_term(2, 0b00, 0b11, +1.0);
    case 1: return two_term(2, 0b01, 0b10, +1.0);
    case 2: return two_term(2, 0b01, 0b10, -1.0);
    default: return two_term(2, 0b00, 0b11, -1.0);
  }
}

Ket ghz_ket(int index) {
  check_index(index, 8, "ghz_ket");
  // Indices 0..3 pair |b> with |7-b> (plus sign); 4..7 mirror them with minus.
  const Eigen::Index low = index < 4 ? index : 7 - index;
  const double sign = index < 4 ? 1.0 : -1.0;
  return two_term(3, low, 7 - low, sign);
}

Ket bloch_ket(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > std::numbers::pi) {
    // Same ray: (2pi - theta, phi + pi) up to a global sign.
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  CVector v(2);
  v(0) = std::cos(0.5 * theta);
  v(1) = std::polar(std::sin(0.5 * theta), phi);
  return Ket::from_amplitudes(std::move(v));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  return Ket::normalized(kron(a.amplitudes(), b.amplitudes()));
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  return DensityOp::trusted(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------- subsystem maps

CMatrix embed(const CMatrix& op, std::span<const int> targets, int qubits) {
  check_subset(targets, qubits, "embed");
  const Eigen::Index sub_dim = Eigen::Index{1} << targets.size();
  if (op.rows() != sub_dim || op.cols() != sub_dim) {
    throw std::invalid_argument("embed: operator dimension does not match target count");
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  CMatrix full = CMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Eigen::Index sr = gather(r, targets, qubits);
    for (Eigen::Index sc = 0; sc < sub_dim; ++sc) {
      full(r, scatter(r, sc, targets, qubits)) = op(sr, sc);
    }
  }
  return full;
}

CMatrix partial_trace(const CMatrix& m, std::span<const int> keep) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace: matrix is not square");
  const int qubits = qubit_count(m.rows());
  check_subset(keep, qubits, "partial_trace");

  std::vector<int> traced;
  for (int q = 0; q < qubits; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const Eigen::Index keep_dim = Eigen::Index{1} << keep.size();
  const Eigen::Index traced_dim = Eigen::Index{1} << traced.size();

  CMatrix out = CMatrix::Zero(keep_dim, keep_dim);
  for (Eigen::Index a = 0; a < keep_dim; ++a) {
    const Eigen::Index row_base = scatter(0, a, keep, qubits);
    for (Eigen::Index b = 0; b < keep_dim; ++b) {
      const Eigen::Index col_base = scatter(0, b, keep, qubits);
      complex sum = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        sum += m(scatter(row_base, t, traced, qubits), scatter(col_base, t, traced, qubits));
      }
      out(a, b) = sum;
    }
  }
  return out;
}

DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep) {
  return DensityOp::trusted(partial_trace(rho.matrix(), keep));
}

Measurement measure(const DensityOp& rho, const Projector& proj, std::span<const int> subset) {
  const int qubits = rho.qubits();
  check_subset(subset, qubits, "measure");
  if (proj.dim() != (Eigen::Index{1} << subset.size())) {
    throw std::invalid_argument("measure: projector dimension does not match subset size");
  }
  const CMatrix p = embed(proj.matrix(), subset, qubits);
  const CMatrix projected = p * rho.matrix() * p;

  Measurement out;
  out.probability = (p * rho.matrix()).trace().real();
  if (out.probability > kZeroProbability) {
    out.post_state = DensityOp::trusted(projected / out.probability);
  }
  return out;
}

// ---------------------------------------------------------------- metrics

double wootters_concurrence(const DensityOp& rho, std::array<double, 4>* lambdas) {
  if (rho.dim() != 4) throw std::invalid_argument("wootters_concurrence: need a two-qubit state");

  const HermitianEigen eig = jacobi_eigen(rho.matrix());
  RVector roots(4);
  for (int i = 0; i < 4; ++i) {
    double v = eig.values(i);
    if (v < -DensityOp::kEigenTol) {
      throw std::domain_error("wootters_concurrence: state has eigenvalue " + std::to_string(v));
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  const CMatrix sqrt_rho = eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
  // lambda_i are the singular values of sqrt(rho) (Y x Y) sqrt(rho)^*, read off
  // the Hermitian dilation to avoid square roots of tiny eigenvalues.
  const CMatrix yy = kron(pauli(2), pauli(2));
  const CMatrix a = sqrt_rho * yy * sqrt_rho.conjugate();
  CMatrix dilation = CMatrix::Zero(8, 8);
  dilation.topRightCorner(4, 4) = a;
  dilation.bottomLeftCorner(4, 4) = a.adjoint();

  const RVector mu = hermitian_eigenvalues(dilation);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = std::max(mu(7 - i), 0.0);
  if (lambdas != nullptr) *lambdas = l;
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double bell_fraction(const DensityOp& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("bell_fraction: need a two-qubit state");
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Ket bell = bell_ket(i);
    const CVector& b = bell.amplitudes();
    best = std::max(best, b.dot(rho.matrix() * b).real());
  }
  return std::clamp(best, 0.0, 1.0);
}

// ---------------------------------------------------------------- quadrature

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);

  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };

  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0;; ++iter) {
      if (iter > 100) throw ConvergenceError("gauss_legendre: Newton iteration stalled");
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

const std::vector<BlochNode>& bloch_nodes() {
  static const std::vector<BlochNode> nodes = [] {
    constexpr int kPolar = 16;
    constexpr int kAzimuth = 32;
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(kPolar, x, w);
    std::vector<BlochNode> out;
    out.reserve(kPolar * kAzimuth);
    for (int i = 0; i < kPolar; ++i) {
      const double theta = std::acos(x[static_cast<std::size_t>(i)]);
      for (int j = 0; j < kAzimuth; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / kAzimuth;
        out.push_back({theta, phi, 0.5 * w[static_cast<std::size_t>(i)] / kAzimuth});
      }
    }
    return out;
  }();
  return nodes;
}

double bloch_average(const std::function<double(const Ket&)>& f) {
  double sum = 0.0;
  for (const BlochNode& node : bloch_nodes()) {
    sum += node.weight * f(bloch_ket(node.theta, node.phi));
  }
  return sum;
}

}  // namespace xyghz
