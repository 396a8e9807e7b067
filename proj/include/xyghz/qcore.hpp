#pragma once

// Dense n-qubit state primitives and model-independent entanglement metrics.
//
// Qubit ordering: the leftmost ket label is the most significant bit of the
// basis index, so |A1 A2 A3> = |a1 a2 a3> sits at index 4*a1 + 2*a2 + a3.

#include <utility>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "xyghz/linalg.hpp"

namespace xyghz {

inline constexpr double kZeroProbability = 1e-14;

/// Normalised pure state on n >= 1 qubits.
class Ket {
 public:
  /// Validates the dimension and normalisation (|1 - <k|k>| <= 1e-12).
  static Ket from_amplitudes(CVector amplitudes);
  /// Normalises a nonzero vector.
  static Ket normalized(CVector amplitudes);
  /// Computational basis state |index> on `qubits` qubits.
  static Ket basis(int qubits, Eigen::Index index);

  const CVector& amplitudes() const& { return amp_; }
  CVector amplitudes() && { return std::move(amp_); }
  Eigen::Index dim() const { return amp_.size(); }
  int qubits() const { return qubit_count(amp_.size()); }
  complex operator[](Eigen::Index i) const { return amp_(i); }

  /// |k><k|
  CMatrix outer() const { return amp_ * amp_.adjoint(); }

 private:
  explicit Ket(CVector amp) : amp_(std::move(amp)) {}
  CVector amp_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on n qubits.
class DensityOp {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-9;

  /// Full validation; throws std::invalid_argument naming the violated invariant.
  static DensityOp from_matrix(CMatrix m);
  /// Skips the spectral check. Used on results of trusted operations where
  /// the invariants hold by construction; shape is still checked.
  static DensityOp trusted(CMatrix m);
  static DensityOp pure(const Ket& k);
  static DensityOp maximally_mixed(int qubits);

  const CMatrix& matrix() const& { return m_; }
  CMatrix matrix() && { return std::move(m_); }
  Eigen::Index dim() const { return m_.rows(); }
  int qubits() const { return qubit_count(m_.rows()); }
  complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }
  double purity() const { return (m_ * m_).trace().real(); }

  /// Returns an empty string when every invariant holds, else a description
  /// of the first violation.
  std::string invariant_violation() const;

 private:
  explicit DensityOp(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Orthogonal projector (Hermitian, idempotent, integer trace).
class Projector {
 public:
  static Projector from_matrix(CMatrix m);
  /// |k><k|
  static Projector onto(const Ket& k);

  const CMatrix& matrix() const& { return m_; }
  CMatrix matrix() && { return std::move(m_); }
  Eigen::Index dim() const { return m_.rows(); }
  int rank() const;

 private:
  explicit Projector(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// sigma^0 = identity, sigma^1 = X, sigma^2 = Y, sigma^3 = Z = diag(1, -1).
CMatrix pauli(int index);

/// Bell kets with the index convention
///   0: (|00> + |11>)/sqrt2   1: (|01> + |10>)/sqrt2
///   2: (|01> - |10>)/sqrt2   3: (|00> - |11>)/sqrt2
Ket bell_ket(int index);

/// Three-qubit GHZ basis:
///   0: |000>+|111>  1: |001>+|110>  2: |010>+|101>  3: |011>+|100>
///   4: |011>-|100>  5: |010>-|101>  6: |001>-|110>  7: |000>-|111>
Ket ghz_ket(int index);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
Ket bloch_ket(double theta, double phi);

Ket tensor(const Ket& a, const Ket& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Lifts `op` (acting on `targets`, in the given order) to the full n-qubit
/// space, identity elsewhere.
CMatrix embed(const CMatrix& op, std::span<const int> targets, int qubits);

/// Reduced operator on `keep` (in the given order). Works for any square
/// operator, normalised or not.
CMatrix partial_trace(const CMatrix& m, std::span<const int> keep);
DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep);

struct Measurement {
  double probability = 0.0;
  /// (P x I) rho (P x I) / probability, or empty when probability <= 1e-14.
  std::optional<DensityOp> post_state;
};

Measurement measure(const DensityOp& rho, const Projector& proj, std::span<const int> subset);

/// Wootters concurrence via the Hermitian partner sqrt(rho) rho~ sqrt(rho).
/// `lambdas` (if non-null) receives the four square roots, descending.
double wootters_concurrence(const DensityOp& rho, std::array<double, 4>* lambdas = nullptr);

/// max_i <Bell_i| rho |Bell_i> over the four canonical Bell kets.
double bell_fraction(const DensityOp& rho);

/// Uniform average over the Bloch sphere: Gauss-Legendre in cos(theta)
/// (16 nodes) times a 32-point periodic trapezoid in phi.
double bloch_average(const std::function<double(const Ket&)>& f);

struct BlochNode {
  double theta;
  double phi;
  double weight;  // weights sum to 1
};

/// The fixed 512-node rule used by bloch_average.
const std::vector<BlochNode>& bloch_nodes();

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace xyghz
