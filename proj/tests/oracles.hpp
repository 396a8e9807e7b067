#pragma once

// Test-only reference routines. Nothing here calls into the code paths it is
// used to check.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace xyghz::testing {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat random_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
  return m;
}

/// G G^dagger / tr, full rank with probability one.
inline Mat random_density(Eigen::Index n, std::mt19937_64& rng) {
  Mat g = random_matrix(n, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

inline Vec random_state(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

/// Haar-ish unitary from a QR decomposition.
inline Mat random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(n, rng));
  return qr.householderQ() * Mat::Identity(n, n);
}

/// exp(A) by scaling and squaring of a truncated Taylor series.
inline Mat expm(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Wootters concurrence from the non-Hermitian R = rho (Y x Y) rho* (Y x Y)
/// with a general complex eigensolver.
inline double concurrence_from_r(const Mat& rho) {
  Mat y(2, 2);
  y << 0.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0.0;
  Mat yy(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) yy.block(2 * r, 2 * c, 2, 2) = y(r, c) * y;
  const Mat big_r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(big_r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(l[0] - l[1] - l[2] - l[3], 0.0);
}

/// Hermitian eigenvalues from Eigen's tridiagonal QR.
inline Eigen::VectorXd eigenvalues(const Mat& a) {
  return Eigen::SelfAdjointEigenSolver<Mat>(a).eigenvalues();
}

/// Uniformly distributed Bloch angles.
inline std::pair<double, double> random_bloch_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * M_PI * u(rng)};
}

}  // namespace xyghz::testing
