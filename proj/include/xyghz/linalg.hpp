#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace xyghz {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Raised when an iterative numerical routine fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns, orthonormal
};

/// Cyclic complex Jacobi diagonalisation of a Hermitian matrix.
///
/// Only the lower triangle's Hermitian part is trusted; the input is
/// symmetrised as (A + A^dagger)/2 before sweeping. Throws ConvergenceError
/// when the off-diagonal norm has not dropped below tolerance after
/// `max_sweeps` sweeps.
HermitianEigen jacobi_eigen(const CMatrix& a, int max_sweeps = 64);

/// Eigenvalues only, ascending.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Largest entrywise modulus of A - A^dagger.
double hermiticity_defect(const CMatrix& a);

inline bool is_power_of_two(Eigen::Index n) { return n >= 2 && (n & (n - 1)) == 0; }

/// log2 of a power-of-two dimension. Throws std::invalid_argument otherwise.
int qubit_count(Eigen::Index dim);

}  // namespace xyghz
