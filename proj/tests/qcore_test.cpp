#include "xyghz/qcore.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xyghz/xychain.hpp"

namespace xyghz {
namespace {

using testing::random_density;
using testing::random_state;

constexpr double kInvSqrt2 = 0.70710678118654752440;

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(Pauli, StandardConvention) {
  EXPECT_EQ(max_abs_diff(pauli(0), CMatrix::Identity(2, 2)), 0.0);
  CMatrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  EXPECT_EQ(max_abs_diff(pauli(3), z), 0.0);
  EXPECT_EQ(pauli(2)(0, 1), complex(0.0, -1.0));
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT(max_abs_diff(pauli(i) * pauli(i), CMatrix::Identity(2, 2)), 1e-15) << i;
  }
  EXPECT_THROW(pauli(4), std::out_of_range);
  EXPECT_THROW(pauli(-1), std::out_of_range);
}

TEST(BellKet, SignConventionsAndOrthonormality) {
  const Ket b0 = bell_ket(0);
  EXPECT_NEAR(b0[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(b0[3].real(), kInvSqrt2, 1e-15);
  const Ket b2 = bell_ket(2);
  EXPECT_NEAR(b2[1].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(b2[2].real(), -kInvSqrt2, 1e-15);
  EXPECT_EQ(b2[0], complex(0.0));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double overlap = std::norm(bell_ket(a).amplitudes().dot(bell_ket(b).amplitudes()));
      EXPECT_NEAR(overlap, a == b ? 1.0 : 0.0, 1e-15);
    }
  }
  EXPECT_THROW(bell_ket(4), std::out_of_range);
}

TEST(GhzKet, ListedBasis) {
  const Ket g0 = ghz_ket(0);
  EXPECT_NEAR(g0[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(g0[7].real(), kInvSqrt2, 1e-15);
  const Ket g4 = ghz_ket(4);
  for (int n = 0; n < 8; ++n) {
    const double expect = n == 3 ? kInvSqrt2 : (n == 4 ? -kInvSqrt2 : 0.0);
    EXPECT_NEAR(g4[n].real(), expect, 1e-16) << n;
  }
  // Completeness: sum of projectors is the identity.
  CMatrix sum = CMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) sum += ghz_ket(i).outer();
  EXPECT_LT(max_abs_diff(sum, CMatrix::Identity(8, 8)), 1e-15);
  EXPECT_THROW(ghz_ket(8), std::out_of_range);
}

TEST(BlochKet, PolesAndEquator) {
  const Ket north = bloch_ket(0.0, 1.234);
  EXPECT_NEAR(std::abs(north[0]), 1.0, 1e-15);
  const Ket south = bloch_ket(std::numbers::pi, 0.0);
  EXPECT_NEAR(std::abs(south[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(south[0]), 0.0, 1e-15);
  const Ket plus = bloch_ket(std::numbers::pi / 2, 0.0);
  EXPECT_NEAR(plus[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(plus[1].real(), kInvSqrt2, 1e-15);
}

TEST(BlochKet, OutOfRangeAnglesNameTheSameRay) {
  const Ket a = bloch_ket(0.7, 0.4);
  const Ket b = bloch_ket(0.7 + 2 * std::numbers::pi, 0.4 - 2 * std::numbers::pi);
  const Ket c = bloch_ket(2 * std::numbers::pi - 0.7, 0.4 + std::numbers::pi);
  EXPECT_NEAR(std::norm(a.amplitudes().dot(b.amplitudes())), 1.0, 1e-14);
  EXPECT_NEAR(std::norm(a.amplitudes().dot(c.amplitudes())), 1.0, 1e-14);
}

TEST(Tensor, LeftOperandIsMostSignificant) {
  const Ket k = tensor(Ket::basis(1, 0), Ket::basis(1, 1));
  EXPECT_EQ(k.dim(), 4);
  EXPECT_NEAR(std::abs(k[1]), 1.0, 0.0);
  const DensityOp mixed = tensor(DensityOp::maximally_mixed(1), DensityOp::maximally_mixed(1));
  EXPECT_LT(max_abs_diff(mixed.matrix(), CMatrix::Identity(4, 4) / 4.0), 1e-15);
  const DensityOp bell = DensityOp::pure(bell_ket(0));
  const DensityOp half_id = DensityOp::from_matrix(pauli(0) / 2.0);
  EXPECT_NEAR(tensor(bell, half_id).trace(), 1.0, 1e-15);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const std::array<int, 1> first{0};
  const DensityOp reduced = partial_trace(DensityOp::pure(bell_ket(0)), first);
  EXPECT_LT(max_abs_diff(reduced.matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, GhzSingleQubitMarginalByHand) {
  // rho = (|000><000| + |000><111| + |111><000| + |111><111|)/2. Tracing two
  // qubits keeps only the diagonal terms: (|0><0| + |1><1|)/2.
  const DensityOp ghz = DensityOp::pure(ghz_ket(0));
  for (int q = 0; q < 3; ++q) {
    const std::array<int, 1> keep{q};
    EXPECT_LT(max_abs_diff(partial_trace(ghz, keep).matrix(), CMatrix::Identity(2, 2) / 2.0),
              1e-15)
        << q;
  }
}

TEST(PartialTrace, KeepOrderPermutesQubits) {
  const Ket k = tensor(Ket::basis(1, 0), Ket::basis(1, 1));  // |01>
  const std::array<int, 2> swapped{1, 0};
  const CMatrix r = partial_trace(k.outer(), swapped);
  EXPECT_NEAR(r(2, 2).real(), 1.0, 0.0);  // |10><10|
}

TEST(PartialTrace, RejectsBadSubsets) {
  const DensityOp rho = DensityOp::maximally_mixed(2);
  const std::array<int, 2> dup{0, 0};
  const std::array<int, 1> out_of_range{2};
  EXPECT_THROW(partial_trace(rho, dup), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, out_of_range), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), std::invalid_argument);
}

TEST(PartialTrace, ProductStateProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index da = Eigen::Index{2} << (trial % 2);
    const Eigen::Index db = Eigen::Index{2} << ((trial / 2) % 2);
    const CMatrix a = random_density(da, rng);
    const CMatrix b = random_density(db, rng);
    const DensityOp ab = tensor(DensityOp::from_matrix(a), DensityOp::from_matrix(b));
    const int na = qubit_count(da);
    const int nb = qubit_count(db);
    std::vector<int> keep_a(static_cast<std::size_t>(na));
    std::vector<int> keep_b(static_cast<std::size_t>(nb));
    std::iota(keep_a.begin(), keep_a.end(), 0);
    std::iota(keep_b.begin(), keep_b.end(), na);
    EXPECT_LT(max_abs_diff(partial_trace(ab, keep_a).matrix(), a), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(ab, keep_b).matrix(), b), 1e-12);
  }
}

TEST(Measure, ComputationalProjectorOnMixedState) {
  const DensityOp rho = DensityOp::maximally_mixed(2);
  const std::array<int, 1> first{0};
  const Measurement m = measure(rho, Projector::onto(Ket::basis(1, 0)), first);
  EXPECT_NEAR(m.probability, 0.5, 1e-15);
  ASSERT_TRUE(m.post_state.has_value());
  const CMatrix expect = kron(Ket::basis(1, 0).outer(), CMatrix::Identity(2, 2) / 2.0);
  EXPECT_LT(max_abs_diff(m.post_state->matrix(), expect), 1e-15);
}

TEST(Measure, GhzEigenprojectorAndOrthogonalOutcome) {
  const DensityOp ghz = DensityOp::pure(ghz_ket(0));
  const std::array<int, 3> all{0, 1, 2};
  const Measurement hit = measure(ghz, Projector::onto(ghz_ket(0)), all);
  EXPECT_NEAR(hit.probability, 1.0, 1e-15);
  ASSERT_TRUE(hit.post_state.has_value());
  EXPECT_LT(max_abs_diff(hit.post_state->matrix(), ghz.matrix()), 1e-15);
  const Measurement miss = measure(ghz, Projector::onto(ghz_ket(7)), all);
  EXPECT_NEAR(miss.probability, 0.0, 1e-15);
  EXPECT_FALSE(miss.post_state.has_value());
}

TEST(Measure, RejectsMismatchedProjector) {
  const DensityOp rho = DensityOp::maximally_mixed(3);
  const std::array<int, 1> one{0};
  EXPECT_THROW(measure(rho, Projector::onto(bell_ket(0)), one), std::invalid_argument);
}

TEST(Measure, CompletenessProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityOp rho = DensityOp::from_matrix(random_density(16, rng));
    const std::array<int, 3> ghz_qubits{3, 0, 2};
    double total = 0.0;
    for (int i = 0; i < 8; ++i) {
      const Measurement m = measure(rho, Projector::onto(ghz_ket(i)), ghz_qubits);
      total += m.probability;
      ASSERT_TRUE(m.post_state.has_value());
      EXPECT_EQ(m.post_state->invariant_violation(), "");
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(Jacobi, MatchesReferenceEigensolver) {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {2, 4, 8, 16}) {
    const CMatrix g = testing::random_matrix(n, rng);
    const CMatrix h = g + g.adjoint();
    const HermitianEigen e = jacobi_eigen(h);
    const Eigen::VectorXd ref = testing::eigenvalues(h);
    EXPECT_LT((e.values - ref).cwiseAbs().maxCoeff(), 1e-12 * h.norm()) << n;
    EXPECT_LT(max_abs_diff(h * e.vectors, e.vectors * e.values.asDiagonal()), 1e-12 * h.norm());
    EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::Identity(n, n)), 1e-13);
  }
}

TEST(Jacobi, DegenerateSpectrum) {
  const HermitianEigen e = jacobi_eigen(CMatrix::Identity(4, 4));
  EXPECT_LT((e.values - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DensityOp, RejectsInvariantViolations) {
  CMatrix not_hermitian = CMatrix::Identity(2, 2) / 2.0;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityOp::from_matrix(not_hermitian), std::invalid_argument);
  EXPECT_THROW(DensityOp::from_matrix(CMatrix::Identity(2, 2)), std::invalid_argument);
  CMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityOp::from_matrix(negative), std::invalid_argument);
  EXPECT_THROW(DensityOp::from_matrix(CMatrix::Identity(3, 3) / 3.0), std::invalid_argument);
}

TEST(Ket, RejectsUnnormalisedAmplitudes) {
  CVector v = CVector::Ones(2);
  EXPECT_THROW(Ket::from_amplitudes(v), std::invalid_argument);
  EXPECT_NEAR(Ket::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(Ket::normalized(CVector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(Ket::from_amplitudes(CVector::Ones(3) / std::sqrt(3.0)), std::invalid_argument);
}

TEST(Projector, ValidatesIdempotence) {
  EXPECT_EQ(Projector::from_matrix(CMatrix::Identity(4, 4)).rank(), 4);
  EXPECT_THROW(Projector::from_matrix(2.0 * CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(WoottersConcurrence, ExtremeCases) {
  EXPECT_NEAR(wootters_concurrence(DensityOp::pure(bell_ket(2))), 1.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(DensityOp::pure(Ket::basis(2, 0))), 0.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(DensityOp::maximally_mixed(2)), 0.0, 1e-12);
  EXPECT_THROW(wootters_concurrence(DensityOp::maximally_mixed(3)), std::invalid_argument);
}

TEST(WoottersConcurrence, ThermalFixture) {
  // Independent numpy evaluation from the eigenvalues of the non-Hermitian R.
  const DensityOp chi = thermal_state({1.0, 0.5, 0.4, 0.8});
  std::array<double, 4> l{};
  EXPECT_NEAR(wootters_concurrence(chi, &l), 0.11925778245523326, 1e-12);
  EXPECT_NEAR(l[0], 0.5409362, 1e-7);
  EXPECT_NEAR(l[1], 0.29617936, 1e-8);
  EXPECT_NEAR(l[2], 0.08109631, 1e-8);
  EXPECT_NEAR(l[3], 0.04440275, 1e-8);
}

TEST(WoottersConcurrence, AgreesWithNonHermitianRoute) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    // Mix toward a Bell state so that entangled cases are well represented.
    const double w = trial / 50.0;
    const CMatrix rho =
        (1.0 - w) * random_density(4, rng) + w * DensityOp::pure(bell_ket(trial % 4)).matrix();
    EXPECT_NEAR(wootters_concurrence(DensityOp::from_matrix(rho)),
                testing::concurrence_from_r(rho), 1e-9);
  }
}

TEST(WoottersConcurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix rho = 0.5 * random_density(4, rng) + 0.5 * bell_ket(1).outer();
    const CMatrix u = kron(testing::random_unitary(2, rng), testing::random_unitary(2, rng));
    const double before = wootters_concurrence(DensityOp::from_matrix(rho));
    const double after =
        wootters_concurrence(DensityOp::from_matrix(u * rho * u.adjoint()));
    EXPECT_NEAR(before, after, 1e-8);
  }
}

TEST(BellFraction, CanonicalOverlaps) {
  EXPECT_NEAR(bell_fraction(DensityOp::maximally_mixed(2)), 0.25, 1e-15);
  EXPECT_NEAR(bell_fraction(DensityOp::pure(bell_ket(1))), 1.0, 1e-15);
  // Ground state on the critical line: equal mixture of Phi^2 and Phi^3.
  const DensityOp boundary = ground_state({1.0, 0.6, 0.8, 0.0});
  EXPECT_NEAR(bell_fraction(boundary), 0.5, 1e-12);
}

TEST(BellFraction, ProductPureStatesAtMostOneHalf) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const CVector a = random_state(2, rng);
    const CVector b = random_state(2, rng);
    const DensityOp rho = DensityOp::from_matrix(kron(a * a.adjoint(), b * b.adjoint()));
    const double f = bell_fraction(rho);
    EXPECT_LE(f, 0.5 + 1e-12);
    EXPECT_GE(f, 0.0);
  }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(16, x, w);
  for (int deg = 0; deg <= 31; ++deg) {
    double sum = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) sum += w[n] * std::pow(x[n], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << deg;
  }
}

TEST(BlochAverage, Normalisation) {
  EXPECT_NEAR(bloch_average([](const Ket&) { return 1.0; }), 1.0, 1e-13);
  EXPECT_EQ(bloch_nodes().size(), 512u);
}

TEST(BlochAverage, PopulationOfZero) {
  EXPECT_NEAR(bloch_average([](const Ket& k) { return std::norm(k[0]); }), 0.5, 1e-14);
}

TEST(BlochAverage, FourthPowerOverlapMatchesAnalyticValue) {
  // |<phi|phi0>|^2 = (1 + n.n0)/2, so the average of its square is
  // (1 + 0 + 1/3)/4 = 1/3.
  const Ket ref = bloch_ket(0.9, 2.1);
  auto f = [&](const Ket& k) { return std::pow(std::norm(ref.amplitudes().dot(k.amplitudes())), 2); };
  EXPECT_NEAR(bloch_average(f), 1.0 / 3.0, 1e-14);

  std::mt19937_64 rng(23);
  const int samples = 1'000'000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int n = 0; n < samples; ++n) {
    const auto [theta, phi] = testing::random_bloch_angles(rng);
    const double v = f(bloch_ket(theta, phi));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
  EXPECT_NEAR(mean, 1.0 / 3.0, 3.0 * se);
}

TEST(BlochAverage, QuadraticBlochPolynomialsAgreeWithMonteCarlo) {
  // f = c0 + c.n + n^T M n in the Bloch vector n.
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double c0 = g(rng);
    const Eigen::Vector3d c(g(rng), g(rng), g(rng));
    const Eigen::Matrix3d m = Eigen::Matrix3d::NullaryExpr([&] { return g(rng); });
    auto bloch_vector = [](const Ket& k) {
      const CMatrix rho = k.outer();
      return Eigen::Vector3d(2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
                             (rho(0, 0) - rho(1, 1)).real());
    };
    auto f = [&](const Ket& k) {
      const Eigen::Vector3d n = bloch_vector(k);
      return c0 + c.dot(n) + n.dot(m * n);
    };
    const double quad = bloch_average(f);
    EXPECT_NEAR(quad, c0 + m.trace() / 3.0, 1e-13);

    const int samples = 1'000'000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int n = 0; n < samples; ++n) {
      const auto [theta, phi] = testing::random_bloch_angles(rng);
      const double v = f(bloch_ket(theta, phi));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
    EXPECT_NEAR(quad, mean, 3.0 * se);
  }
}

}  // namespace
}  // namespace xyghz
