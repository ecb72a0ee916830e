#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rotary/linalg.hpp"
#include "rotary/random.hpp"

namespace rotary {
namespace {

constexpr double kPi = std::numbers::pi;

SkewMatrixXd yawGenerator() {
  Eigen::Matrix3d m;
  m << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return SkewMatrixXd(m);
}

SkewMatrixXd rollGenerator() {
  Eigen::Matrix3d m;
  m << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  return SkewMatrixXd(m);
}

SkewMatrixXd sharedBasis(const MatrixXd& u, std::vector<double> freqs) {
  return SkewMatrixXd::blockDiagonal(std::span<const double>(freqs), u.rows()).conjugated(u);
}

TEST(SkewMatrix, RejectsNonSkewInput) {
  MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  EXPECT_THROW(SkewMatrixXd{m}, std::invalid_argument);
  EXPECT_THROW(SkewMatrixXd{MatrixXd::Zero(2, 3)}, std::invalid_argument);
  EXPECT_THROW(SkewMatrixXd{MatrixXd(0, 0)}, std::invalid_argument);
}

TEST(SkewMatrix, SymmetrizesWithinTolerance) {
  MatrixXd m(2, 2);
  m << 0, -1, 1 + 5e-13, 0;
  const SkewMatrixXd a(m);
  EXPECT_EQ(a(0, 1), -a(1, 0));
  EXPECT_EQ(a(0, 0), 0.0);
  MatrixXd off = m;
  off(1, 0) += 1e-11;
  EXPECT_THROW(SkewMatrixXd{off}, std::invalid_argument);
}

TEST(Commutator, SelfCommutatorIsZero) {
  CounterRng rng(1);
  const SkewMatrixXd a = rng.skew(5);
  EXPECT_EQ(commutator(a, a).matrix(), MatrixXd::Zero(5, 5));
}

TEST(Commutator, YawRollGivesPitch) {
  Eigen::Matrix3d pitch;
  pitch << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  EXPECT_TRUE(commutator(yawGenerator(), rollGenerator()).matrix().isApprox(MatrixXd(pitch), 0.0));
  EXPECT_NEAR(commutator(yawGenerator(), rollGenerator()).norm(), std::sqrt(2.0), 1e-15);
}

TEST(Commutator, SharedEigenbasisCommutes) {
  CounterRng rng(2);
  const MatrixXd u = rng.orthogonal(6);
  const SkewMatrixXd a = sharedBasis(u, {1.3, -0.4, 2.2});
  const SkewMatrixXd b = sharedBasis(u, {0.7, 0.9, -1.1});
  EXPECT_LE(commutator(a, b).matrix().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Commutator, DimensionMismatchThrows) {
  EXPECT_THROW(commutator(SkewMatrixXd::zero(2), SkewMatrixXd::zero(3)), std::invalid_argument);
  EXPECT_THROW(isCommuting(SkewMatrixXd::zero(2), SkewMatrixXd::zero(3), 1e-9),
               std::invalid_argument);
}

TEST(Commutator, ClosureProperty) {
  CounterRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 12;
    const MatrixXd c = commutator(rng.skew(n), rng.skew(n)).matrix();
    EXPECT_LE((c + c.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(IsCommuting, Cases) {
  CounterRng rng(4);
  const SkewMatrixXd a = rng.skew(4);
  EXPECT_TRUE(isCommuting(a, a * 2.0, 1e-12));
  EXPECT_FALSE(isCommuting(yawGenerator(), rollGenerator(), 1e-9));
  const MatrixXd u = rng.orthogonal(4);
  EXPECT_TRUE(isCommuting(sharedBasis(u, {1, 2}), sharedBasis(u, {-3, 0.5}), 1e-9));
  EXPECT_TRUE(isCommuting(SkewMatrixXd::zero(4), a, 1e-12));
  EXPECT_THROW(isCommuting(a, a, 0.0), std::invalid_argument);
}

TEST(MatrixExp, ZeroIsIdentity) {
  EXPECT_EQ(matrixExp(SkewMatrixXd::zero(5)), MatrixXd::Identity(5, 5));
  EXPECT_TRUE(matrixExpSeries(SkewMatrixXd::zero(5)).isIdentity(0.0));
}

TEST(MatrixExp, QuarterTurn) {
  MatrixXd g(2, 2);
  g << 0, -kPi / 2, kPi / 2, 0;
  MatrixXd expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_LE((matrixExp(SkewMatrixXd(g)) - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((matrixExpSeries(SkewMatrixXd(g)) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MatrixExp, SpectralMatchesSeries6x6) {
  CounterRng rng(5);
  const SkewMatrixXd a = rng.skew(6);
  EXPECT_LE((matrixExp(a) - matrixExpSeries(a)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(MatrixExp, OrthogonalDetOneAndNormPreserving) {
  CounterRng rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 16;
    const SkewMatrixXd a = rng.skew(n) * (0.25 * (1 + trial % 7));
    const MatrixXd e = matrixExp(a);
    EXPECT_LE((e.transpose() * e - MatrixXd::Identity(n, n)).norm(), 1e-9) << "n=" << n;
    EXPECT_NEAR(e.determinant(), 1.0, 1e-9);
    const VectorXd v = rng.normalVector(n);
    EXPECT_NEAR((e * v).norm() / v.norm(), 1.0, 1e-10);
    EXPECT_LE((e - matrixExpSeries(a)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(MatrixExp, GroupPropertyOnlyForCommutingInputs) {
  CounterRng rng(7);
  const MatrixXd u = rng.orthogonal(6);
  const SkewMatrixXd a = sharedBasis(u, {0.4, 1.7, -2.5});
  const SkewMatrixXd b = sharedBasis(u, {-1.2, 0.3, 0.8});
  ASSERT_TRUE(isCommuting(a, b, 1e-12));
  EXPECT_LE((matrixExp(a) * matrixExp(b) - matrixExp(a + b)).norm(), 1e-8);

  const SkewMatrixXd y = yawGenerator(), r = rollGenerator();
  EXPECT_GT((matrixExp(y) * matrixExp(r) - matrixExp(y + r)).norm(), 1e-3);
}

TEST(CanonicalForm, SinglePlane) {
  MatrixXd g(2, 2);
  g << 0, -0.75, 0.75, 0;
  const CanonicalFormXd cf = canonicalForm(SkewMatrixXd(g));
  ASSERT_EQ(cf.frequencies.size(), 1);
  EXPECT_NEAR(cf.frequencies(0), 0.75, 1e-15);
  EXPECT_LE((cf.reconstruct() - g).norm(), 1e-15);
  EXPECT_EQ(cf.zeroModes, 0);
}

TEST(CanonicalForm, ZeroMatrix) {
  const CanonicalFormXd cf = canonicalForm(SkewMatrixXd::zero(5));
  EXPECT_TRUE((cf.frequencies.array() == 0.0).all());
  EXPECT_LE((cf.basis.transpose() * cf.basis - MatrixXd::Identity(5, 5)).norm(), 1e-12);
  EXPECT_EQ(cf.zeroModes, 5);
}

TEST(CanonicalForm, Random8x8AgainstComplexEigensolver) {
  CounterRng rng(8);
  const SkewMatrixXd a = rng.skew(8);
  const CanonicalFormXd cf = canonicalForm(a);
  EXPECT_LE((cf.reconstruct() - a.matrix()).norm() / a.norm(), 1e-9);
  const std::vector<double> oracle = oracle::skewSpectrum(a.matrix());
  ASSERT_EQ(cf.frequencies.size(), 4);
  for (int d = 0; d < 4; ++d) EXPECT_NEAR(cf.frequencies(d), oracle[d], 1e-8);
}

TEST(CanonicalForm, PlaneOrientation) {
  CounterRng rng(9);
  const SkewMatrixXd a = rng.skew(7);
  const CanonicalFormXd cf = canonicalForm(a);
  for (Eigen::Index d = 0; d < cf.frequencies.size(); ++d) {
    const VectorXd lhs = a.matrix() * cf.basis.col(2 * d);
    EXPECT_LE((lhs - cf.frequencies(d) * cf.basis.col(2 * d + 1)).norm(), 1e-9);
  }
  EXPECT_EQ(cf.zeroModes, 1);
}

TEST(CanonicalForm, DegenerateEigenspaces) {
  CounterRng rng(10);
  for (Eigen::Index n : {4, 6, 9, 12, 16}) {
    const MatrixXd u = rng.orthogonal(n);
    std::vector<double> freqs(static_cast<std::size_t>(n / 2), 1.5);
    if (freqs.size() > 3) freqs[3] = 0.0;
    const SkewMatrixXd a = sharedBasis(u, freqs);
    const CanonicalFormXd cf = canonicalForm(a);
    EXPECT_LE((cf.reconstruct() - a.matrix()).norm() / a.norm(), 1e-9) << "n=" << n;
    EXPECT_LE((cf.basis.transpose() * cf.basis - MatrixXd::Identity(n, n)).norm(), 1e-9);
    for (Eigen::Index d = 0; d + 1 < cf.frequencies.size(); ++d)
      EXPECT_GE(cf.frequencies(d), cf.frequencies(d + 1));
  }
}

TEST(CanonicalForm, RandomMatricesUpToDim16) {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 15;
    const SkewMatrixXd a = rng.skew(n);
    const CanonicalFormXd cf = canonicalForm(a);
    EXPECT_LE((cf.reconstruct() - a.matrix()).norm() / a.norm(), 1e-9);
    const auto oracle = oracle::skewSpectrum(a.matrix());
    for (Eigen::Index d = 0; d < cf.frequencies.size(); ++d)
      EXPECT_NEAR(cf.frequencies(d), oracle[static_cast<std::size_t>(d)], 1e-8);
  }
}

TEST(CanonicalForm, TinyFrequenciesBelowThresholdAreZeroModes) {
  const std::vector<double> freqs{2.0, 1e-13};
  const CanonicalFormXd cf = canonicalForm(SkewMatrixXd::blockDiagonal(std::span<const double>(freqs)));
  EXPECT_NEAR(cf.frequencies(0), 2.0, 1e-14);
  EXPECT_EQ(cf.frequencies(1), 0.0);
  EXPECT_EQ(cf.zeroModes, 2);
}

TEST(JacobiEigen, SweepCapRaises) {
  CounterRng rng(12);
  const MatrixXd m = rng.normalMatrix(6, 6);
  const MatrixXd sym = m + m.transpose();
  EXPECT_THROW(jacobiEigen<double>(sym, 0), ConvergenceError);
  const auto eig = jacobiEigen<double>(sym);
  EXPECT_LE((eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose() - sym).norm(), 1e-12);
  EXPECT_LT(eig.sweeps, 20);
}

}  // namespace
}  // namespace rotary
