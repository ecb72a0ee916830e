#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rotary/encodings.hpp"
#include "rotary/random.hpp"

namespace rotary {
namespace {

constexpr double kPi = std::numbers::pi;

Position pos(double x) { return Position::Constant(1, x); }
Position pos(double x, double y) {
  Position p(2);
  p << x, y;
  return p;
}

MatrixXd table2(std::initializer_list<std::pair<double, double>> rows) {
  MatrixXd m(static_cast<Eigen::Index>(rows.size()), 2);
  Eigen::Index d = 0;
  for (auto [x, y] : rows) {
    m(d, 0) = x;
    m(d, 1) = y;
    ++d;
  }
  return m;
}

double maxAbs(const VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

std::vector<Encoder> rotaryEncoders(std::uint64_t seed) {
  CounterRng rng(seed, 9);
  std::vector<Encoder> out;
  out.push_back(Encoder::rope1d(frequencySchedule(5)));
  out.push_back(Encoder::trivial2d(frequencySchedule(5)));
  out.push_back(Encoder::axial(FrequencyTable(Scheme::Axial, rng.normalMatrix(3, 2))));
  out.push_back(Encoder::mixed(FrequencyTable(Scheme::Mixed, rng.normalMatrix(6, 2))));
  out.push_back(Encoder::spherical(FrequencyTable(Scheme::Spherical, rng.normalMatrix(4, 2))));
  out.push_back(Encoder::sphericalFast(FrequencyTable(Scheme::Spherical, rng.normalMatrix(4, 2))));
  out.push_back(Encoder::uniform(3));
  out.push_back(Encoder::liere(LieREParams({rng.skew(7), rng.skew(7)})));
  return out;
}

Position randomPosition(CounterRng& rng, Eigen::Index axes) { return rng.uniformVector(axes, -kPi, kPi); }

// Scheme names ------------------------------------------------------------

TEST(Scheme, NamesRoundTrip) {
  for (Scheme s : {Scheme::Rope1d, Scheme::Trivial2d, Scheme::Axial, Scheme::Mixed, Scheme::Spherical,
                   Scheme::SphericalFast, Scheme::Uniform, Scheme::LieRE, Scheme::SinusoidalAPE}) {
    EXPECT_EQ(schemeFromString(toString(s)), s);
  }
  EXPECT_THROW(schemeFromString("rope3d"), std::invalid_argument);
}

TEST(Scheme, AbelianClassification) {
  EXPECT_TRUE(isAbelian(Scheme::Rope1d));
  EXPECT_TRUE(isAbelian(Scheme::Mixed));
  EXPECT_FALSE(isAbelian(Scheme::Spherical));
  EXPECT_FALSE(isAbelian(Scheme::LieRE));
}

// Frequency tables ------------------------------------------------------------

TEST(FrequencySchedule, FirstFrequencyIsOne) {
  for (Eigen::Index blocks : {1, 3, 8, 32}) EXPECT_EQ(frequencySchedule(blocks)(0, 0), 1.0);
}

TEST(FrequencySchedule, FrozenValues) {
  const FrequencyTable t = frequencySchedule(8, 100.0);
  EXPECT_NEAR(t(1, 0), 0.31622776601683794, 1e-15);
  EXPECT_NEAR(t(7, 0), 0.00031622776601683794, 1e-18);
}

TEST(FrequencySchedule, StrictlyDecreasingAndPositive) {
  const FrequencyTable t = frequencySchedule(32, 10000.0);
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    EXPECT_GT(t(d, 0), 0.0);
    if (d > 0) {
      EXPECT_LT(t(d, 0), t(d - 1, 0));
    }
  }
}

TEST(FrequencySchedule, RejectsInvalidInput) {
  EXPECT_THROW(frequencySchedule(0), std::invalid_argument);
  EXPECT_THROW(frequencySchedule(4, -1.0), std::invalid_argument);
}

TEST(FrequencyTable, Validation) {
  EXPECT_THROW(FrequencyTable(Scheme::Uniform, table2({{1, 1}, {1, 0.5}})), std::invalid_argument);
  EXPECT_THROW(FrequencyTable(Scheme::Mixed, table2({{1, NAN}})), std::invalid_argument);
  EXPECT_THROW(FrequencyTable(Scheme::Mixed, MatrixXd::Ones(2, 1)), std::invalid_argument);
  EXPECT_THROW(FrequencyTable(Scheme::LieRE, MatrixXd::Ones(2, 2)), std::invalid_argument);
  EXPECT_NO_THROW(FrequencyTable(Scheme::Uniform, MatrixXd::Constant(3, 2, 0.7)));
}

TEST(FrequencyTable, AxialFixedSharesScheduleAcrossAxes) {
  const FrequencyTable t = FrequencyTable::fixed(Scheme::Axial, 6);
  const FrequencyTable s = frequencySchedule(6);
  for (Eigen::Index d = 0; d < 6; ++d) {
    EXPECT_EQ(t(d, 0), s(d, 0));
    EXPECT_EQ(t(d, 1), s(d, 0));
  }
}

// Sinusoidal APE ------------------------------------------------------------

TEST(SinusoidalAPE, ZeroInputAtOrigin) {
  const VectorXd out = sinusoidalAPE(VectorXd::Zero(6), 0.0, frequencySchedule(3));
  VectorXd expected(6);
  expected << 0, 1, 0, 1, 0, 1;
  EXPECT_EQ(out, expected);
}

TEST(SinusoidalAPE, FirstComponentAtQuarterTurn) {
  EXPECT_EQ(sinusoidalAPE(VectorXd::Zero(2), kPi / 2, frequencySchedule(1))(0), 1.0);
}

TEST(SinusoidalAPE, MatchesScalarLoop) {
  CounterRng rng(20);
  const VectorXd x = rng.normalVector(8);
  const FrequencyTable t = frequencySchedule(4);
  const VectorXd out = sinusoidalAPE(x, 1.0, t);
  for (int n = 0; n < 8; ++n) {
    const double omega = std::pow(100.0, -2.0 * (n / 2) / 4.0);
    const double pe = n % 2 == 0 ? std::sin(omega) : std::cos(omega);
    EXPECT_NEAR(out(n), x(n) + pe, 1e-15);
  }
}

// RoPE ------------------------------------------------------------

TEST(Rope1d, OriginIsIdentity) {
  CounterRng rng(21);
  const VectorXd z = rng.normalVector(10);
  EXPECT_EQ(rope1d(z, 0.0, frequencySchedule(5)), z);
}

TEST(Rope1d, QuarterRotation) {
  const VectorXd out = rope1d(Eigen::Vector2d(1, 0), kPi / 2, frequencySchedule(1));
  EXPECT_NEAR(out(0), 0.0, 1e-16);
  EXPECT_NEAR(out(1), 1.0, 1e-16);
}

TEST(Rope1d, MatchesBlockDiagonalMatrix) {
  CounterRng rng(22);
  const FrequencyTable t = frequencySchedule(6);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorXd z = rng.normalVector(12);
    const double p = rng.uniform(-10, 10);
    std::vector<double> angles;
    for (Eigen::Index d = 0; d < 6; ++d) angles.push_back(t(d, 0) * p);
    EXPECT_LE(maxAbs(rope1d(z, p, t) - oracle::blockRotation(angles) * z), 1e-12);
  }
}

TEST(Rope1d, RejectsWrongDimension) {
  EXPECT_THROW(rope1d(VectorXd::Ones(5), 1.0, frequencySchedule(2)), std::invalid_argument);
  EXPECT_THROW(rope1d(VectorXd::Ones(6), 1.0, frequencySchedule(2)), std::invalid_argument);
}

// Trivial 2D ------------------------------------------------------------

TEST(Trivial2d, AntiDiagonalGivesIdenticalOutputs) {
  CounterRng rng(23);
  const FrequencyTable t = frequencySchedule(4);
  const VectorXd z = rng.normalVector(8);
  EXPECT_LE(maxAbs(trivial2d(z, pos(0.5, 1.0), t) - trivial2d(z, pos(1.25, 0.25), t)), 1e-12);
}

TEST(Trivial2d, OriginAndCoordinateSum) {
  CounterRng rng(24);
  const FrequencyTable t = frequencySchedule(4);
  const VectorXd z = rng.normalVector(8);
  EXPECT_EQ(trivial2d(z, pos(0, 0), t), z);
  EXPECT_EQ(trivial2d(z, pos(1, 2), t), rope1d(z, 3.0, t));
}

TEST(Trivial2d, RejectsWrongPositionSize) {
  EXPECT_THROW(trivial2d(VectorXd::Ones(2), pos(1.0), frequencySchedule(1)), std::invalid_argument);
}

// Axial ------------------------------------------------------------

TEST(Axial, OriginIsIdentity) {
  CounterRng rng(25);
  const VectorXd z = rng.normalVector(12);
  EXPECT_EQ(axial(z, pos(0, 0), FrequencyTable::fixed(Scheme::Axial, 3)), z);
}

TEST(Axial, HandComputedQuadruple) {
  const VectorXd out =
      axial(Eigen::Vector4d(1, 0, 1, 0), pos(kPi / 2, kPi), FrequencyTable::uniform(1));
  const Eigen::Vector4d expected(0, 1, -1, 0);
  EXPECT_LE(maxAbs(out - expected), 1e-15);
}

TEST(Axial, MatchesTwoIndependentRotationsPerBlock) {
  CounterRng rng(26);
  const FrequencyTable t(Scheme::Axial, rng.normalMatrix(4, 2));
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd z = rng.normalVector(16);
    const Position p = randomPosition(rng, 2);
    std::vector<double> angles;
    for (Eigen::Index d = 0; d < 4; ++d) {
      angles.push_back(t(d, 0) * p(0));
      angles.push_back(t(d, 1) * p(1));
    }
    EXPECT_LE(maxAbs(axial(z, p, t) - oracle::blockRotation(angles) * z), 1e-12);
  }
}

TEST(Axial, RejectsDimensionNotMultipleOfFour) {
  EXPECT_THROW(axial(VectorXd::Ones(6), pos(1, 1), FrequencyTable::fixed(Scheme::Axial, 2)),
               std::invalid_argument);
}

// Mixed ------------------------------------------------------------

TEST(Mixed, ZeroYAxisIsRope1dInX) {
  CounterRng rng(27);
  const FrequencyTable s = frequencySchedule(5);
  MatrixXd m = MatrixXd::Zero(5, 2);
  m.col(0) = s.freqs().col(0);
  const VectorXd z = rng.normalVector(10);
  EXPECT_EQ(mixed(z, pos(1.3, -2.0), FrequencyTable(Scheme::Mixed, m)), rope1d(z, 1.3, s));
}

TEST(Mixed, OriginIsIdentity) {
  CounterRng rng(28);
  const VectorXd z = rng.normalVector(6);
  EXPECT_EQ(mixed(z, pos(0, 0), FrequencyTable(Scheme::Mixed, rng.normalMatrix(3, 2))), z);
}

TEST(Mixed, MatchesSequentialRotations) {
  CounterRng rng(29);
  const FrequencyTable t(Scheme::Mixed, rng.normalMatrix(5, 2));
  for (int trial = 0; trial < 50; ++trial) {
    const VectorXd z = rng.normalVector(10);
    const Position p = randomPosition(rng, 2);
    VectorXd expected(10);
    for (Eigen::Index d = 0; d < 5; ++d) {
      expected.segment<2>(2 * d) = oracle::rotation(t(d, 0) * p(0)) *
                                   (oracle::rotation(t(d, 1) * p(1)) * z.segment<2>(2 * d));
    }
    EXPECT_LE(maxAbs(mixed(z, p, t) - expected), 1e-12);
  }
}

// Spherical ------------------------------------------------------------

FrequencyTable unitSpherical(Eigen::Index blocks) {
  return FrequencyTable(Scheme::Spherical, MatrixXd::Ones(blocks, 2));
}

TEST(Spherical, OriginIsIdentity) {
  CounterRng rng(30);
  const VectorXd z = rng.normalVector(9);
  EXPECT_EQ(spherical(z, pos(0, 0), FrequencyTable::fixed(Scheme::Spherical, 3)), z);
  EXPECT_EQ(sphericalFast(z, pos(0, 0), FrequencyTable::fixed(Scheme::Spherical, 3)), z);
}

TEST(Spherical, RollActsOnLastTwoComponents) {
  const VectorXd out = spherical(Eigen::Vector3d(0, 0, 1), pos(0, kPi / 2), unitSpherical(1));
  EXPECT_LE(maxAbs(out - Eigen::Vector3d(0, -1, 0)), 1e-15);
}

TEST(Spherical, RollIsAppliedBeforeYaw) {
  const Eigen::Vector3d expected(3, 1, 2);
  const Position p = pos(kPi / 2, kPi / 2);
  EXPECT_LE(maxAbs(spherical(Eigen::Vector3d(1, 2, 3), p, unitSpherical(1)) - expected), 1e-15);
  EXPECT_LE(maxAbs(sphericalFast(Eigen::Vector3d(1, 2, 3), p, unitSpherical(1)) - expected), 1e-15);
}

TEST(Spherical, FastPathMatchesMatrixForm) {
  CounterRng rng(31);
  for (Eigen::Index blocks : {1, 2, 7, 16, 33, 64}) {
    const FrequencyTable t(Scheme::Spherical, rng.normalMatrix(blocks, 2));
    for (int trial = 0; trial < 10; ++trial) {
      const VectorXd z = rng.normalVector(3 * blocks);
      const Position p = rng.uniformVector(2, -2 * kPi, 2 * kPi);
      EXPECT_LE(maxAbs(sphericalFast(z, p, t) - spherical(z, p, t)), 1e-12);
    }
  }
}

TEST(Spherical, RejectsDimensionNotMultipleOfThree) {
  EXPECT_THROW(spherical(VectorXd::Ones(4), pos(0, 0), unitSpherical(1)), std::invalid_argument);
  EXPECT_THROW(sphericalFast(VectorXd::Ones(4), pos(0, 0), unitSpherical(1)), std::invalid_argument);
}

// Uniform ------------------------------------------------------------

TEST(Uniform, FullCycleIsIdentity) {
  CounterRng rng(32);
  const VectorXd z = rng.normalVector(8);
  EXPECT_LE(maxAbs(uniform(z, pos(2 * kPi, 0)) - z), 1e-12);
  EXPECT_EQ(uniform(z, pos(0, 0)), z);
}

TEST(Uniform, EqualsAxialWithConstantTable) {
  CounterRng rng(33);
  const FrequencyTable constant(Scheme::Axial, MatrixXd::Ones(3, 2));
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd z = rng.normalVector(12);
    const Position p = randomPosition(rng, 2);
    EXPECT_EQ(uniform(z, p), axial(z, p, constant));
  }
}

// LieRE ------------------------------------------------------------

TEST(LieRE, OriginIsIdentity) {
  CounterRng rng(34);
  const LieREParams params({rng.skew(6), rng.skew(6)});
  const VectorXd z = rng.normalVector(6);
  EXPECT_EQ(liere(z, pos(0, 0), params), z);
}

TEST(LieRE, BlockDiagonalGeneratorIsRope) {
  CounterRng rng(35);
  const FrequencyTable t = frequencySchedule(4);
  const std::vector<double> freqs(t.freqs().data(), t.freqs().data() + 4);
  const LieREParams params({SkewMatrixXd::blockDiagonal(std::span<const double>(freqs))});
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd z = rng.normalVector(8);
    const double p = rng.uniform(-kPi, kPi);
    EXPECT_LE(maxAbs(liere(z, pos(p), params) - rope1d(z, p, t)), 1e-10);
  }
}

TEST(LieRE, ParamsValidation) {
  EXPECT_THROW(LieREParams(std::vector<SkewMatrixXd>{}), std::invalid_argument);
  EXPECT_THROW(LieREParams({SkewMatrixXd::zero(2), SkewMatrixXd::zero(3)}), std::invalid_argument);
  const LieREParams params({SkewMatrixXd::zero(4)});
  EXPECT_THROW(liere(VectorXd::Ones(4), pos(0, 0), params), std::invalid_argument);
  EXPECT_THROW(liere(VectorXd::Ones(3), pos(0), params), std::invalid_argument);
}

// Encoder interface ------------------------------------------------------------

TEST(Encoder, DimensionsAndAxes) {
  EXPECT_EQ(Encoder::rope1d(frequencySchedule(4)).dim(), 8);
  EXPECT_EQ(Encoder::rope1d(frequencySchedule(4)).axes(), 1);
  EXPECT_EQ(Encoder::trivial2d(frequencySchedule(4)).axes(), 2);
  EXPECT_EQ(Encoder::axial(FrequencyTable::fixed(Scheme::Axial, 4)).dim(), 16);
  EXPECT_EQ(Encoder::spherical(FrequencyTable::fixed(Scheme::Spherical, 4)).dim(), 12);
  EXPECT_EQ(Encoder::uniform(4).dim(), 16);
  EXPECT_EQ(Encoder::liere(LieREParams({SkewMatrixXd::zero(5)})).axes(), 1);
  EXPECT_FALSE(Encoder::sinusoidal(frequencySchedule(2)).isRotary());
}

TEST(Encoder, DispatchMatchesFreeFunctions) {
  CounterRng rng(36);
  const FrequencyTable mt(Scheme::Mixed, rng.normalMatrix(4, 2));
  const VectorXd z = rng.normalVector(8);
  const Position p = randomPosition(rng, 2);
  EXPECT_EQ(Encoder::mixed(mt).encode(z, p), mixed(z, p, mt));
  EXPECT_EQ(Encoder::fromTable(Scheme::Mixed, mt).encode(z, p), mixed(z, p, mt));
  EXPECT_EQ(Encoder::trivial2d(frequencySchedule(4)).encode(z, p), trivial2d(z, p, frequencySchedule(4)));
}

TEST(Encoder, WithTableKeepsScheme) {
  CounterRng rng(37);
  const Encoder enc = Encoder::mixed(FrequencyTable::fixed(Scheme::Mixed, 3));
  const FrequencyTable other(Scheme::Mixed, rng.normalMatrix(3, 2));
  const Encoder swapped = enc.withTable(other);
  EXPECT_EQ(swapped.scheme(), Scheme::Mixed);
  EXPECT_EQ(swapped.table(), other);
  EXPECT_THROW(Encoder::uniform(2).withTable(FrequencyTable(Scheme::Axial, table2({{1, 1}, {1, 2}}))),
               std::invalid_argument);
}

// Properties over every rotary encoder -----------------------------------------

TEST(RotaryProperties, IsometryOnRandomInputs) {
  CounterRng rng(38);
  for (const Encoder& enc : rotaryEncoders(38)) {
    for (int trial = 0; trial < 50; ++trial) {
      const VectorXd z = rng.normalVector(enc.dim());
      const Position p = rng.uniformVector(enc.axes(), -4 * kPi, 4 * kPi);
      EXPECT_NEAR(enc.encode(z, p).norm() / z.norm(), 1.0, 1e-10) << toString(enc.scheme());
    }
  }
}

TEST(RotaryProperties, IdentityAtOriginIsExact) {
  CounterRng rng(39);
  for (const Encoder& enc : rotaryEncoders(39)) {
    const VectorXd z = rng.normalVector(enc.dim());
    EXPECT_EQ(enc.encode(z, Position::Zero(enc.axes())), z) << toString(enc.scheme());
  }
}

TEST(RotaryProperties, FlowHoldsForAbelianSchemes) {
  CounterRng rng(40);
  for (const Encoder& enc : rotaryEncoders(40)) {
    if (!isAbelian(enc.scheme())) continue;
    for (int trial = 0; trial < 50; ++trial) {
      const VectorXd z = rng.normalVector(enc.dim());
      const Position p1 = randomPosition(rng, enc.axes());
      const Position p2 = randomPosition(rng, enc.axes());
      EXPECT_LE((enc.encode(enc.encode(z, p1), p2) - enc.encode(z, p1 + p2)).norm(), 1e-10)
          << toString(enc.scheme());
    }
  }
}

TEST(RotaryProperties, FlowFailsForSpherical) {
  CounterRng rng(41);
  const Encoder enc = Encoder::spherical(FrequencyTable::fixed(Scheme::Spherical, 4));
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd z = rng.normalVector(enc.dim());
    const Position p1 = randomPosition(rng, 2);
    const Position p2 = randomPosition(rng, 2);
    worst = std::max(worst, (enc.encode(enc.encode(z, p1), p2) - enc.encode(z, p1 + p2)).norm());
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(RotaryProperties, SphericalIsOrderSensitive) {
  // Yaw then roll differs from roll then yaw.
  const Eigen::Vector3d z(1, 2, 3);
  const Eigen::Vector3d rollFirst = yawMatrix(0.7) * (rollMatrix(0.4) * z);
  const Eigen::Vector3d yawFirst = rollMatrix(0.4) * (yawMatrix(0.7) * z);
  const FrequencyTable t = unitSpherical(1);
  EXPECT_LE(maxAbs(spherical(z, pos(0.7, 0.4), t) - rollFirst), 1e-15);
  EXPECT_GT(maxAbs(spherical(z, pos(0.7, 0.4), t) - yawFirst), 1e-2);
}

// Frequency gradients ------------------------------------------------------------

double scoreWith(Scheme scheme, const FrequencyTable& t, const VectorXd& zq, const VectorXd& zk,
                 const Position& pq, const Position& pk) {
  const Encoder enc = Encoder::fromTable(scheme, t);
  return oracle::loopDot(enc.encode(zq, pq), enc.encode(zk, pk));
}

// Central differences over each table entry; the uniform scheme moves every
// entry together since it has one shared parameter.
VectorXd numericGradient(Scheme scheme, const FrequencyTable& t, const VectorXd& zq,
                         const VectorXd& zk, const Position& pq, const Position& pk) {
  const double h = 1e-5;
  if (scheme == Scheme::Uniform) {
    const double w = t(0, 0);
    const auto at = [&](double v) {
      return scoreWith(scheme, FrequencyTable::uniform(t.blocks(), v), zq, zk, pq, pk);
    };
    return VectorXd::Constant(1, (at(w + h) - at(w - h)) / (2 * h));
  }
  VectorXd g(t.blocks() * t.axes());
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    for (Eigen::Index m = 0; m < t.axes(); ++m) {
      MatrixXd plus = t.freqs(), minus = t.freqs();
      plus(d, m) += h;
      minus(d, m) -= h;
      g(d * t.axes() + m) = (scoreWith(scheme, FrequencyTable(scheme, plus), zq, zk, pq, pk) -
                             scoreWith(scheme, FrequencyTable(scheme, minus), zq, zk, pq, pk)) /
                            (2 * h);
    }
  }
  return g;
}

struct GradCase {
  Scheme scheme;
  Eigen::Index blocks;
  Eigen::Index axes;    // table columns
  Eigen::Index posAxes;
};

FrequencyTable randomTable(CounterRng& rng, const GradCase& c) {
  if (c.scheme == Scheme::Uniform) return FrequencyTable::uniform(c.blocks, rng.uniform(0.5, 1.5));
  return FrequencyTable(c.scheme, rng.normalMatrix(c.blocks, c.axes));
}

const std::vector<GradCase> kGradCases = {
    {Scheme::Rope1d, 4, 1, 1},  {Scheme::Trivial2d, 4, 1, 2}, {Scheme::Axial, 3, 2, 2},
    {Scheme::Mixed, 4, 2, 2},   {Scheme::Spherical, 3, 2, 2}, {Scheme::Uniform, 3, 2, 2},
};

TEST(GradFrequencies, ZeroPositionsGiveZeroGradient) {
  CounterRng rng(42);
  for (const GradCase& c : kGradCases) {
    const FrequencyTable t = randomTable(rng, c);
    const Eigen::Index n = c.blocks * blockSize(c.scheme);
    const VectorXd g = gradFrequencies(c.scheme, rng.normalVector(n), rng.normalVector(n),
                                       Position::Zero(c.posAxes), Position::Zero(c.posAxes), t);
    EXPECT_EQ(g.cwiseAbs().maxCoeff(), 0.0) << toString(c.scheme);
  }
}

TEST(GradFrequencies, MatchesCentralDifferences) {
  CounterRng rng(43);
  for (const GradCase& c : kGradCases) {
    for (int trial = 0; trial < 20; ++trial) {
      const FrequencyTable t = randomTable(rng, c);
      const Eigen::Index n = c.blocks * blockSize(c.scheme);
      const VectorXd zq = rng.normalVector(n), zk = rng.normalVector(n);
      const Position pq = randomPosition(rng, c.posAxes), pk = randomPosition(rng, c.posAxes);
      const VectorXd analytic = gradFrequencies(c.scheme, zq, zk, pq, pk, t);
      const VectorXd numeric = numericGradient(c.scheme, t, zq, zk, pq, pk);
      ASSERT_EQ(analytic.size(), numeric.size()) << toString(c.scheme);
      const double rel = (analytic - numeric).cwiseAbs().maxCoeff() /
                         std::max(analytic.cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LE(rel, 1e-5) << toString(c.scheme);
    }
  }
}

TEST(GradFrequencies, UniformIsChainRuleSumOverAxialEntries) {
  CounterRng rng(44);
  const VectorXd zq = rng.normalVector(12), zk = rng.normalVector(12);
  const Position pq = randomPosition(rng, 2), pk = randomPosition(rng, 2);
  const FrequencyTable shared = FrequencyTable::uniform(3, 0.8);
  const VectorXd perEntry = gradFrequencies(Scheme::Axial, zq, zk, pq, pk,
                                            FrequencyTable(Scheme::Axial, shared.freqs()));
  const VectorXd g = gradFrequencies(Scheme::Uniform, zq, zk, pq, pk, shared);
  ASSERT_EQ(g.size(), 1);
  EXPECT_NEAR(g(0), perEntry.sum(), 1e-12);
}

TEST(GradFrequencies, UnsupportedSchemesThrow) {
  EXPECT_THROW(gradFrequencies(Scheme::SinusoidalAPE, VectorXd::Ones(2), VectorXd::Ones(2), pos(1),
                               pos(0), frequencySchedule(1)),
               std::invalid_argument);
}

}  // namespace
}  // namespace rotary
