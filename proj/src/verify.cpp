#include "rotary/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "rotary/attention.hpp"
#include "rotary/grid.hpp"
#include "rotary/random.hpp"

namespace rotary {

namespace {

constexpr double kPi = std::numbers::pi;

CheckReport makeReport(std::string name, double residual, bool passed, int trials,
                       std::uint64_t seed) {
  return CheckReport{std::move(name), passed, residual, trials, seed};
}

Position randomPosition(CounterRng& rng, Eigen::Index axes) {
  return rng.uniformVector(axes, -kPi, kPi);
}

FrequencyTable randomTable(Scheme scheme, Eigen::Index blocks, CounterRng& rng) {
  if (scheme == Scheme::Uniform) return FrequencyTable::uniform(blocks, rng.normal());
  return FrequencyTable(scheme, rng.normalMatrix(blocks, tableAxes(scheme)));
}

Eigen::Index gradientBlocks(Scheme scheme) {
  switch (scheme) {
    case Scheme::Axial:
    case Scheme::Uniform:
      return 4;
    case Scheme::Spherical:
    case Scheme::SphericalFast:
      return 6;
    default:
      return 8;
  }
}

}  // namespace

std::string CheckReport::toJsonLine() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["passed"] = passed;
  j["residual"] = residual;
  j["trials"] = trials;
  j["seed"] = seed;
  return j.dump();
}

double maxShiftViolation(const Encoder& encoder, int trials, std::uint64_t seed) {
  CounterRng rng(seed);
  const Eigen::Index n = encoder.dim(), m = encoder.axes();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const VectorXd zq = rng.normalVector(n), zk = rng.normalVector(n);
    const Position pq = randomPosition(rng, m), pk = randomPosition(rng, m);
    const Position s = randomPosition(rng, m);
    const double base = scoredPair(encoder, zq, zk, pq, pk);
    const double shifted = scoredPair(encoder, zq, zk, pq + s, pk + s);
    worst = std::max(worst, std::abs(shifted - base));
  }
  return worst;
}

CheckReport checkEquivariance(const Encoder& encoder, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("checkEquivariance: trials must be >= 1");
  const double r = maxShiftViolation(encoder, trials, seed);
  return makeReport("equivariance:" + std::string(toString(encoder.scheme())), r,
                    r <= tol::kEquivariance, trials, seed);
}

CheckReport checkNonEquivariance(const Encoder& encoder, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("checkNonEquivariance: trials must be >= 1");
  const double r = maxShiftViolation(encoder, trials, seed);
  return makeReport("non-equivariance:" + std::string(toString(encoder.scheme())), r,
                    r > tol::kCounterexample, trials, seed);
}

VectorXd Reduction::encode(const VectorXd& z, const Position& p) const {
  if (z.size() != basis.rows()) throw std::invalid_argument("Reduction::encode: dimension mismatch");
  detail::checkPosition(p, table.axes(), "Reduction::encode");
  VectorXd y = basis.transpose() * z;
  for (Eigen::Index d = 0; d < table.blocks(); ++d) {
    detail::rotatePair<double>(y, 2 * d, table.freqs().row(d).dot(p));
  }
  return y;
}

Reduction reduceLieRE1D(const SkewMatrixXd& generator) {
  if (generator.dim() < 2) throw std::invalid_argument("reduceLieRE1D: need dimension >= 2");
  const CanonicalFormXd cf = canonicalForm(generator);
  return Reduction{FrequencyTable(Scheme::Rope1d, cf.frequencies), cf.basis};
}

Reduction reduceLieREMixed(const SkewMatrixXd& ax, const SkewMatrixXd& ay) {
  ax.checkSameDim(ay, "reduceLieREMixed");
  if (ax.dim() < 2) throw std::invalid_argument("reduceLieREMixed: need dimension >= 2");
  if (!isCommuting(ax, ay, 1e-9)) {
    throw std::invalid_argument("reduceLieREMixed: generators do not commute");
  }
  const Eigen::Index n = ax.dim(), pairs = n / 2;
  const double nx = ax.norm(), ny = ay.norm();
  const SkewMatrixXd ux = nx > 0 ? ax * (1.0 / nx) : ax;
  const SkewMatrixXd uy = ny > 0 ? ay * (1.0 / ny) : ay;
  const double scale = std::max({1.0, nx, ny});

  // A generic combination shares the joint invariant planes; retry with
  // another weight if it happens to cancel on some plane.
  constexpr std::array<double, 4> weights{0.5772156649015329, 1.4142135623730951,
                                          -0.7071067811865476, 2.718281828459045};
  double bestLeak = std::numeric_limits<double>::infinity();
  Reduction best;
  for (double w : weights) {
    const CanonicalFormXd cf = canonicalForm(ux + uy * w);
    MatrixXd basis = cf.basis;
    MatrixXd bx = basis.transpose() * ax.matrix() * basis;
    MatrixXd by = basis.transpose() * ay.matrix() * basis;

    MatrixXd freqs(pairs, 2);
    const double zeroTol = 1e-10 * scale;
    for (Eigen::Index d = 0; d < pairs; ++d) {
      double wx = bx(2 * d + 1, 2 * d), wy = by(2 * d + 1, 2 * d);
      if (wx < -zeroTol || (std::abs(wx) <= zeroTol && wy < 0)) {
        basis.col(2 * d + 1) = -basis.col(2 * d + 1);
        wx = -wx;
        wy = -wy;
      }
      freqs(d, 0) = wx;
      freqs(d, 1) = wy;
    }

    // Off-block leakage of both generators in the shared basis.
    MatrixXd blocksX = MatrixXd::Zero(n, n), blocksY = MatrixXd::Zero(n, n);
    for (Eigen::Index d = 0; d < pairs; ++d) {
      blocksX.block<2, 2>(2 * d, 2 * d) = bx.block<2, 2>(2 * d, 2 * d);
      blocksY.block<2, 2>(2 * d, 2 * d) = by.block<2, 2>(2 * d, 2 * d);
    }
    const double leak = std::max((bx - blocksX).norm(), (by - blocksY).norm()) / scale;
    if (leak < bestLeak) {
      bestLeak = leak;
      best = Reduction{FrequencyTable(Scheme::Mixed, freqs), basis};
    }
    if (leak <= tol::kLinalg) break;
  }
  return best;
}

CheckReport checkAxialSeparability(int trials, std::uint64_t seed, Eigen::Index dim) {
  if (dim % 4 != 0 || dim == 0) {
    throw std::invalid_argument("checkAxialSeparability: dim must be a positive multiple of 4");
  }
  CounterRng rng(seed);
  const Eigen::Index blocks = dim / 4;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FrequencyTable table = randomTable(Scheme::Axial, blocks, rng);
    const VectorXd zq = rng.normalVector(dim), zk = rng.normalVector(dim);
    const Position pq = randomPosition(rng, 2), pk = randomPosition(rng, 2);
    const double total = score(axial(zq, pq, table), axial(zk, pk, table));

    double parts = 0.0;
    for (Eigen::Index m = 0; m < 2; ++m) {
      VectorXd xq(2 * blocks), xk(2 * blocks);
      for (Eigen::Index d = 0; d < blocks; ++d) {
        xq.segment<2>(2 * d) = zq.segment<2>(4 * d + 2 * m);
        xk.segment<2>(2 * d) = zk.segment<2>(4 * d + 2 * m);
      }
      const FrequencyTable axis(Scheme::Rope1d, table.freqs().col(m));
      parts += score(rope1d(xq, pq(m), axis), rope1d(xk, pk(m), axis));
    }
    worst = std::max(worst, std::abs(total - parts));
  }
  return makeReport("separability:axial", worst, worst <= tol::kSeparability, trials, seed);
}

double antiDiagonalResidual(const Encoder& encoder, int trials, std::uint64_t seed) {
  if (encoder.axes() != 2) throw std::invalid_argument("antiDiagonalResidual: needs a 2D encoder");
  CounterRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const VectorXd z = rng.normalVector(encoder.dim());
    const Position p = randomPosition(rng, 2);
    const double t = rng.uniform(-kPi, kPi);
    const Position moved{{p(0) + t, p(1) - t}};
    worst = std::max(worst, (encoder.encode(z, p) - encoder.encode(z, moved)).norm());
  }
  return worst;
}

CheckReport checkTrivialDegeneracy(int trials, std::uint64_t seed) {
  const double r = antiDiagonalResidual(suiteEncoder(Scheme::Trivial2d, seed), trials, seed);
  return makeReport("degeneracy:trivial2d", r, r <= tol::kDegeneracy, trials, seed);
}

CheckReport checkMixedDegeneracyContrast(int trials, std::uint64_t seed) {
  const VectorXd schedule = frequencySchedule(8).freqs().col(0);
  MatrixXd f(8, 2);
  f << schedule, 0.5 * schedule;
  const double r = antiDiagonalResidual(Encoder::mixed(FrequencyTable(Scheme::Mixed, f)), trials, seed);
  return makeReport("degeneracy:mixed-contrast", r, r > tol::kDegeneracyContrast, trials, seed);
}

VectorXd finiteDifferenceGradient(Scheme scheme, const VectorXd& zq, const VectorXd& zk,
                                  const Position& pq, const Position& pk,
                                  const FrequencyTable& table, double h) {
  auto alpha = [&](const MatrixXd& f) {
    const Encoder e = Encoder::fromTable(scheme, FrequencyTable(table.scheme(), f));
    return scoredPair(e, zq, zk, pq, pk);
  };
  if (scheme == Scheme::Uniform) {
    const MatrixXd step = MatrixXd::Constant(table.blocks(), table.axes(), h);
    return VectorXd::Constant(1, (alpha(table.freqs() + step) - alpha(table.freqs() - step)) / (2 * h));
  }
  VectorXd g(table.blocks() * table.axes());
  for (Eigen::Index d = 0; d < table.blocks(); ++d) {
    for (Eigen::Index m = 0; m < table.axes(); ++m) {
      MatrixXd plus = table.freqs(), minus = table.freqs();
      plus(d, m) += h;
      minus(d, m) -= h;
      g(d * table.axes() + m) = (alpha(plus) - alpha(minus)) / (2 * h);
    }
  }
  return g;
}

double gradientRelativeError(const VectorXd& analytic, const VectorXd& numeric) {
  if (analytic.size() != numeric.size()) {
    throw std::invalid_argument("gradientRelativeError: size mismatch");
  }
  const double denom = std::max(analytic.lpNorm<Eigen::Infinity>(), tol::kGradientFloor);
  return (analytic - numeric).lpNorm<Eigen::Infinity>() / denom;
}

CheckReport checkGradients(Scheme scheme, int trials, std::uint64_t seed) {
  CounterRng rng(seed);
  const Eigen::Index blocks = gradientBlocks(scheme);
  const Eigen::Index n = blocks * blockSize(scheme);
  const Eigen::Index axes = scheme == Scheme::Rope1d ? 1 : 2;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FrequencyTable table = randomTable(scheme, blocks, rng);
    const VectorXd zq = rng.normalVector(n), zk = rng.normalVector(n);
    const Position pq = randomPosition(rng, axes), pk = randomPosition(rng, axes);
    const VectorXd analytic = gradFrequencies(scheme, zq, zk, pq, pk, table);
    const VectorXd numeric = finiteDifferenceGradient(scheme, zq, zk, pq, pk, table);
    worst = std::max(worst, gradientRelativeError(analytic, numeric));
  }
  return makeReport("gradients:" + std::string(toString(scheme)), worst, worst <= tol::kGradient,
                    trials, seed);
}

std::vector<double> checkLocalityProbe(const Encoder& encoder, double maxShift, int samples,
                                       std::uint64_t seed, int draws) {
  if (samples < 1 || draws < 1) throw std::invalid_argument("checkLocalityProbe: empty probe");
  CounterRng rng(seed);
  std::vector<VectorXd> zs;
  std::vector<Position> ps;
  for (int i = 0; i < draws; ++i) {
    zs.push_back(rng.unitVector(encoder.dim()));
    ps.push_back(randomPosition(rng, encoder.axes()));
  }
  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double shift = samples == 1 ? 0.0 : maxShift * k / (samples - 1);
    double acc = 0.0;
    for (int i = 0; i < draws; ++i) {
      Position pq = ps[i];
      pq(0) += shift;
      acc += scoredPair(encoder, zs[i], zs[i], pq, ps[i]);
    }
    curve.push_back(acc / draws);
  }
  return curve;
}

std::pair<SkewMatrixXd, SkewMatrixXd> commutingGenerators(Eigen::Index dim, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  const MatrixXd u = rng.orthogonal(dim);
  const VectorXd dx = rng.normalVector(dim / 2), dy = rng.normalVector(dim / 2);
  return {SkewMatrixXd::blockDiagonal(std::span<const double>(dx.data(), dx.size()), dim).conjugated(u),
          SkewMatrixXd::blockDiagonal(std::span<const double>(dy.data(), dy.size()), dim).conjugated(u)};
}

Encoder suiteEncoder(Scheme scheme, std::uint64_t seed) {
  CounterRng rng(seed, 2);
  switch (scheme) {
    case Scheme::Rope1d:
    case Scheme::Trivial2d:
    case Scheme::SinusoidalAPE:
      return Encoder::fromTable(scheme, FrequencyTable::fixed(scheme, 8));
    case Scheme::Axial:
      return Encoder::axial(FrequencyTable::fixed(Scheme::Axial, 4));
    case Scheme::Mixed:
      return Encoder::mixed(randomTable(Scheme::Mixed, 8, rng));
    case Scheme::Spherical:
    case Scheme::SphericalFast:
      return Encoder::fromTable(scheme, FrequencyTable::fixed(scheme, 6));
    case Scheme::Uniform:
      return Encoder::uniform(4);
    case Scheme::LieRE:
      return Encoder::liere(LieREParams({rng.skew(8), rng.skew(8)}));
  }
  throw std::logic_error("suiteEncoder: unhandled scheme");
}

namespace {

Encoder commutingLieRE(std::uint64_t seed) {
  auto [ax, ay] = commutingGenerators(8, seed);
  return Encoder::liere(LieREParams({ax, ay}));
}

CheckReport renamed(CheckReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

CheckReport canonicalFormCheck(std::uint64_t seed) {
  constexpr int kMatrices = 50;
  CounterRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < kMatrices; ++i) {
    const SkewMatrixXd a = rng.skew(2 + i % 15);
    const CanonicalFormXd cf = canonicalForm(a);
    const Eigen::Index n = a.dim();
    const double recon = (cf.reconstruct() - a.matrix()).norm() / std::max(1.0, a.norm());
    const double orth = (cf.basis.transpose() * cf.basis - MatrixXd::Identity(n, n)).norm();
    worst = std::max({worst, recon, orth});
  }
  return makeReport("linalg:canonical-form", worst, worst <= tol::kLinalg, kMatrices, seed);
}

CheckReport expRoutesCheck(std::uint64_t seed) {
  constexpr int kMatrices = 50;
  CounterRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < kMatrices; ++i) {
    const SkewMatrixXd a = rng.skew(2 + i % 15);
    const double diff = (matrixExp(a) - matrixExpSeries(a)).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
  }
  return makeReport("linalg:exp-routes", worst, worst <= tol::kLinalg, kMatrices, seed);
}

CheckReport ropeReductionCheck(std::uint64_t seed) {
  constexpr int kGenerators = 20, kTuples = 50;
  constexpr std::array<Eigen::Index, 4> dims{2, 4, 8, 16};
  CounterRng rng(seed);
  double worst = 0.0;
  for (int g = 0; g < kGenerators; ++g) {
    const Eigen::Index n = dims[g % dims.size()];
    const SkewMatrixXd a = rng.skew(n);
    const Reduction red = reduceLieRE1D(a);
    const LieREParams params({a});
    for (int t = 0; t < kTuples; ++t) {
      const VectorXd zq = rng.normalVector(n), zk = rng.normalVector(n);
      const Position pq = randomPosition(rng, 1), pk = randomPosition(rng, 1);
      const double lhs = score(liere(zq, pq, params), liere(zk, pk, params));
      const double rhs = score(rope1d(VectorXd(red.basis.transpose() * zq), pq(0), red.table),
                               rope1d(VectorXd(red.basis.transpose() * zk), pk(0), red.table));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return makeReport("reduction:liere-rope", worst, worst <= tol::kScoreEquivalence,
                    kGenerators * kTuples, seed);
}

CheckReport mixedReductionCheck(std::uint64_t seed) {
  constexpr int kPairs = 20, kTuples = 50;
  CounterRng rng(seed);
  double worst = 0.0;
  for (int g = 0; g < kPairs; ++g) {
    const Eigen::Index n = 2 + 2 * (g % 8);
    auto [ax, ay] = commutingGenerators(n, seed * 1000 + static_cast<std::uint64_t>(g));
    const Reduction red = reduceLieREMixed(ax, ay);
    const LieREParams params({ax, ay});
    for (int t = 0; t < kTuples; ++t) {
      const VectorXd zq = rng.normalVector(n), zk = rng.normalVector(n);
      const Position pq = randomPosition(rng, 2), pk = randomPosition(rng, 2);
      const double lhs = score(liere(zq, pq, params), liere(zk, pk, params));
      const double rhs = score(mixed(VectorXd(red.basis.transpose() * zq), pq, red.table),
                               mixed(VectorXd(red.basis.transpose() * zk), pk, red.table));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return makeReport("reduction:liere-mixed", worst, worst <= tol::kScoreEquivalence,
                    kPairs * kTuples, seed);
}

CheckReport rejectNonCommutingCheck(std::uint64_t seed) {
  constexpr int kPairs = 20;
  CounterRng rng(seed);
  int accepted = 0;
  for (int g = 0; g < kPairs; ++g) {
    const Eigen::Index n = 3 + g % 14;
    try {
      reduceLieREMixed(rng.skew(n), rng.skew(n));
      ++accepted;
    } catch (const std::invalid_argument&) {
    }
  }
  return makeReport("reduction:rejects-noncommuting", accepted, accepted == 0, kPairs, seed);
}

CheckReport fastPathCheck(std::uint64_t seed) {
  constexpr int kTrials = 1000;
  CounterRng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const Eigen::Index blocks = 1 + static_cast<Eigen::Index>(rng.next() % 64);
    const FrequencyTable table = randomTable(Scheme::Spherical, blocks, rng);
    const VectorXd z = rng.normalVector(3 * blocks);
    const Position p = randomPosition(rng, 2);
    worst = std::max(worst,
                     (spherical(z, p, table) - sphericalFast(z, p, table)).cwiseAbs().maxCoeff());
  }
  return makeReport("fast-path:spherical", worst, worst <= tol::kConstruction, kTrials, seed);
}

constexpr std::array<Scheme, 8> kRotarySchemes{Scheme::Rope1d,    Scheme::Trivial2d,
                                               Scheme::Axial,     Scheme::Mixed,
                                               Scheme::Spherical, Scheme::SphericalFast,
                                               Scheme::Uniform,   Scheme::LieRE};

constexpr std::array<Scheme, 5> kAbelianSchemes{Scheme::Rope1d, Scheme::Trivial2d, Scheme::Axial,
                                                Scheme::Mixed, Scheme::Uniform};

CheckReport isometryCheck(std::uint64_t seed) {
  constexpr int kTrials = 100;
  CounterRng rng(seed);
  double worst = 0.0;
  for (Scheme s : kRotarySchemes) {
    const Encoder e = suiteEncoder(s, seed);
    for (int t = 0; t < kTrials; ++t) {
      const VectorXd z = rng.normalVector(e.dim());
      const Position p = rng.uniformVector(e.axes(), -4 * kPi, 4 * kPi);
      worst = std::max(worst, std::abs(e.encode(z, p).norm() - z.norm()) / z.norm());
    }
  }
  return makeReport("isometry:rotary", worst, worst <= tol::kIsometry,
                    kTrials * static_cast<int>(kRotarySchemes.size()), seed);
}

double flowViolation(const Encoder& e, int trials, CounterRng& rng) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const VectorXd z = rng.normalVector(e.dim());
    const Position p1 = randomPosition(rng, e.axes()), p2 = randomPosition(rng, e.axes());
    worst = std::max(worst, (e.encode(e.encode(z, p1), p2) - e.encode(z, p1 + p2)).norm());
  }
  return worst;
}

CheckReport flowAbelianCheck(std::uint64_t seed) {
  constexpr int kTrials = 100;
  CounterRng rng(seed);
  double worst = 0.0;
  for (Scheme s : kAbelianSchemes) worst = std::max(worst, flowViolation(suiteEncoder(s, seed), kTrials, rng));
  return makeReport("flow:abelian", worst, worst <= tol::kFlow,
                    kTrials * static_cast<int>(kAbelianSchemes.size()), seed);
}

CheckReport flowSphericalCheck(std::uint64_t seed) {
  constexpr int kTrials = 100;
  CounterRng rng(seed);
  const double worst = flowViolation(suiteEncoder(Scheme::Spherical, seed), kTrials, rng);
  return makeReport("flow:spherical-counterexample", worst, worst > tol::kFlowCounterexample,
                    kTrials, seed);
}

CheckReport axialStripesCheck(std::uint64_t seed) {
  constexpr int kSize = 64;
  CounterRng rng(seed);
  const Encoder e = suiteEncoder(Scheme::Axial, seed);
  const VectorXd zq = rng.unitVector(e.dim()), zk = rng.unitVector(e.dim());
  double worst = 0.0;
  for (int b = 0; b < componentCount(e); ++b) {
    const AttentionPattern pat = renderPattern(e, zq, zk, kSize, kSize, b);
    // Even components are x-pairs (constant down each column), odd are y-pairs.
    const bool xPair = b % 2 == 0;
    for (int k = 0; k < kSize; ++k) {
      const VectorXd line = xPair ? VectorXd(pat.values.col(k)) : VectorXd(pat.values.row(k).transpose());
      worst = std::max(worst, line.maxCoeff() - line.minCoeff());
    }
  }
  return makeReport("pattern:axial-stripes", worst, worst == 0.0, componentCount(e), seed);
}

CheckReport blockSumCheck(std::uint64_t seed) {
  constexpr int kSize = 32;
  CounterRng rng(seed);
  double worst = 0.0;
  int patterns = 0;
  for (Scheme s : kRotarySchemes) {
    const Encoder e = suiteEncoder(s, seed);
    const VectorXd zq = rng.unitVector(e.dim()), zk = rng.unitVector(e.dim());
    const AttentionPattern combined = renderPattern(e, zq, zk, kSize, kSize);
    MatrixXd sum = MatrixXd::Zero(kSize, kSize);
    for (int b = 0; b < componentCount(e); ++b) {
      sum += renderPattern(e, zq, zk, kSize, kSize, b).values;
      ++patterns;
    }
    worst = std::max(worst, (sum - combined.values).cwiseAbs().maxCoeff());
  }
  return makeReport("pattern:block-sum", worst, worst <= tol::kSeparability, patterns, seed);
}

CheckReport mixedClosedFormCheck(std::uint64_t seed) {
  constexpr int kSize = 64;
  CounterRng rng(seed);
  const Encoder e = Encoder::mixed(FrequencyTable(Scheme::Mixed, MatrixXd::Ones(1, 2)));
  const VectorXd z = rng.unitVector(2);
  const AttentionPattern pat = renderPattern(e, z, z, kSize, kSize);
  double worst = 0.0;
  for (int j = 0; j < kSize; ++j) {
    for (int i = 0; i < kSize; ++i) {
      const double px = gridCoordinate(i, kSize, kPi), py = gridCoordinate(j, kSize, kPi);
      worst = std::max(worst, std::abs(pat.values(j, i) - std::cos(px + py)));
    }
  }
  return makeReport("pattern:mixed-closed-form", worst, worst <= tol::kSeparability,
                    kSize * kSize, seed);
}

std::vector<NamedCheck> buildRegistry() {
  constexpr int kEquivarianceTrials = 200;
  constexpr int kTrials = 100;
  std::vector<NamedCheck> checks;
  auto add = [&](std::string name, bool inDefault, std::function<CheckReport(std::uint64_t)> fn) {
    checks.push_back(NamedCheck{std::move(name), inDefault, std::move(fn)});
  };

  add("linalg:canonical-form", true, canonicalFormCheck);
  add("linalg:exp-routes", true, expRoutesCheck);
  add("reduction:liere-rope", true, ropeReductionCheck);
  add("reduction:liere-mixed", true, mixedReductionCheck);
  add("reduction:rejects-noncommuting", true, rejectNonCommutingCheck);
  for (Scheme s : kAbelianSchemes) {
    add("equivariance:" + std::string(toString(s)), true, [s](std::uint64_t seed) {
      return checkEquivariance(suiteEncoder(s, seed), kEquivarianceTrials, seed);
    });
  }
  add("equivariance:liere-commuting", true, [](std::uint64_t seed) {
    return renamed(checkEquivariance(commutingLieRE(seed), kEquivarianceTrials, seed),
                   "equivariance:liere-commuting");
  });
  add("non-equivariance:spherical", true, [](std::uint64_t seed) {
    return checkNonEquivariance(suiteEncoder(Scheme::Spherical, seed), kTrials, seed);
  });
  add("non-equivariance:liere-random", true, [](std::uint64_t seed) {
    return renamed(checkNonEquivariance(suiteEncoder(Scheme::LieRE, seed), kTrials, seed),
                   "non-equivariance:liere-random");
  });
  // Asserts the false claim that spherical is equivariant; expected to fail.
  add("equivariance:spherical-positive", false, [](std::uint64_t seed) {
    return renamed(checkEquivariance(suiteEncoder(Scheme::Spherical, seed), kTrials, seed),
                   "equivariance:spherical-positive");
  });
  add("separability:axial", true,
      [](std::uint64_t seed) { return checkAxialSeparability(kTrials, seed); });
  add("degeneracy:trivial2d", true,
      [](std::uint64_t seed) { return checkTrivialDegeneracy(kTrials, seed); });
  add("degeneracy:mixed-contrast", true,
      [](std::uint64_t seed) { return checkMixedDegeneracyContrast(kTrials, seed); });
  add("fast-path:spherical", true, fastPathCheck);
  for (Scheme s : {Scheme::Rope1d, Scheme::Trivial2d, Scheme::Axial, Scheme::Mixed,
                   Scheme::Spherical, Scheme::Uniform}) {
    add("gradients:" + std::string(toString(s)), true,
        [s](std::uint64_t seed) { return checkGradients(s, kTrials, seed); });
  }
  add("isometry:rotary", true, isometryCheck);
  add("flow:abelian", true, flowAbelianCheck);
  add("flow:spherical-counterexample", true, flowSphericalCheck);
  add("pattern:axial-stripes", true, axialStripesCheck);
  add("pattern:block-sum", true, blockSumCheck);
  add("pattern:mixed-closed-form", true, mixedClosedFormCheck);
  return checks;
}

}  // namespace

const std::vector<NamedCheck>& checkRegistry() {
  static const std::vector<NamedCheck> registry = buildRegistry();
  return registry;
}

std::vector<CheckReport> runChecks(const std::vector<std::string>& only, std::uint64_t seed) {
  const auto& registry = checkRegistry();
  std::vector<std::size_t> selected;
  if (only.empty()) {
    for (std::size_t i = 0; i < registry.size(); ++i)
      if (registry[i].inDefaultRun) selected.push_back(i);
  } else {
    for (const auto& name : only) {
      const auto it = std::find_if(registry.begin(), registry.end(),
                                   [&](const NamedCheck& c) { return c.name == name; });
      if (it == registry.end()) throw std::invalid_argument("unknown check '" + name + "'");
      selected.push_back(static_cast<std::size_t>(it - registry.begin()));
    }
  }
  std::vector<CheckReport> reports;
  reports.reserve(selected.size());
  for (std::size_t i : selected) {
    CheckReport r = registry[i].run(seed + i);
    r.name = registry[i].name;
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace rotary
