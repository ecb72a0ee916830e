#pragma once

// Executable checks for the structural claims about rotary encodings:
// shift-equivariance, the LieRE -> RoPE / Mixed RoPE reductions, axial
// separability, the trivial-2D degeneracy, and gradient correctness.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotary/encodings.hpp"
#include "rotary/linalg.hpp"
#include "rotary/types.hpp"

namespace rotary {

namespace tol {
inline constexpr double kConstruction = 1e-12;
inline constexpr double kLinalg = 1e-9;
inline constexpr double kScoreEquivalence = 1e-8;
inline constexpr double kCounterexample = 1e-4;
inline constexpr double kEquivariance = 1e-9;
inline constexpr double kSeparability = 1e-10;
inline constexpr double kDegeneracy = 1e-12;
inline constexpr double kDegeneracyContrast = 1e-3;
inline constexpr double kGradient = 1e-5;
inline constexpr double kGradientFloor = 1e-8;
inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kIsometry = 1e-10;
inline constexpr double kFlow = 1e-10;
inline constexpr double kFlowCounterexample = 1e-3;
}  // namespace tol

struct CheckReport {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // worst measured violation
  int trials = 0;
  std::uint64_t seed = 0;

  /// One JSON object, no trailing newline.
  std::string toJsonLine() const;
};

/// Max |alpha(p_q + s, p_k + s) - alpha(p_q, p_k)| over random z, p and s.
double maxShiftViolation(const Encoder& encoder, int trials, std::uint64_t seed);

/// Passes when the shift violation stays within 1e-9.
CheckReport checkEquivariance(const Encoder& encoder, int trials, std::uint64_t seed);

/// Passes when some trial violates shift-invariance by more than 1e-4.
CheckReport checkNonEquivariance(const Encoder& encoder, int trials, std::uint64_t seed);

/// Frequencies plus orthogonal basis U such that LieRE scores equal rotary
/// scores on U^T-transformed inputs.
struct Reduction {
  FrequencyTable table;  // rope1d (one column) or mixed (two columns)
  MatrixXd basis;

  /// Rotary encoding of U^T z; an unpaired trailing zero mode passes through.
  VectorXd encode(const VectorXd& z, const Position& p) const;
};

/// Reduction of a 1D LieRE generator to RoPE frequencies.
Reduction reduceLieRE1D(const SkewMatrixXd& generator);

/// Simultaneous block-diagonalization of commuting generators into a Mixed
/// RoPE table. Planes are oriented so omega_x >= 0 (omega_y >= 0 when
/// omega_x is zero). Throws std::invalid_argument unless isCommuting(ax, ay, 1e-9).
Reduction reduceLieREMixed(const SkewMatrixXd& ax, const SkewMatrixXd& ay);

/// |alpha - (alpha_x + alpha_y)| for axial RoPE, with each part recomputed
/// from its own axis only.
CheckReport checkAxialSeparability(int trials, std::uint64_t seed, Eigen::Index dim = 16);

/// Max ||encode(z, (a, b)) - encode(z, (a + t, b - t))|| over random trials.
double antiDiagonalResidual(const Encoder& encoder, int trials, std::uint64_t seed);

/// trivial2d anti-diagonal invariance within 1e-12.
CheckReport checkTrivialDegeneracy(int trials, std::uint64_t seed);

/// Mixed RoPE with distinct per-axis frequencies breaks the invariance by > 1e-3.
CheckReport checkMixedDegeneracyContrast(int trials, std::uint64_t seed);

/// Central differences of the score with respect to every free frequency.
VectorXd finiteDifferenceGradient(Scheme scheme, const VectorXd& zq, const VectorXd& zk,
                                  const Position& pq, const Position& pk,
                                  const FrequencyTable& table,
                                  double h = tol::kFiniteDifferenceStep);

/// ||analytic - numeric||_inf / max(||analytic||_inf, 1e-8)
double gradientRelativeError(const VectorXd& analytic, const VectorXd& numeric);

/// Worst gradientRelativeError over random instances of the scheme.
CheckReport checkGradients(Scheme scheme, int trials, std::uint64_t seed);

/// Mean score of encode(z, p + shift e_x) against encode(z, p) over random
/// unit z and base positions, at `samples` shifts evenly spaced on
/// [0, maxShift]. Inspection only, no pass/fail.
std::vector<double> checkLocalityProbe(const Encoder& encoder, double maxShift, int samples,
                                       std::uint64_t seed = 0, int draws = 64);

/// Default encoders the suite exercises.
Encoder suiteEncoder(Scheme scheme, std::uint64_t seed);

/// Commuting generator pair U D_x U^T, U D_y U^T with random U, D_x, D_y.
std::pair<SkewMatrixXd, SkewMatrixXd> commutingGenerators(Eigen::Index dim, std::uint64_t seed);

struct NamedCheck {
  std::string name;
  bool inDefaultRun = true;
  std::function<CheckReport(std::uint64_t seed)> run;
};

/// Registry of named checks. Check i runs with seed + i.
const std::vector<NamedCheck>& checkRegistry();

/// Throws std::invalid_argument for an unknown name. Empty `only` runs every
/// default check.
std::vector<CheckReport> runChecks(const std::vector<std::string>& only, std::uint64_t seed);

}  // namespace rotary
