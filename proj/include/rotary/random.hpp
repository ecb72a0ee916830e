#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "rotary/linalg.hpp"
#include "rotary/types.hpp"

namespace rotary {

/// Counter-based generator: draw k is splitmix64(key + k * golden). Output
/// depends only on (seed, stream, draw index), independent of the platform's
/// <random> distributions.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next() { return mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal (Box-Muller, cosine branch).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  VectorXd normalVector(Eigen::Index n) {
    VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  VectorXd unitVector(Eigen::Index n) { return normalVector(n).normalized(); }

  VectorXd uniformVector(Eigen::Index n, double lo, double hi) {
    VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  MatrixXd normalMatrix(Eigen::Index rows, Eigen::Index cols) {
    MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  /// Skew matrix with standard-normal strictly-upper triangle.
  SkewMatrixXd skew(Eigen::Index n) {
    MatrixXd m = MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        m(i, j) = normal();
        m(j, i) = -m(i, j);
      }
    }
    return SkewMatrixXd(m);
  }

  /// Haar-ish orthogonal matrix: QR of a Gaussian matrix, signs fixed so R
  /// has a positive diagonal.
  MatrixXd orthogonal(Eigen::Index n) {
    const Eigen::HouseholderQR<MatrixXd> qr(normalMatrix(n, n));
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
    const MatrixXd& r = qr.matrixQR();
    for (Eigen::Index i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rotary
