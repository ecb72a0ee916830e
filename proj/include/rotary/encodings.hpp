#pragma once

// Positional encodings: sinusoidal APE, 1D RoPE and its 2D extensions
// (trivial, axial, mixed, spherical, uniform) and LieRE.
//
// Block layout is contiguous: pair d occupies [2d, 2d+2), triple d occupies
// [3d, 3d+3), an axial quadruple is the x-pair followed by the y-pair.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rotary/linalg.hpp"
#include "rotary/types.hpp"

namespace rotary {

enum class Scheme {
  Rope1d,
  Trivial2d,
  Axial,
  Mixed,
  Spherical,
  SphericalFast,
  Uniform,
  LieRE,
  SinusoidalAPE,
};

std::string_view toString(Scheme scheme);
/// Throws std::invalid_argument for unknown names.
Scheme schemeFromString(std::string_view name);

/// Components per block: 2 (pairs), 3 (spherical triples), 4 (axial quadruples).
/// LieRE acts on the whole vector and reports 1.
int blockSize(Scheme scheme);

/// Number of frequency-table columns a scheme consumes (0 for LieRE).
int tableAxes(Scheme scheme);

/// Commuting-generator schemes: shift-equivariant, satisfy the flow property.
bool isAbelian(Scheme scheme);

/// Frequencies omega(d, m) in radians per unit position, one row per block.
class FrequencyTable {
 public:
  FrequencyTable() = default;

  /// Validates finiteness, and equal entries for Scheme::Uniform.
  FrequencyTable(Scheme scheme, MatrixXd freqs);

  /// Fixed schedule omega_d = base^(-2d/D), shared by every axis of the scheme.
  static FrequencyTable fixed(Scheme scheme, Eigen::Index blocks, double base = 100.0);

  /// One frequency for every block and both axes.
  static FrequencyTable uniform(Eigen::Index blocks, double omega = 1.0);

  Scheme scheme() const { return scheme_; }
  Eigen::Index blocks() const { return freqs_.rows(); }
  Eigen::Index axes() const { return freqs_.cols(); }
  double operator()(Eigen::Index d, Eigen::Index m) const { return freqs_(d, m); }
  const MatrixXd& freqs() const { return freqs_; }

  bool operator==(const FrequencyTable& o) const {
    return scheme_ == o.scheme_ && freqs_.rows() == o.freqs_.rows() &&
           freqs_.cols() == o.freqs_.cols() && freqs_ == o.freqs_;
  }

 private:
  Scheme scheme_ = Scheme::Rope1d;
  MatrixXd freqs_;
};

/// omega_d = base^(-2d/D) for d = 0..D-1 as a single-axis (rope1d) table.
FrequencyTable frequencySchedule(Eigen::Index blocks, double base = 100.0);

struct LieREParams {
  std::vector<SkewMatrixXd> generators;  // one per position axis

  LieREParams() = default;
  /// Throws when generators is empty or dimensions disagree.
  explicit LieREParams(std::vector<SkewMatrixXd> gens);

  Eigen::Index dim() const { return generators.front().dim(); }
  Eigen::Index axes() const { return static_cast<Eigen::Index>(generators.size()); }

  /// sum_m generators[m] * p_m
  SkewMatrixXd combined(const Position& p) const;
};

namespace detail {

[[noreturn]] void partitionError(const char* what, Eigen::Index n, Eigen::Index block,
                                 Eigen::Index tableBlocks);
[[noreturn]] void axesError(const char* what, Eigen::Index got, Eigen::Index expected);

template <typename Derived>
void checkPartition(const Eigen::MatrixBase<Derived>& z, Eigen::Index block,
                    const FrequencyTable& t, Eigen::Index tableAxes, const char* what) {
  if (z.cols() != 1 || z.size() != block * t.blocks() || t.blocks() == 0) {
    partitionError(what, z.size(), block, t.blocks());
  }
  if (t.axes() != tableAxes) axesError(what, t.axes(), tableAxes);
}

inline void checkPosition(const Position& p, Eigen::Index axes, const char* what) {
  if (p.size() != axes) axesError(what, p.size(), axes);
}

template <typename Scalar>
void rotatePair(Vector<Scalar>& v, Eigen::Index i, Scalar theta) {
  const Scalar c = std::cos(theta);
  const Scalar s = std::sin(theta);
  const Scalar a = v(i);
  const Scalar b = v(i + 1);
  v(i) = a * c - b * s;
  v(i + 1) = a * s + b * c;
}

}  // namespace detail

/// x + PE(p), PE_n = sin(p * omega_{n/2}) for even n, cos for odd n.
template <typename Derived>
Vector<typename Derived::Scalar> sinusoidalAPE(const Eigen::MatrixBase<Derived>& x, double p,
                                               const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  detail::checkPartition(x, 2, t, 1, "sinusoidalAPE");
  Vector<Scalar> out = x;
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    const Scalar angle = Scalar(p * t(d, 0));
    out(2 * d) += std::sin(angle);
    out(2 * d + 1) += std::cos(angle);
  }
  return out;
}

/// Rotates pair d by omega_d * p.
template <typename Derived>
Vector<typename Derived::Scalar> rope1d(const Eigen::MatrixBase<Derived>& z, double p,
                                        const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  detail::checkPartition(z, 2, t, 1, "rope1d");
  Vector<Scalar> out = z;
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    detail::rotatePair<Scalar>(out, 2 * d, Scalar(t(d, 0) * p));
  }
  return out;
}

/// rope1d on p_x + p_y; every anti-diagonal shares one encoding.
template <typename Derived>
Vector<typename Derived::Scalar> trivial2d(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                           const FrequencyTable& t) {
  detail::checkPosition(p, 2, "trivial2d");
  return rope1d(z, p(0) + p(1), t);
}

/// Block d: x-pair rotated by omega(d,0) * p_x, y-pair by omega(d,1) * p_y.
template <typename Derived>
Vector<typename Derived::Scalar> axial(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                       const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  detail::checkPartition(z, 4, t, 2, "axial");
  detail::checkPosition(p, 2, "axial");
  Vector<Scalar> out = z;
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    detail::rotatePair<Scalar>(out, 4 * d, Scalar(t(d, 0) * p(0)));
    detail::rotatePair<Scalar>(out, 4 * d + 2, Scalar(t(d, 1) * p(1)));
  }
  return out;
}

/// Pair d rotated once by omega(d,0) * p_x + omega(d,1) * p_y.
template <typename Derived>
Vector<typename Derived::Scalar> mixed(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                       const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  detail::checkPartition(z, 2, t, 2, "mixed");
  detail::checkPosition(p, 2, "mixed");
  Vector<Scalar> out = z;
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    detail::rotatePair<Scalar>(out, 2 * d, Scalar(t(d, 0) * p(0) + t(d, 1) * p(1)));
  }
  return out;
}

/// Rotation in the (0, 1) plane of a triple.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> yawMatrix(Scalar angle) {
  const Scalar c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix<Scalar, 3, 3> m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

/// Rotation in the (1, 2) plane of a triple.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> rollMatrix(Scalar angle) {
  const Scalar c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix<Scalar, 3, 3> m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

/// Triple d mapped by Yaw(omega(d,0) p_x) * Roll(omega(d,1) p_y): roll first,
/// then yaw. The two rotations do not commute.
template <typename Derived>
Vector<typename Derived::Scalar> spherical(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                           const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  detail::checkPartition(z, 3, t, 2, "spherical");
  detail::checkPosition(p, 2, "spherical");
  Vector<Scalar> out(z.size());
  for (Eigen::Index d = 0; d < t.blocks(); ++d) {
    const Eigen::Matrix<Scalar, 3, 3> rot =
        yawMatrix(Scalar(t(d, 0) * p(0))) * rollMatrix(Scalar(t(d, 1) * p(1)));
    out.template segment<3>(3 * d) = rot * z.template segment<3>(3 * d);
  }
  return out;
}

/// Same map as spherical, computed as two component-wise plane updates over
/// all triples at once. Each update reads both inputs before writing.
template <typename Derived>
Vector<typename Derived::Scalar> sphericalFast(const Eigen::MatrixBase<Derived>& z,
                                               const Position& p, const FrequencyTable& t) {
  using Scalar = typename Derived::Scalar;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  detail::checkPartition(z, 3, t, 2, "sphericalFast");
  detail::checkPosition(p, 2, "sphericalFast");
  const Eigen::Index blocks = t.blocks();

  const Array yaw = (t.freqs().col(0).array() * p(0)).template cast<Scalar>();
  const Array roll = (t.freqs().col(1).array() * p(1)).template cast<Scalar>();
  const Array cy = yaw.cos(), sy = yaw.sin();
  const Array cr = roll.cos(), sr = roll.sin();

  Vector<Scalar> out = z;
  Eigen::Map<Eigen::Matrix<Scalar, 3, Eigen::Dynamic>> tri(out.data(), 3, blocks);
  const Array z0 = tri.row(0).transpose().array();
  const Array z1 = tri.row(1).transpose().array();
  const Array z2 = tri.row(2).transpose().array();

  const Array r1 = cr * z1 - sr * z2;
  const Array r2 = sr * z1 + cr * z2;
  tri.row(0) = (cy * z0 - sy * r1).matrix().transpose();
  tri.row(1) = (sy * z0 + cy * r1).matrix().transpose();
  tri.row(2) = r2.matrix().transpose();
  return out;
}

/// Axial with a single shared frequency (one cycle over [-pi, pi] at omega = 1).
template <typename Derived>
Vector<typename Derived::Scalar> uniform(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                         double omega = 1.0) {
  if (z.size() % 4 != 0 || z.size() == 0) {
    detail::partitionError("uniform", z.size(), 4, z.size() / 4);
  }
  return axial(z, p, FrequencyTable::uniform(z.size() / 4, omega));
}

/// exp(sum_m A_m p_m) z.
template <typename Derived>
Vector<typename Derived::Scalar> liere(const Eigen::MatrixBase<Derived>& z, const Position& p,
                                       const LieREParams& params) {
  using Scalar = typename Derived::Scalar;
  if (params.generators.empty()) throw std::invalid_argument("liere: no generators");
  if (z.cols() != 1 || z.size() != params.dim()) {
    detail::partitionError("liere", z.size(), params.dim(), 1);
  }
  detail::checkPosition(p, params.axes(), "liere");
  const MatrixXd rot = matrixExp(params.combined(p));
  return rot.template cast<Scalar>() * z;
}

/// One encoder interface over every scheme.
class Encoder {
 public:
  Encoder() = default;

  static Encoder rope1d(FrequencyTable table);
  static Encoder trivial2d(FrequencyTable table);
  static Encoder axial(FrequencyTable table);
  static Encoder mixed(FrequencyTable table);
  static Encoder spherical(FrequencyTable table);
  static Encoder sphericalFast(FrequencyTable table);
  static Encoder uniform(Eigen::Index blocks, double omega = 1.0);
  static Encoder liere(LieREParams params);
  static Encoder sinusoidal(FrequencyTable table);

  /// Any table-driven scheme; the table's shape is validated for the scheme.
  static Encoder fromTable(Scheme scheme, FrequencyTable table);

  Scheme scheme() const { return scheme_; }
  Eigen::Index dim() const;
  Eigen::Index axes() const;
  Eigen::Index blockSize() const { return rotary::blockSize(scheme_); }
  bool isRotary() const { return scheme_ != Scheme::SinusoidalAPE; }

  const FrequencyTable& table() const;
  const LieREParams& liereParams() const;

  /// Same scheme with a replacement table (uniform tables must stay uniform).
  Encoder withTable(FrequencyTable table) const;

  VectorXd encode(const VectorXd& z, const Position& p) const;

 private:
  Scheme scheme_ = Scheme::Rope1d;
  std::optional<FrequencyTable> table_;
  std::optional<LieREParams> liere_;
};

/// d alpha / d omega for alpha = <encode(z_q, p_q), encode(z_k, p_k)>.
///
/// Entries are laid out as d * axes + m. The uniform scheme has one shared
/// parameter and returns a single entry, the chain-rule sum over all blocks.
VectorXd gradFrequencies(Scheme scheme, const VectorXd& zq, const VectorXd& zk, const Position& pq,
                         const Position& pk, const FrequencyTable& table);

}  // namespace rotary
