#pragma once

// Dense real linear algebra for skew-symmetric generators: Lie brackets,
// exponentials into SO(N) and the real block-canonical decomposition
//
//     A = U * blockdiag([[0, -l_0], [l_0, 0]], ..., [[0, -l_{D-1}], [l_{D-1}, 0]], 0) * U^T
//
// with U orthogonal and l_0 >= l_1 >= ... >= 0.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

#include "rotary/types.hpp"

namespace rotary {

/// Thrown when the symmetric eigensolver stalls.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N x N real matrix with entries(i, j) == -entries(j, i).
template <typename Scalar>
class SkewMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  /// Absolute antisymmetry tolerance accepted on construction.
  static constexpr double kConstructionTolerance = 1e-12;

  SkewMatrix() = default;

  /// Validates antisymmetry within kConstructionTolerance, then stores the
  /// exact antisymmetric part.
  template <typename Derived>
  explicit SkewMatrix(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw std::invalid_argument("SkewMatrix: expected a non-empty square matrix");
    }
    const Scalar asym = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(kConstructionTolerance)) {
      throw std::invalid_argument("SkewMatrix: input is not skew-symmetric (max |a_ij + a_ji| = " +
                                  std::to_string(static_cast<double>(asym)) + ")");
    }
    m_ = Scalar(0.5) * (m - m.transpose());
  }

  /// Antisymmetric part of an arbitrary square matrix, no validation.
  template <typename Derived>
  static SkewMatrix project(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw std::invalid_argument("SkewMatrix::project: expected a non-empty square matrix");
    }
    SkewMatrix out;
    out.m_ = Scalar(0.5) * (m - m.transpose());
    return out;
  }

  static SkewMatrix zero(Eigen::Index n) { return project(MatrixType::Zero(n, n)); }

  /// blockdiag of [[0, -w_d], [w_d, 0]] padded with zero rows/cols up to dim.
  static SkewMatrix blockDiagonal(std::span<const Scalar> freqs, Eigen::Index dim = -1) {
    const auto pairs = static_cast<Eigen::Index>(freqs.size());
    if (dim < 0) dim = 2 * pairs;
    if (dim < 2 * pairs || dim == 0) {
      throw std::invalid_argument("SkewMatrix::blockDiagonal: dimension too small for the blocks");
    }
    MatrixType m = MatrixType::Zero(dim, dim);
    for (Eigen::Index d = 0; d < pairs; ++d) {
      m(2 * d + 1, 2 * d) = freqs[d];
      m(2 * d, 2 * d + 1) = -freqs[d];
    }
    return project(m);
  }

  /// basis * this * basis^T
  template <typename Derived>
  SkewMatrix conjugated(const Eigen::MatrixBase<Derived>& basis) const {
    return project(basis * m_ * basis.transpose());
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  Scalar norm() const { return m_.norm(); }

  SkewMatrix operator+(const SkewMatrix& o) const {
    checkSameDim(o, "operator+");
    return project(m_ + o.m_);
  }
  SkewMatrix operator-(const SkewMatrix& o) const {
    checkSameDim(o, "operator-");
    return project(m_ - o.m_);
  }
  SkewMatrix operator*(Scalar s) const { return project(s * m_); }
  friend SkewMatrix operator*(Scalar s, const SkewMatrix& a) { return a * s; }

  void checkSameDim(const SkewMatrix& o, const char* what) const {
    if (dim() != o.dim()) {
      throw std::invalid_argument(std::string("SkewMatrix::") + what + ": dimension mismatch (" +
                                  std::to_string(dim()) + " vs " + std::to_string(o.dim()) + ")");
    }
  }

 private:
  MatrixType m_;
};

using SkewMatrixXd = SkewMatrix<double>;

/// Real block-canonical form of a skew-symmetric matrix.
///
/// Columns 2d and 2d+1 of `basis` span the d-th invariant plane, oriented so
/// that A * basis.col(2d) = l_d * basis.col(2d+1). For odd N the last column
/// is the unpaired zero mode.
template <typename Scalar>
struct CanonicalForm {
  Matrix<Scalar> basis;
  Vector<Scalar> frequencies;  // floor(N/2) entries, descending, >= 0
  Eigen::Index zeroModes = 0;  // count of zero eigenvalues

  Eigen::Index dim() const { return basis.rows(); }

  /// blockdiag([[0, -t*l_d], [t*l_d, 0]]) in the canonical basis.
  Matrix<Scalar> blockMatrix(Scalar t = Scalar(1)) const {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(dim(), dim());
    for (Eigen::Index d = 0; d < frequencies.size(); ++d) {
      m(2 * d + 1, 2 * d) = t * frequencies(d);
      m(2 * d, 2 * d + 1) = -t * frequencies(d);
    }
    return m;
  }

  Matrix<Scalar> reconstruct() const { return basis * blockMatrix() * basis.transpose(); }

  /// exp(t*A) assembled from exact per-plane rotations.
  Matrix<Scalar> exponential(Scalar t = Scalar(1)) const {
    Matrix<Scalar> rot = Matrix<Scalar>::Identity(dim(), dim());
    for (Eigen::Index d = 0; d < frequencies.size(); ++d) {
      const Scalar c = std::cos(t * frequencies(d));
      const Scalar s = std::sin(t * frequencies(d));
      rot(2 * d, 2 * d) = c;
      rot(2 * d + 1, 2 * d + 1) = c;
      rot(2 * d + 1, 2 * d) = s;
      rot(2 * d, 2 * d + 1) = -s;
    }
    return basis * rot * basis.transpose();
  }
};

using CanonicalFormXd = CanonicalForm<double>;

template <typename Scalar>
struct SymmetricEigen {
  Vector<Scalar> values;    // descending
  Matrix<Scalar> vectors;   // orthonormal columns, vectors.col(i) <-> values(i)
  int sweeps = 0;
};

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigensolver for a dense symmetric matrix.
template <typename Scalar>
SymmetricEigen<Scalar> jacobiEigen(const Matrix<Scalar>& sym, int maxSweeps = kJacobiMaxSweeps) {
  if (sym.rows() != sym.cols()) {
    throw std::invalid_argument("jacobiEigen: matrix must be square");
  }
  const Eigen::Index n = sym.rows();
  Matrix<Scalar> s = Scalar(0.5) * (sym + sym.transpose());
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar total = s.norm();

  auto offNorm = [&] {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i) acc += s(i, j) * s(i, j);
    return std::sqrt(Scalar(2) * acc);
  };

  int sweep = 0;
  for (; offNorm() > eps * total; ++sweep) {
    if (sweep == maxSweeps) {
      throw ConvergenceError("jacobiEigen: no convergence after " + std::to_string(maxSweeps) +
                             " sweeps");
    }
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (s(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(s, p, q);
        s.applyOnTheLeft(p, q, rot.adjoint());
        s.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        s(p, q) = s(q, p) = Scalar(0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return s(a, a) > s(b, b); });

  SymmetricEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = s(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  out.sweeps = sweep;
  return out;
}

/// [a, b] = ab - ba, exactly antisymmetrized.
template <typename Scalar>
SkewMatrix<Scalar> commutator(const SkewMatrix<Scalar>& a, const SkewMatrix<Scalar>& b) {
  a.checkSameDim(b, "commutator");
  return SkewMatrix<Scalar>::project(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

/// ||[a,b]||_F <= relTol * ||a||_F * ||b||_F; true when either input is zero.
template <typename Scalar>
bool isCommuting(const SkewMatrix<Scalar>& a, const SkewMatrix<Scalar>& b, Scalar relTol) {
  a.checkSameDim(b, "isCommuting");
  if (!(relTol > Scalar(0))) {
    throw std::invalid_argument("isCommuting: relTol must be positive");
  }
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) return true;
  return commutator(a, b).norm() <= relTol * na * nb;
}

/// Frequencies at or below this are zero modes.
template <typename Scalar>
Scalar zeroFrequencyThreshold(const SkewMatrix<Scalar>& a) {
  return Scalar(1e-10) * std::max(Scalar(1), a.norm());
}

namespace detail {

// Remove the span of the first `cols` columns of q from w (two passes).
template <typename Scalar>
Vector<Scalar> orthogonalize(const Matrix<Scalar>& q, Eigen::Index cols, Vector<Scalar> w) {
  if (cols == 0) return w;
  const auto chosen = q.leftCols(cols);
  for (int pass = 0; pass < 2; ++pass) {
    w -= chosen * (chosen.transpose() * w);
  }
  return w;
}

// Among unconsumed candidate columns, take the first (in the given order)
// whose residual norm exceeds `accept`, else the one with largest residual.
template <typename Scalar>
Eigen::Index pickCandidate(const Matrix<Scalar>& candidates, const std::vector<Eigen::Index>& pool,
                           const std::vector<bool>& consumed, const Matrix<Scalar>& q,
                           Eigen::Index cols, Vector<Scalar>& residual) {
  constexpr double accept = 0.5;
  Eigen::Index best = -1;
  Scalar bestNorm(-1);
  Vector<Scalar> bestResidual;
  for (Eigen::Index idx : pool) {
    if (consumed[static_cast<std::size_t>(idx)]) continue;
    Vector<Scalar> r = orthogonalize(q, cols, Vector<Scalar>(candidates.col(idx)));
    const Scalar rn = r.norm();
    if (rn > Scalar(accept)) {
      residual = std::move(r);
      return idx;
    }
    if (rn > bestNorm) {
      bestNorm = rn;
      best = idx;
      bestResidual = std::move(r);
    }
  }
  residual = std::move(bestResidual);
  return best;
}

}  // namespace detail

/// Real block-canonical decomposition via a Jacobi eigensolve of S = A^T A.
///
/// Each positive eigenvalue l^2 of S carries invariant planes span(u, A u / l).
/// Degenerate eigenspaces are paired greedily with re-orthogonalization, so only
/// the reconstruction is unique, not the basis.
template <typename Scalar>
CanonicalForm<Scalar> canonicalForm(const SkewMatrix<Scalar>& a) {
  const Eigen::Index n = a.dim();
  const Eigen::Index pairs = n / 2;
  const Matrix<Scalar>& am = a.matrix();

  const Matrix<Scalar> s = am.transpose() * am;
  const SymmetricEigen<Scalar> eig = jacobiEigen<Scalar>(s);

  const Scalar zeroTol = zeroFrequencyThreshold(a);
  std::vector<Eigen::Index> positive, zero;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar lambda = std::sqrt(std::max(eig.values(i), Scalar(0)));
    (lambda > zeroTol ? positive : zero).push_back(i);
  }
  const auto positivePairs = static_cast<Eigen::Index>(positive.size() / 2);

  Matrix<Scalar> q = Matrix<Scalar>::Zero(n, n);
  std::vector<bool> consumed(static_cast<std::size_t>(n), false);
  std::vector<Scalar> lambdas;
  Eigen::Index cols = 0;

  for (Eigen::Index d = 0; d < positivePairs; ++d) {
    Vector<Scalar> r;
    const Eigen::Index idx = detail::pickCandidate(eig.vectors, positive, consumed, q, cols, r);
    consumed[static_cast<std::size_t>(idx)] = true;
    const Vector<Scalar> u = r.normalized();
    q.col(cols) = u;
    Vector<Scalar> v = detail::orthogonalize(q, cols + 1, Vector<Scalar>(am * u));
    v.normalize();
    q.col(cols + 1) = v;
    lambdas.push_back(v.dot(am * u));
    cols += 2;
  }

  // Complete the basis from the remaining eigenvectors, falling back to the
  // standard basis; these planes carry zero frequency.
  Matrix<Scalar> completion(n, 2 * n);
  completion << eig.vectors, Matrix<Scalar>::Identity(n, n);
  std::vector<Eigen::Index> pool;
  for (Eigen::Index i : positive)
    if (!consumed[static_cast<std::size_t>(i)]) pool.push_back(i);
  pool.insert(pool.end(), zero.begin(), zero.end());
  for (Eigen::Index i = 0; i < n; ++i) pool.push_back(n + i);
  std::vector<bool> used(static_cast<std::size_t>(2 * n), false);
  while (cols < n) {
    Vector<Scalar> r;
    const Eigen::Index idx = detail::pickCandidate(completion, pool, used, q, cols, r);
    used[static_cast<std::size_t>(idx)] = true;
    q.col(cols++) = r.normalized();
  }
  for (auto d = static_cast<Eigen::Index>(lambdas.size()); d < pairs; ++d) lambdas.push_back(0);

  // Sort planes by descending frequency.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(pairs));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return lambdas[static_cast<std::size_t>(x)] > lambdas[static_cast<std::size_t>(y)];
  });

  CanonicalForm<Scalar> out;
  out.basis = q;
  out.frequencies.resize(pairs);
  for (Eigen::Index d = 0; d < pairs; ++d) {
    const Eigen::Index src = order[static_cast<std::size_t>(d)];
    out.basis.col(2 * d) = q.col(2 * src);
    out.basis.col(2 * d + 1) = q.col(2 * src + 1);
    Scalar lambda = lambdas[static_cast<std::size_t>(src)];
    if (lambda <= zeroTol) lambda = Scalar(0);
    out.frequencies(d) = lambda;
  }
  out.zeroModes = n - 2 * pairs;
  for (Eigen::Index d = 0; d < pairs; ++d)
    if (out.frequencies(d) == Scalar(0)) out.zeroModes += 2;
  return out;
}

/// exp(a) through the canonical form (exact per-plane rotations).
template <typename Scalar>
Matrix<Scalar> matrixExp(const SkewMatrix<Scalar>& a) {
  return canonicalForm(a).exponential();
}

/// exp(a) by scaling and squaring a truncated Taylor series. Kept as an
/// independent route to cross-check matrixExp.
template <typename Scalar>
Matrix<Scalar> matrixExpSeries(const SkewMatrix<Scalar>& a) {
  const Eigen::Index n = a.dim();
  const Scalar norm = a.norm();
  const int squarings =
      norm > Scalar(0) ? std::max(0, static_cast<int>(std::ceil(std::log2(norm)))) : 0;
  const Matrix<Scalar> scaled = a.matrix() / std::ldexp(Scalar(1), squarings);

  Matrix<Scalar> result = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> term = Matrix<Scalar>::Identity(n, n);
  for (int k = 1; k < 64; ++k) {
    term = term * scaled / Scalar(k);
    result += term;
    if (term.norm() < Scalar(1e-16)) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace rotary
