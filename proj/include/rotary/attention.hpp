#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rotary/encodings.hpp"
#include "rotary/types.hpp"

namespace rotary {

/// q^T k
template <typename DerivedQ, typename DerivedK>
typename DerivedQ::Scalar score(const Eigen::MatrixBase<DerivedQ>& q,
                                const Eigen::MatrixBase<DerivedK>& k) {
  if (q.size() != k.size()) throw std::invalid_argument("score: dimension mismatch");
  return q.dot(k);
}

/// Row-wise softmax of scale * Q K^T.
MatrixXd attentionWeights(const MatrixXd& q, const MatrixXd& k, double scale);

/// softmax(scale * Q K^T) V; pass scale = 1/sqrt(N) for standard attention.
MatrixXd softmaxAttention(const MatrixXd& q, const MatrixXd& k, const MatrixXd& v, double scale);

/// score(encode(z_q, p_q), encode(z_k, p_k))
double scoredPair(const Encoder& encoder, const VectorXd& zq, const VectorXd& zk,
                  const Position& pq, const Position& pk);

/// Pattern components: the pairs (triples for spherical) whose partial dot
/// products sum to the full score. Axial x- and y-pairs are separate components.
Eigen::Index componentSize(const Encoder& encoder);
Eigen::Index componentCount(const Encoder& encoder);

/// Position of the pattern pixel at column i, row j, widened to the
/// encoder's axis count (extra axes are 0, a 1-axis encoder takes p_x).
Position patternPosition(const Encoder& encoder, double px, double py);

/// Raster of scores with the key at the origin and the query swept over
/// [-pi, pi]^2. values(j, i) is pixel (i, j): column i sets p_x, row j sets p_y.
struct AttentionPattern {
  int width = 0;
  int height = 0;
  MatrixXd values;
  Scheme scheme = Scheme::Rope1d;
  std::optional<int> block;  // empty for the combined pattern

  std::string label() const;
};

/// Throws std::out_of_range for a block index outside [0, componentCount).
AttentionPattern renderPattern(const Encoder& encoder, const VectorXd& zq, const VectorXd& zk,
                               int width, int height, std::optional<int> block = std::nullopt);

}  // namespace rotary
