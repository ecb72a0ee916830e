#include "rotary/attention.hpp"

#include <stdexcept>

#include "rotary/grid.hpp"

namespace rotary {

MatrixXd attentionWeights(const MatrixXd& q, const MatrixXd& k, double scale) {
  if (q.cols() != k.cols()) throw std::invalid_argument("attention: Q/K width mismatch");
  MatrixXd logits = scale * q * k.transpose();
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    row.array() -= row.maxCoeff();
    row = row.array().exp().matrix();
    row /= row.sum();
  }
  return logits;
}

MatrixXd softmaxAttention(const MatrixXd& q, const MatrixXd& k, const MatrixXd& v, double scale) {
  if (k.rows() != v.rows()) throw std::invalid_argument("attention: K/V length mismatch");
  if (q.rows() == 0 || k.rows() == 0) throw std::invalid_argument("attention: empty input");
  return attentionWeights(q, k, scale) * v;
}

double scoredPair(const Encoder& encoder, const VectorXd& zq, const VectorXd& zk,
                  const Position& pq, const Position& pk) {
  return score(encoder.encode(zq, pq), encoder.encode(zk, pk));
}

Eigen::Index componentSize(const Encoder& encoder) {
  switch (encoder.scheme()) {
    case Scheme::Spherical:
    case Scheme::SphericalFast:
      return 3;
    case Scheme::LieRE:
      return encoder.dim() % 2 == 0 ? 2 : 1;
    default:
      return 2;
  }
}

Eigen::Index componentCount(const Encoder& encoder) {
  return encoder.dim() / componentSize(encoder);
}

Position patternPosition(const Encoder& encoder, double px, double py) {
  Position p = Position::Zero(encoder.axes());
  p(0) = px;
  if (p.size() > 1) p(1) = py;
  return p;
}

std::string AttentionPattern::label() const {
  return std::string(toString(scheme)) + (block ? ":block" + std::to_string(*block) : ":combined");
}

AttentionPattern renderPattern(const Encoder& encoder, const VectorXd& zq, const VectorXd& zk,
                               int width, int height, std::optional<int> block) {
  if (width < 1 || height < 1) throw std::invalid_argument("renderPattern: empty raster");
  const Eigen::Index unit = componentSize(encoder);
  if (block && (*block < 0 || *block >= componentCount(encoder))) {
    throw std::out_of_range("renderPattern: block " + std::to_string(*block) + " outside [0, " +
                            std::to_string(componentCount(encoder)) + ")");
  }

  const PatchGrid grid = makeGrid(height, width);
  const VectorXd key = encoder.encode(zk, Position::Zero(encoder.axes()));

  AttentionPattern out;
  out.width = width;
  out.height = height;
  out.scheme = encoder.scheme();
  out.block = block;
  out.values.resize(height, width);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const Eigen::Vector2d p = grid.position(j, i);
      const VectorXd query = encoder.encode(zq, patternPosition(encoder, p.x(), p.y()));
      out.values(j, i) = block ? query.segment(*block * unit, unit).dot(key.segment(*block * unit, unit))
                               : query.dot(key);
    }
  }
  return out;
}

}  // namespace rotary
