#pragma once

#include <Eigen/Dense>

namespace rotary {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

/// Query/key embedding; blocks are contiguous runs of the encoder's block size.
using TokenVector = VectorXd;

/// M-dimensional token position (grid angle, radians).
using Position = VectorXd;

}  // namespace rotary
