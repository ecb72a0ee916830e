#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rotary {

/// Patch positions on [-pi, pi]^2 at the training resolution, with the range
/// scaled by rows/trainRows (cols/trainCols) when extrapolating.
///
/// Row i sets p_y, column j sets p_x; (0, 0) is the top-left corner.
class PatchGrid {
 public:
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int trainRows() const { return trainRows_; }
  int trainCols() const { return trainCols_; }

  /// Half-width of the coordinate range along x (resp. y).
  double extentX() const;
  double extentY() const;

  Eigen::Vector2d position(int i, int j) const;
  const std::vector<Eigen::Vector2d>& positions() const { return positions_; }

  std::size_t index(int i, int j) const;
  std::pair<int, int> cell(std::size_t index) const;

 private:
  friend PatchGrid makeGrid(int rows, int cols, int trainRows, int trainCols);

  int rows_ = 0, cols_ = 0, trainRows_ = 0, trainCols_ = 0;
  std::vector<Eigen::Vector2d> positions_;
};

/// Endpoint-inclusive lattice; a single row or column sits at 0.
PatchGrid makeGrid(int rows, int cols, int trainRows, int trainCols);

/// Square convenience overload at training resolution.
inline PatchGrid makeGrid(int rows, int cols) { return makeGrid(rows, cols, rows, cols); }

/// Row-major positions, index 0 is the top-left patch.
std::vector<Eigen::Vector2d> flattenRaster(const PatchGrid& grid);

/// k-th of n evenly spaced points on [-extent, extent]; 0 when n == 1.
double gridCoordinate(int k, int n, double extent);

}  // namespace rotary
