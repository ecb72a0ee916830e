#include "rotary/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace rotary {

double gridCoordinate(int k, int n, double extent) {
  if (n == 1) return 0.0;
  if (k == n - 1) return extent;
  return -extent + 2.0 * extent * static_cast<double>(k) / static_cast<double>(n - 1);
}

double PatchGrid::extentX() const {
  return std::numbers::pi * static_cast<double>(cols_) / static_cast<double>(trainCols_);
}

double PatchGrid::extentY() const {
  return std::numbers::pi * static_cast<double>(rows_) / static_cast<double>(trainRows_);
}

PatchGrid makeGrid(int rows, int cols, int trainRows, int trainCols) {
  if (rows < 1 || cols < 1 || trainRows < 1 || trainCols < 1) {
    throw std::invalid_argument("makeGrid: all dimensions must be >= 1 (got " +
                                std::to_string(rows) + "x" + std::to_string(cols) + ", train " +
                                std::to_string(trainRows) + "x" + std::to_string(trainCols) + ")");
  }
  PatchGrid g;
  g.rows_ = rows;
  g.cols_ = cols;
  g.trainRows_ = trainRows;
  g.trainCols_ = trainCols;
  const double ex = g.extentX(), ey = g.extentY();
  g.positions_.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int i = 0; i < rows; ++i) {
    const double py = gridCoordinate(i, rows, ey);
    for (int j = 0; j < cols; ++j) g.positions_.emplace_back(gridCoordinate(j, cols, ex), py);
  }
  return g;
}

std::size_t PatchGrid::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("PatchGrid::index");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
         static_cast<std::size_t>(j);
}

std::pair<int, int> PatchGrid::cell(std::size_t index) const {
  if (index >= positions_.size()) throw std::out_of_range("PatchGrid::cell");
  const auto c = static_cast<std::size_t>(cols_);
  return {static_cast<int>(index / c), static_cast<int>(index % c)};
}

Eigen::Vector2d PatchGrid::position(int i, int j) const { return positions_[index(i, j)]; }

std::vector<Eigen::Vector2d> flattenRaster(const PatchGrid& grid) { return grid.positions(); }

}  // namespace rotary
