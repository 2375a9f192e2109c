#pragma once

#include <carbon/model.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carbon {

/// Values on the (reversed-time, space) grid, tau = T - t.
///
/// Row k holds time level first_level + k; column i holds node x_i. Outside
/// the spatial grid the ghost rule applies: 0 for x <= -l, upper_ghost for
/// x >= l. The allowance surface has first_level = 0 and upper_ghost = pi.
template <typename Scalar>
class GridSurface {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  GridSurface(GridSpec grid, Scalar upper_ghost, int first_level, Matrix values)
      : grid_(grid), upper_ghost_(upper_ghost), first_level_(first_level), values_(std::move(values)) {
    if (values_.cols() != grid_.space_points)
      throw std::invalid_argument("GridSurface: column count must equal the number of space points");
    if (first_level_ < 0 || first_level_ + values_.rows() - 1 > grid_.time_points || values_.rows() == 0)
      throw std::invalid_argument("GridSurface: time levels out of range");
  }

  const GridSpec& grid() const { return grid_; }
  const Matrix& values() const { return values_; }
  Scalar upper_ghost() const { return upper_ghost_; }
  int first_level() const { return first_level_; }
  int last_level() const { return first_level_ + static_cast<int>(values_.rows()) - 1; }

  /// Ghost-aware node lookup at time level n.
  Scalar node(int n, int i) const {
    if (i < 0) return Scalar(0);
    if (i >= grid_.space_points) return upper_ghost_;
    return values_(n - first_level_, i);
  }

  auto level(int n) const { return values_.row(n - first_level_); }

  /// Nearest stored time level to calendar time t.
  int level_for_time(double t) const {
    const double u = (grid_.horizon - t) / grid_.dt();
    const int n = static_cast<int>(std::lround(u));
    return std::clamp(n, first_level_, last_level());
  }

  /// Linear interpolation in x on level n; ghosts beyond the grid.
  Scalar at_level(int n, double x) const {
    const double l = grid_.half_width;
    if (x >= l) return upper_ghost_;
    if (x < -l) return Scalar(0);
    const double p = (x + l) / grid_.dx();
    const int i = std::min(static_cast<int>(std::floor(p)), grid_.space_points - 1);
    const double w = p - i;
    return (1 - w) * node(n, i) + w * node(n, i + 1);
  }

  /// Bilinear lookup at calendar time t; times outside the stored levels use
  /// the nearest level.
  Scalar at(double t, double x) const {
    double u = (grid_.horizon - t) / grid_.dt();
    u = std::clamp(u, double(first_level_), double(last_level()));
    const int n0 = std::min(static_cast<int>(std::floor(u)), last_level());
    const double w = u - n0;
    if (w <= 0.0 || n0 == last_level()) return at_level(n0, x);
    return (1 - w) * at_level(n0, x) + w * at_level(n0 + 1, x);
  }

  /// Number of solved values pulled back into range by rounding-level clamping.
  std::size_t clamped_values = 0;

 private:
  GridSpec grid_;
  Scalar upper_ghost_;
  int first_level_;
  Matrix values_;
};

using PriceSurface = GridSurface<double>;

}  // namespace carbon
