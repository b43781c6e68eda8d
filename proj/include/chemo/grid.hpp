#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace chemo {

/// Uniform cell-centred grid on [0, Lx] (1D) or [0, Lx] × [0, Ly] (2D), the
/// same number of cells per side. Cell (i, j) is stored at j * nx + i.
class Grid {
 public:
  Grid(int dims, std::array<double, 2> extent, int resolution);

  int dims() const { return dims_; }
  int resolution() const { return resolution_; }
  int nx() const { return resolution_; }
  int ny() const { return dims_ == 2 ? resolution_ : 1; }
  std::size_t cells() const { return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()); }

  double extent(int axis) const { return extent_[axis]; }
  double spacing(int axis) const { return extent_[axis] / resolution_; }
  /// Cell measure, the single weight used by every integral.
  double cell_volume() const;
  /// |Ω|.
  double measure() const;
  double center(int axis, int index) const { return (index + 0.5) * spacing(axis); }
  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx()) + static_cast<std::size_t>(i);
  }
  /// Largest stable explicit diffusion step, 1 / (2 Σ_axis 1/h²).
  double diffusion_dt_limit() const;

  bool operator==(const Grid&) const = default;

 private:
  int dims_;
  std::array<double, 2> extent_;
  int resolution_;
};

/// Cell-centred samples on a grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  explicit Field(const Grid& g, double fill = 0.0) : grid(g), values(g.cells(), fill) {}

  double& operator()(int i, int j = 0) { return values[grid.index(i, j)]; }
  double operator()(int i, int j = 0) const { return values[grid.index(i, j)]; }
  std::span<const double> view() const { return values; }
  bool all_finite() const;
  double min() const;
  double max() const;
};

}  // namespace chemo
