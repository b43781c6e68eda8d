#include "chemo/grid.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

Grid::Grid(int dims, std::array<double, 2> extent, int resolution)
    : dims_(dims), extent_(extent), resolution_(resolution) {
  if (dims != 1 && dims != 2) throw ConfigError(fmt::format("grid dims = {} (supported: 1, 2)", dims));
  if (resolution < 8) throw ConfigError(fmt::format("grid resolution = {} (need >= 8)", resolution));
  if (dims == 1) extent_[1] = 1.0;
  for (int a = 0; a < dims; ++a) {
    if (!(extent_[a] > 0) || !std::isfinite(extent_[a])) {
      throw ConfigError(fmt::format("grid extent along axis {} must be positive, got {}", a, extent_[a]));
    }
  }
}

double Grid::cell_volume() const {
  double v = spacing(0);
  if (dims_ == 2) v *= spacing(1);
  return v;
}

double Grid::measure() const { return dims_ == 2 ? extent_[0] * extent_[1] : extent_[0]; }

double Grid::diffusion_dt_limit() const {
  double sum = 0;
  for (int a = 0; a < dims_; ++a) sum += 1.0 / (spacing(a) * spacing(a));
  return 1.0 / (2.0 * sum);
}

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); });
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }

double Field::max() const { return *std::max_element(values.begin(), values.end()); }

}  // namespace chemo
