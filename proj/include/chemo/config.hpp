/**
 * @file config.hpp
 * @brief INI-style run and sweep configuration files.
 *
 *   [model]   n, alpha, l, K = 1, K0 = 1, mode = pp | pe
 *   [domain]  dims, extent ("1" or "1,2"), resolution
 *   [time]    t_end, dt_max = 1e-2, safety = 0.4, dt_min = 1e-10
 *   [init]    preset, mass, amplitude = 1, seed = 0, v0 = zero | elliptic
 *   [output]  path = "", stride = 100, growth_threshold = 1e6
 *
 * A sweep file adds a [sweep] section (alpha, l, optional mass, workers = 1)
 * and omits model.alpha / model.l. Unknown sections and keys are errors.
 */
#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "chemo/rational.hpp"
#include "chemo/solver.hpp"

namespace chemo {

/// A run configuration with the exact α and l it was written with.
struct RunConfig {
  SimConfig sim;
  Rational alpha;
  Rational l;
};

struct SweepSpec {
  SimConfig base;
  std::vector<Rational> alphas;
  std::vector<Rational> ls;
  /// Empty: every point uses base.init.mass.
  std::vector<double> masses;
  int workers = 1;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// "a, b, c" or "linspace(a, b, count)" with count >= 1, endpoints included.
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace chemo
