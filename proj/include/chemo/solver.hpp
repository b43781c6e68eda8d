/**
 * @file solver.hpp
 * @brief Finite-volume integrator for the chemotaxis system on 1D/2D boxes.
 *
 * Density: conservative update with central diffusive fluxes and first-order
 * upwind chemotactic fluxes f(u_up) ∂v/∂n; boundary faces carry zero flux.
 * Signal (parabolic–parabolic): explicit diffusion, −v integrated exactly,
 *   v⁺ = e^{−dt}(v + dt Δ_h v) + (1 − e^{−dt}) g(u).
 * Signal (parabolic–elliptic): (−Δ_h + I) v = g(u) by matrix-free CG.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chemo/diagnostics.hpp"
#include "chemo/grid.hpp"
#include "chemo/model.hpp"
#include "chemo/state.hpp"

namespace chemo {

enum class Preset { Constant, ConstantPerturbed, Gaussian, TwoBumps };
enum class SignalInit { Zero, Elliptic };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view text);

struct SimConfig {
  ModelParams model;
  Mode mode = Mode::ParabolicParabolic;

  int dims = 2;
  std::array<double, 2> extent{1.0, 1.0};
  int resolution = 32;

  struct Time {
    double t_end = 1;
    double dt_max = 1e-2;
    double safety = 0.4;
    double dt_min = 1e-10;
  } time;

  struct Init {
    Preset preset = Preset::Gaussian;
    double mass = 1;
    /// u0 ∝ 1 + amplitude · shape, max |shape| = 1; shape is 0 for Constant.
    double amplitude = 1;
    std::uint64_t seed = 0;
    SignalInit v0 = SignalInit::Zero;
  } init;

  struct Output {
    std::string path;
    int stride = 100;
    /// Multiple of the initial sup_u + sup_v that ends a run as GrowthSuspected.
    double growth_threshold = 1e6;
  } output;

  Grid grid() const { return Grid(dims, extent, resolution); }
  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

/// u0 with the requested mass (up to roundoff) and v0 per init.v0; the
/// parabolic–elliptic mode always starts from the elliptic v.
SimState init_state(const SimConfig& config, const Model& model);

/// safety · min(diffusion limit, 1 / max_faces |f(u_up) ∂v/∂n| / h), capped by dt_max.
double adaptive_dt(const SimState& state, const Model& model, double safety, double dt_max);

/// Explicit step of both equations. Requires dt <= Grid::diffusion_dt_limit().
SimState step_pp(const SimState& state, const Model& model, double dt);

struct EllipticSolution {
  Field v;
  int iterations = 0;
  double relative_residual = 0;
};

/// Solves (−Δ_h + I) v = g(u) with homogeneous Neumann closure; residual
/// 2-norm <= tol · ‖g(u)‖. `initial_guess` warm-starts CG. Throws
/// ConvergenceFailure after max_iterations (0 selects 10 · cells + 100).
EllipticSolution solve_elliptic(const Field& u, const Model& model, double tol = 1e-10,
                                const Field* initial_guess = nullptr, int max_iterations = 0);

/// v := solve_elliptic(u), then the density update of step_pp with that v.
SimState step_pe(const SimState& state, const Model& model, double dt, double tol = 1e-10);

enum class Termination { Completed, GrowthSuspected, StepUnderflow, NumericalFailure };

std::string_view to_string(Termination t);

struct SimResult {
  SimState final_state;
  std::vector<DiagnosticRecord> records;
  Termination termination = Termination::Completed;
  std::string message;
  std::size_t steps = 0;
  double wall_time = 0;
  double initial_mass = 0;
  DiagnosticExponents exponents;
  RunClass run_class = RunClass::Inconclusive;

  explicit SimResult(SimState initial) : final_state(std::move(initial)) {}
};

/// Integrates to t_end, stopping early on growth (sup_u + sup_v above
/// growth_threshold × initial value), step collapse (dt < dt_min) or a
/// numerical failure. Records diagnostics every output.stride steps and at the end.
SimResult run(const SimConfig& config);
SimResult run(const SimConfig& config, const Model& model);
SimResult run(const SimConfig& config, const Model& model, const DiagnosticExponents& exps);

}  // namespace chemo
