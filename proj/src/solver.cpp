#include "chemo/solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "chemo/errors.hpp"

namespace chemo {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::Constant:
      return "constant";
    case Preset::ConstantPerturbed:
      return "constant-perturbed";
    case Preset::Gaussian:
      return "gaussian";
    case Preset::TwoBumps:
      return "two-bumps";
  }
  return "?";
}

Preset parse_preset(std::string_view text) {
  for (Preset p : {Preset::Constant, Preset::ConstantPerturbed, Preset::Gaussian, Preset::TwoBumps}) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError(fmt::format("unknown preset '{}' (constant, constant-perturbed, gaussian, two-bumps)", text));
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed:
      return "Completed";
    case Termination::GrowthSuspected:
      return "GrowthSuspected";
    case Termination::StepUnderflow:
      return "StepUnderflow";
    case Termination::NumericalFailure:
      return "NumericalFailure";
  }
  return "?";
}

void SimConfig::validate() const {
  try {
    model.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  (void)grid();
  if (!(time.t_end > 0)) throw ConfigError("time.t_end must be positive");
  if (!(time.dt_max > 0)) throw ConfigError("time.dt_max must be positive");
  if (!(time.safety > 0 && time.safety <= 1)) throw ConfigError("time.safety must lie in (0, 1]");
  if (!(time.dt_min >= 0)) throw ConfigError("time.dt_min must be nonnegative");
  if (!(init.mass > 0)) throw ConfigError("init.mass must be positive (nontrivial initial data)");
  if (!(init.amplitude >= 0) || !std::isfinite(init.amplitude)) throw ConfigError("init.amplitude must be >= 0");
  if (init.preset == Preset::ConstantPerturbed && !(init.amplitude < 1)) {
    throw ConfigError("constant-perturbed needs amplitude < 1 to keep u0 >= 0");
  }
  if (output.stride < 1) throw ConfigError("output.stride must be >= 1");
  if (!(output.growth_threshold > 1)) throw ConfigError("output.growth_threshold must exceed 1");
}

namespace {

/// Shape function with max |shape| = 1 (or identically 0).
Field initial_shape(const SimConfig& config, const Grid& grid) {
  Field shape(grid);
  const int nx = grid.nx();
  const int ny = grid.ny();
  const bool two_d = grid.dims() == 2;
  const double lx = grid.extent(0);
  const double ly = grid.extent(1);
  const double sigma = 0.1 * (two_d ? std::min(lx, ly) : lx);
  auto bump = [&](double cx, double cy, double x, double y) {
    const double dx = x - cx;
    const double dy = two_d ? y - cy : 0.0;
    return std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
  };

  switch (config.init.preset) {
    case Preset::Constant:
      break;
    case Preset::Gaussian:
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          shape(i, j) = bump(lx / 2, ly / 2, grid.center(0, i), two_d ? grid.center(1, j) : 0.0);
      break;
    case Preset::TwoBumps:
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const double x = grid.center(0, i);
          const double y = two_d ? grid.center(1, j) : 0.0;
          shape(i, j) = bump(lx / 4, ly / 2, x, y) + bump(3 * lx / 4, ly / 2, x, y);
        }
      break;
    case Preset::ConstantPerturbed: {
      // Three low cosine modes (Neumann eigenfunctions) with seeded weights in [-1, 1).
      std::mt19937_64 rng(config.init.seed);
      std::array<double, 3> weight{};
      for (double& w : weight) w = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      const double pi = std::acos(-1.0);
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const double cx = std::cos(pi * grid.center(0, i) / lx);
          if (two_d) {
            const double cy = std::cos(pi * grid.center(1, j) / ly);
            shape(i, j) = weight[0] * cx + weight[1] * cy + weight[2] * cx * cy;
          } else {
            const double c2 = std::cos(2 * pi * grid.center(0, i) / lx);
            const double c3 = std::cos(3 * pi * grid.center(0, i) / lx);
            shape(i, j) = weight[0] * cx + weight[1] * c2 + weight[2] * c3;
          }
        }
      break;
    }
  }
  const double peak = sup_norm(shape);
  if (peak > 0) {
    for (double& x : shape.values) x /= peak;
  }
  return shape;
}

/// Scratch buffers reused across steps of one run.
class Stepper {
 public:
  Stepper(const Grid& grid, const Model& model)
      : grid_(grid),
        model_(model),
        f_(grid.cells()),
        ratio_(grid.cells()),
        flux_x_(grid.cells()),
        flux_y_(grid.cells()),
        adv_x_(grid.cells()),
        adv_y_(grid.cells()) {}

  double stable_dt(const Field& u, const Field& v, double safety, double dt_max) {
    eval_sensitivity(u);
    double max_rate = 0;  // max |f(u_up) ∂v/∂n| / h
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    const double hx = grid_.spacing(0);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const double g = (v(i + 1, j) - v(i, j)) / hx;
        const double f = g > 0 ? f_[grid_.index(i, j)] : f_[grid_.index(i + 1, j)];
        max_rate = std::max(max_rate, std::abs(f * g) / hx);
      }
    }
    if (grid_.dims() == 2) {
      const double hy = grid_.spacing(1);
      for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const double g = (v(i, j + 1) - v(i, j)) / hy;
          const double f = g > 0 ? f_[grid_.index(i, j)] : f_[grid_.index(i, j + 1)];
          max_rate = std::max(max_rate, std::abs(f * g) / hy);
        }
      }
    }
    double dt = grid_.diffusion_dt_limit();
    if (max_rate > 0) dt = std::min(dt, 1.0 / max_rate);
    return std::min(safety * dt, dt_max);
  }

  /// Conservative density update using the signal v.
  Field advance_density(const Field& u, const Field& v, double dt) {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    const bool two_d = grid_.dims() == 2;
    const double hx = grid_.spacing(0);
    const double hy = two_d ? grid_.spacing(1) : 1.0;
    eval_sensitivity(u);

    // Face (i+1/2, j) is stored at index(i, j); face (i, j+1/2) likewise.
    std::fill(ratio_.begin(), ratio_.end(), 0.0);  // outflow rate per cell
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const std::size_t k = grid_.index(i, j);
        const std::size_t r = grid_.index(i + 1, j);
        const double g = (v.values[r] - v.values[k]) / hx;
        const std::size_t up = g > 0 ? k : r;
        adv_x_[k] = f_[up] * g;
        flux_x_[k] = -(u.values[r] - u.values[k]) / hx;
        ratio_[up] += std::abs(adv_x_[k]) / hx;
      }
    }
    if (two_d) {
      for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const std::size_t k = grid_.index(i, j);
          const std::size_t t = grid_.index(i, j + 1);
          const double g = (v.values[t] - v.values[k]) / hy;
          const std::size_t up = g > 0 ? k : t;
          adv_y_[k] = f_[up] * g;
          flux_y_[k] = -(u.values[t] - u.values[k]) / hy;
          ratio_[up] += std::abs(adv_y_[k]) / hy;
        }
      }
    }

    // Positivity limiter: a cell may lose through advection at most what the
    // explicit diffusion step leaves it. Inactive (ratio 1) in smooth regimes.
    double diffusion_share = 2.0 / (hx * hx);
    if (two_d) diffusion_share += 2.0 / (hy * hy);
    const double keep = std::max(0.0, 1.0 - dt * diffusion_share);
    for (std::size_t c = 0; c < ratio_.size(); ++c) {
      const double outflow = dt * ratio_[c];
      const double budget = u.values[c] * keep;
      ratio_[c] = outflow > budget ? budget / outflow : 1.0;
    }

    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const std::size_t k = grid_.index(i, j);
        const std::size_t up = adv_x_[k] > 0 ? k : grid_.index(i + 1, j);
        flux_x_[k] += ratio_[up] * adv_x_[k];
      }
    }
    if (two_d) {
      for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const std::size_t k = grid_.index(i, j);
          const std::size_t up = adv_y_[k] > 0 ? k : grid_.index(i, j + 1);
          flux_y_[k] += ratio_[up] * adv_y_[k];
        }
      }
    }

    Field out(grid_);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = grid_.index(i, j);
        const double east = i + 1 < nx ? flux_x_[k] : 0.0;
        const double west = i > 0 ? flux_x_[grid_.index(i - 1, j)] : 0.0;
        double div = (east - west) / hx;
        if (two_d) {
          const double north = j + 1 < ny ? flux_y_[k] : 0.0;
          const double south = j > 0 ? flux_y_[grid_.index(i, j - 1)] : 0.0;
          div += (north - south) / hy;
        }
        out.values[k] = u.values[k] - dt * div;
      }
    }
    return out;
  }

  /// Neumann Laplacian Δ_h with mirrored ghost cells.
  void laplacian(const std::vector<double>& x, std::vector<double>& out) const {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    const double ihx2 = 1.0 / (grid_.spacing(0) * grid_.spacing(0));
    const double ihy2 = grid_.dims() == 2 ? 1.0 / (grid_.spacing(1) * grid_.spacing(1)) : 0.0;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = grid_.index(i, j);
        const double c = x[k];
        double s = 0;
        if (i > 0) s += (x[k - 1] - c) * ihx2;
        if (i + 1 < nx) s += (x[k + 1] - c) * ihx2;
        if (grid_.dims() == 2) {
          if (j > 0) s += (x[k - static_cast<std::size_t>(nx)] - c) * ihy2;
          if (j + 1 < ny) s += (x[k + static_cast<std::size_t>(nx)] - c) * ihy2;
        }
        out[k] = s;
      }
    }
  }

  Field advance_signal(const Field& u, const Field& v, double dt) {
    std::vector<double>& lap = flux_x_;
    laplacian(v.values, lap);
    const double decay = std::exp(-dt);
    const double source_weight = -std::expm1(-dt);
    Field out(grid_);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
      out.values[k] = decay * (v.values[k] + dt * lap[k]) + source_weight * model_.production(u.values[k]);
    }
    return out;
  }

  EllipticSolution solve(const Field& u, double tol, const Field* guess, int max_iterations) {
    const std::size_t n = grid_.cells();
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = model_.production(u.values[k]);
    EllipticSolution sol{Field(grid_), 0, 0.0};
    std::vector<double>& x = sol.v.values;
    if (guess != nullptr && guess->grid == grid_) x = guess->values;

    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0) {
      std::fill(x.begin(), x.end(), 0.0);
      return sol;
    }
    if (max_iterations <= 0) max_iterations = static_cast<int>(10 * n + 100);

    std::vector<double> r(n), p(n), ap(n);
    apply_operator(x, ap);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
    p = r;
    double rr = dot(r, r);
    int it = 0;
    while (std::sqrt(rr) > tol * b_norm) {
      if (it == max_iterations) {
        throw ConvergenceFailure(fmt::format("CG did not reach relative residual {} in {} iterations (at {})", tol,
                                             max_iterations, std::sqrt(rr) / b_norm));
      }
      apply_operator(p, ap);
      const double step = rr / dot(p, ap);
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += step * p[k];
        r[k] -= step * ap[k];
      }
      const double rr_next = dot(r, r);
      const double beta = rr_next / rr;
      rr = rr_next;
      for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
      ++it;
    }
    // The exact discrete solution is >= 0 (M-matrix, g >= 0); drop iteration-error negatives.
    for (double& value : x) value = std::max(value, 0.0);
    sol.iterations = it;
    sol.relative_residual = std::sqrt(rr) / b_norm;
    return sol;
  }

 private:
  void eval_sensitivity(const Field& u) {
    for (std::size_t k = 0; k < u.values.size(); ++k) f_[k] = model_.sensitivity(std::max(u.values[k], 0.0));
  }

  void apply_operator(const std::vector<double>& x, std::vector<double>& out) const {
    laplacian(x, out);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = x[k] - out[k];
  }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  }

  Grid grid_;
  const Model& model_;
  std::vector<double> f_;
  std::vector<double> ratio_;
  std::vector<double> flux_x_;
  std::vector<double> flux_y_;
  std::vector<double> adv_x_;
  std::vector<double> adv_y_;
};

void require_stable(const Grid& grid, double dt) {
  if (!(dt > 0)) throw DomainError(fmt::format("time step {} must be positive", dt));
  if (dt > grid.diffusion_dt_limit() * (1 + 1e-12)) {
    throw DomainError(fmt::format("time step {} exceeds the explicit diffusion limit {}", dt, grid.diffusion_dt_limit()));
  }
}

void check_field(const Field& f, std::string_view name, double t) {
  const double scale = std::max(1.0, sup_norm(f));
  for (double x : f.values) {
    if (!std::isfinite(x)) throw NumericalFailure(fmt::format("non-finite {} at t = {}", name, t));
    if (x < -1e-12 * scale) throw NumericalFailure(fmt::format("{} = {} < 0 at t = {}", name, x, t));
  }
}

}  // namespace

SimState init_state(const SimConfig& config, const Model& model) {
  config.validate();
  const Grid grid = config.grid();
  const Field shape = initial_shape(config, grid);
  Field u(grid);
  for (std::size_t k = 0; k < u.values.size(); ++k) u.values[k] = 1.0 + config.init.amplitude * shape.values[k];
  const double raw_mass = mass(u);
  if (!(raw_mass > 0)) throw ConfigError("initial density has zero mass");
  const double scale = config.init.mass / raw_mass;
  for (double& x : u.values) x = std::max(0.0, x * scale);

  Field v(grid);
  if (config.mode == Mode::ParabolicElliptic || config.init.v0 == SignalInit::Elliptic) {
    v = solve_elliptic(u, model).v;
  }
  return SimState(std::move(u), std::move(v), config.mode);
}

double adaptive_dt(const SimState& state, const Model& model, double safety, double dt_max) {
  Stepper stepper(state.u.grid, model);
  return stepper.stable_dt(state.u, state.v, safety, dt_max);
}

SimState step_pp(const SimState& state, const Model& model, double dt) {
  if (state.mode != Mode::ParabolicParabolic) throw DomainError("step_pp on a parabolic-elliptic state");
  require_stable(state.u.grid, dt);
  Stepper stepper(state.u.grid, model);
  SimState next(stepper.advance_density(state.u, state.v, dt), stepper.advance_signal(state.u, state.v, dt), state.mode);
  next.t = state.t + dt;
  next.dt = dt;
  next.steps = state.steps + 1;
  check_field(next.u, "u", next.t);
  check_field(next.v, "v", next.t);
  return next;
}

EllipticSolution solve_elliptic(const Field& u, const Model& model, double tol, const Field* initial_guess,
                                int max_iterations) {
  if (!u.all_finite()) throw DomainError("solve_elliptic: non-finite density");
  if (u.min() < 0) throw DomainError("solve_elliptic: negative density");
  Stepper stepper(u.grid, model);
  return stepper.solve(u, tol, initial_guess, max_iterations);
}

SimState step_pe(const SimState& state, const Model& model, double dt, double tol) {
  if (state.mode != Mode::ParabolicElliptic) throw DomainError("step_pe on a parabolic-parabolic state");
  require_stable(state.u.grid, dt);
  Stepper stepper(state.u.grid, model);
  Field v = stepper.solve(state.u, tol, &state.v, 0).v;
  Field u = stepper.advance_density(state.u, v, dt);
  SimState next(std::move(u), std::move(v), state.mode);
  next.t = state.t + dt;
  next.dt = dt;
  next.steps = state.steps + 1;
  check_field(next.u, "u", next.t);
  return next;
}

SimResult run(const SimConfig& config) {
  const Model model(config.model);
  return run(config, model);
}

SimResult run(const SimConfig& config, const Model& model) {
  return run(config, model, diagnostic_exponents(config.model));
}

SimResult run(const SimConfig& config, const Model& model, const DiagnosticExponents& exps) {
  const auto start = std::chrono::steady_clock::now();
  SimResult result(init_state(config, model));
  result.exponents = exps;
  SimState& state = result.final_state;
  const Grid grid = state.u.grid;
  Stepper stepper(grid, model);
  const bool elliptic = config.mode == Mode::ParabolicElliptic;

  result.initial_mass = mass(state.u);
  const double growth_level = config.output.growth_threshold * (sup_norm(state.u) + sup_norm(state.v));
  result.records.push_back(make_record(state, exps));

  const double t_end = config.time.t_end;
  while (state.t < t_end) {
    try {
      const double dt_stable = stepper.stable_dt(state.u, state.v, config.time.safety, config.time.dt_max);
      if (dt_stable < config.time.dt_min) {
        result.termination = Termination::StepUnderflow;
        result.message = fmt::format("dt = {} < dt_min = {} at t = {}", dt_stable, config.time.dt_min, state.t);
        break;
      }
      const bool last = dt_stable >= t_end - state.t;
      const double dt = last ? t_end - state.t : dt_stable;
      Field u_next = stepper.advance_density(state.u, state.v, dt);
      if (elliptic) {
        state.v = stepper.solve(u_next, 1e-10, &state.v, 0).v;
      } else {
        state.v = stepper.advance_signal(state.u, state.v, dt);
      }
      state.u = std::move(u_next);
      state.t = last ? t_end : state.t + dt;
      state.dt = dt;
      ++state.steps;
      check_field(state.u, "u", state.t);
      check_field(state.v, "v", state.t);
    } catch (const NumericalFailure& e) {
      result.termination = Termination::NumericalFailure;
      result.message = e.what();
      break;
    } catch (const ConvergenceFailure& e) {
      result.termination = Termination::NumericalFailure;
      result.message = e.what();
      break;
    }
    if (state.steps % static_cast<std::size_t>(config.output.stride) == 0) {
      result.records.push_back(make_record(state, exps));
    }
    if (sup_norm(state.u) + sup_norm(state.v) > growth_level) {
      result.termination = Termination::GrowthSuspected;
      result.message = fmt::format("sup_u + sup_v exceeded {} x initial at t = {}", config.output.growth_threshold, state.t);
      break;
    }
  }
  if (result.termination != Termination::NumericalFailure && result.records.back().t < state.t) {
    result.records.push_back(make_record(state, exps));
  }

  result.steps = state.steps;
  ClassifyThresholds thresholds;
  thresholds.growth_level = growth_level;
  thresholds.step_underflow = result.termination == Termination::StepUnderflow;
  result.run_class = result.termination == Termination::NumericalFailure ? RunClass::Inconclusive
                                                                          : classify_run(result.records, thresholds);
  if (result.termination == Termination::GrowthSuspected) result.run_class = RunClass::GrowthSuspected;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace chemo
