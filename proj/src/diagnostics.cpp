#include "chemo/diagnostics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "chemo/certificate.hpp"
#include "chemo/errors.hpp"

namespace chemo {

std::string_view to_string(Mode mode) {
  return mode == Mode::ParabolicParabolic ? "pp" : "pe";
}

DiagnosticExponents diagnostic_exponents(const ModelParams& params) {
  DiagnosticExponents exps;
  exps.n = params.n;
  const Rational alpha = to_rational(params.alpha);
  const Rational l = to_rational(params.l);
  if (classify_pp(params.n, alpha, l).tag != RegionTag::TheoremRegion) return exps;
  try {
    const Certificate cert = build_certificate(params.n, alpha, l);
    exps.p = to_double(cert.p);
    exps.q = to_double(cert.q);
    exps.from_certificate = true;
  } catch (const Error&) {
    // Budget exhausted very close to the boundary; keep the defaults.
  }
  return exps;
}

double mass(const Field& u) {
  double sum = 0;
  for (double x : u.values) sum += x;
  return sum * u.grid.cell_volume();
}

double sup_norm(const Field& field) {
  double m = 0;
  for (double x : field.values) m = std::max(m, std::abs(x));
  return m;
}

double lp_norm(const Field& field, double p) {
  if (!(p >= 1)) throw DomainError(fmt::format("L^p norm needs p >= 1, got {}", p));
  double sum = 0;
  for (double x : field.values) sum += std::pow(std::abs(x), p);
  return std::pow(sum * field.grid.cell_volume(), 1.0 / p);
}

std::vector<double> gradient_magnitude(const Field& v) {
  const Grid& g = v.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  std::vector<double> out(g.cells());
  const double hx = g.spacing(0);
  const double hy = g.dims() == 2 ? g.spacing(1) : 1.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double right = v(std::min(i + 1, nx - 1), j);
      const double left = v(std::max(i - 1, 0), j);
      const double gx = (right - left) / (2 * hx);
      double gy = 0;
      if (g.dims() == 2) {
        const double up = v(i, std::min(j + 1, ny - 1));
        const double down = v(i, std::max(j - 1, 0));
        gy = (up - down) / (2 * hy);
      }
      out[g.index(i, j)] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

namespace {

double grad_power_integral(const Field& v, double power) {
  double sum = 0;
  for (double m : gradient_magnitude(v)) sum += std::pow(m, power);
  return sum * v.grid.cell_volume();
}

}  // namespace

double grad_norm_2q(const Field& v, double q) {
  if (!(q >= 1)) throw DomainError(fmt::format("gradient norm needs q >= 1, got {}", q));
  return std::pow(grad_power_integral(v, 2 * q), 1.0 / (2 * q));
}

double functional_y(const SimState& state, double p, double q) {
  if (!(p > 1)) throw DomainError(fmt::format("functional y needs p > 1, got {}", p));
  if (!(q >= 1)) throw DomainError(fmt::format("functional y needs q >= 1, got {}", q));
  double sum = 0;
  for (double x : state.u.values) sum += std::pow(x + 1, p);
  const double density_term = sum * state.u.grid.cell_volume() / (p * (p - 1));
  return density_term + grad_power_integral(state.v, 2 * q) / q;
}

double w1n_norm(const Field& v, int n) {
  if (n < 2) throw UnsupportedDimension(fmt::format("W^(1,n) norm needs n >= 2, got {}", n));
  const double value = std::pow(lp_norm(v, n), n);
  const double grad = grad_power_integral(v, n);
  return std::pow(value + grad, 1.0 / n);
}

DiagnosticRecord make_record(const SimState& state, const DiagnosticExponents& exps) {
  DiagnosticRecord r;
  r.t = state.t;
  r.mass = mass(state.u);
  r.sup_u = sup_norm(state.u);
  r.sup_v = sup_norm(state.v);
  r.lp_u = lp_norm(state.u, exps.p);
  r.grad_v_2q = grad_norm_2q(state.v, exps.q);
  r.y = functional_y(state, exps.p, exps.q);
  r.w1n_v = w1n_norm(state.v, exps.n);
  return r;
}

std::string_view to_string(RunClass c) {
  switch (c) {
    case RunClass::Bounded:
      return "Bounded";
    case RunClass::GrowthSuspected:
      return "GrowthSuspected";
    case RunClass::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

RunClass classify_run(std::span<const DiagnosticRecord> series, const ClassifyThresholds& thresholds) {
  if (series.empty()) throw DomainError("classify_run needs a nonempty timeseries");
  if (thresholds.step_underflow) return RunClass::GrowthSuspected;
  for (const auto& r : series) {
    if (r.sup_u + r.sup_v >= thresholds.growth_level) return RunClass::GrowthSuspected;
  }
  if (series.size() < 2) return RunClass::Inconclusive;

  const double t_last = series.back().t;
  const auto mark = std::find_if(series.begin(), series.end(), [&](const auto& r) { return r.t >= 0.1 * t_last; });
  double trail_u = 0;
  double trail_v = 0;
  for (const auto& r : series) {
    if (r.t >= 0.5 * t_last) {
      trail_u = std::max(trail_u, r.sup_u);
      trail_v = std::max(trail_v, r.sup_v);
    }
  }
  const double f = thresholds.plateau_factor;
  if (trail_u <= f * mark->sup_u && trail_v <= f * mark->sup_v) return RunClass::Bounded;
  return RunClass::Inconclusive;
}

bool y_plateau(std::span<const DiagnosticRecord> series, double factor) {
  if (series.empty()) return false;
  const double t_last = series.back().t;
  double first = 0;
  double trailing = 0;
  for (const auto& r : series) {
    if (r.t <= 0.5 * t_last) first = std::max(first, r.y);
    if (r.t >= 0.5 * t_last) trailing = std::max(trailing, r.y);
  }
  return trailing <= factor * first;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRecord> series) {
  out << kDiagnosticsCsvHeader << '\n';
  for (const auto& r : series) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t, r.mass, r.sup_u,
               r.sup_v, r.lp_u, r.grad_v_2q, r.y, r.w1n_v);
  }
}

}  // namespace chemo
