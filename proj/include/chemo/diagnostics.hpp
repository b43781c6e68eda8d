/**
 * @file diagnostics.hpp
 * @brief Norms and functionals monitored along a run, and run classification.
 *
 * All integrals are midpoint sums weighted by Grid::cell_volume(). Gradients
 * are centred differences; boundary cells use the mirrored ghost value, which
 * matches the zero-flux closure of the solver.
 */
#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "chemo/model.hpp"
#include "chemo/state.hpp"

namespace chemo {

struct DiagnosticRecord {
  double t = 0;
  double mass = 0;
  double sup_u = 0;
  double sup_v = 0;
  double lp_u = 0;
  double grad_v_2q = 0;
  double y = 0;
  double w1n_v = 0;
};

/// Exponents used for lp_u, grad_v_2q, y and w1n_v.
struct DiagnosticExponents {
  double p = 2;
  double q = 2;
  int n = 2;
  bool from_certificate = false;
};

/// (p, q) of the parabolic–parabolic certificate when (n, α, l) lies in the
/// theorem region, otherwise p = q = 2.
DiagnosticExponents diagnostic_exponents(const ModelParams& params);

double mass(const Field& u);
double sup_norm(const Field& field);
/// (Σ |x|^p dV)^(1/p); p < 1 throws DomainError.
double lp_norm(const Field& field, double p);
/// |∇v| per cell.
std::vector<double> gradient_magnitude(const Field& v);
/// L^(2q) norm of |∇v|; q < 1 throws DomainError.
double grad_norm_2q(const Field& v, double q);
/// y = 1/(p(p−1)) ∫(u+1)^p + 1/q ∫|∇v|^(2q); p <= 1 throws DomainError.
double functional_y(const SimState& state, double p, double q);
/// (‖v‖_n^n + ‖∇v‖_n^n)^(1/n).
double w1n_norm(const Field& v, int n);

DiagnosticRecord make_record(const SimState& state, const DiagnosticExponents& exps);

enum class RunClass { Bounded, GrowthSuspected, Inconclusive };

std::string_view to_string(RunClass c);

struct ClassifyThresholds {
  double plateau_factor = 2.0;
  /// Absolute level of sup_u + sup_v counted as a growth crossing.
  double growth_level = std::numeric_limits<double>::infinity();
  bool step_underflow = false;
};

/// GrowthSuspected if sup_u + sup_v reached growth_level or the step collapsed;
/// Bounded if over the trailing half of the run sup_u and sup_v stay within
/// plateau_factor times their values at the first record with t >= 0.1 t_end;
/// Inconclusive otherwise. Requires a nonempty timeseries.
RunClass classify_run(std::span<const DiagnosticRecord> series, const ClassifyThresholds& thresholds = {});

/// max y over the trailing half <= factor · max y over the first half.
bool y_plateau(std::span<const DiagnosticRecord> series, double factor = 1.1);

inline constexpr std::string_view kDiagnosticsCsvHeader = "t,mass,sup_u,sup_v,lp_u,grad_v_2q,y,w1n_v";

/// Header line plus one row per record, 17 significant digits.
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRecord> series);

}  // namespace chemo
