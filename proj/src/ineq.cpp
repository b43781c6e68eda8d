#include "chemo/ineq.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

double young_product_constant(double d1, double d2, double epsilon) {
  if (!(d1 > 0) || !(d2 > 0)) throw DomainError(fmt::format("exponents d1 = {}, d2 = {} must be positive", d1, d2));
  if (!(epsilon > 0)) throw DomainError(fmt::format("epsilon = {} must be positive", epsilon));
  const double s = d1 + d2;
  if (!(s < 1)) throw DomainError(fmt::format("d1 + d2 = {} >= 1: the supremum diverges", s));
  // Stationary point: a = d1 P / eps, b = d2 P / eps with P = a^d1 b^d2, so
  // P^(1-s) = d1^d1 d2^d2 eps^-s and the supremum is (1 - s) P.
  const double log_p = (d1 * std::log(d1) + d2 * std::log(d2) - s * std::log(epsilon)) / (1 - s);
  const double c = (1 - s) * std::exp(log_p);
  return c * (1 + 1e-12);
}

std::pair<double, double> power_sum_lower(double d3, double d4) {
  if (!(d3 > 0) || !(d4 > 0)) throw DomainError(fmt::format("exponents d3 = {}, d4 = {} must be positive", d3, d4));
  const double lo = std::min(d3, d4);
  const double hi = std::max(d3, d4);
  if (lo == hi) return {lo, 0.0};
  // 2^-lo (a+b)^lo <= max(a,b)^lo; the gap is at most sup_t (t^lo - t^hi), attained at (lo/hi)^(1/(hi-lo)).
  const double t = std::pow(lo / hi, 1 / (hi - lo));
  const double gap = std::pow(t, lo) - std::pow(t, hi);
  return {lo, std::max(0.0, gap) * (1 + 1e-12)};
}

double ode_comparison_bound(double y0, double c18, double c19, double kappa) {
  if (!(c18 > 0)) throw DomainError(fmt::format("c18 = {} must be positive", c18));
  if (!(kappa > 0)) throw DomainError(fmt::format("kappa = {} must be positive", kappa));
  if (c19 < 0 || y0 < 0) throw DomainError("y0 and c19 must be nonnegative");
  return std::max(y0, std::pow(c19 / c18, 1 / kappa));
}

}  // namespace chemo
