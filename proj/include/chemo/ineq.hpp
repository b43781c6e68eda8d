#pragma once

#include <utility>

namespace chemo {

/// Smallest (up to 1e-12 relative) c with a^d1 b^d2 <= eps (a + b) + c for all a, b >= 0.
/// Requires d1, d2 > 0, d1 + d2 < 1, eps > 0; d1 + d2 >= 1 throws DomainError (supremum diverges).
double young_product_constant(double d1, double d2, double epsilon);

/// (d5, d) with a^d3 + b^d4 >= 2^-d5 (a + b)^d5 − d for all a, b >= 0; d5 = min(d3, d4).
std::pair<double, double> power_sum_lower(double d3, double d4);

/// max(y0, (c19/c18)^(1/kappa)): the bound on y(t) from y' + c18 y^kappa <= c19.
double ode_comparison_bound(double y0, double c18, double c19, double kappa);

}  // namespace chemo
