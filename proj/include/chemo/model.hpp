/**
 * @file model.hpp
 * @brief Parameters and nonlinearities of the chemotaxis system
 *
 *   u_t = Δu − ∇·(f(u)∇v),   v_t = Δv − v + g(u)     (or 0 = Δv − v + g(u))
 *
 * with zero-flux boundaries, and the classification of (n, α, l) against the
 * known boundedness regions.
 */
#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "chemo/rational.hpp"

namespace chemo {

struct ModelParams {
  int n = 2;          ///< spatial dimension of the theory, n >= 2
  double alpha = 1;   ///< chemosensitivity exponent
  double l = 0.5;     ///< production exponent
  double K = 1;       ///< sensitivity scale
  double K0 = 1;      ///< production scale

  /// Throws UnsupportedDimension / DomainError when an invariant is broken.
  void validate() const;
};

/// Prototype sensitivity f(s) = K s^α. Exactly 0 at s = 0.
double eval_sensitivity(double s, const ModelParams& params);

/// Prototype production g(s) = K0 s^l.
double eval_production(double s, const ModelParams& params);

/// User-supplied f and g. Empty members fall back to the prototypes.
struct Nonlinearities {
  std::function<double(double)> sensitivity;
  std::function<double(double)> production;
};

/// f and g as used by the solver. Holds the prototypes unless custom
/// nonlinearities are given; custom ones are checked against
/// f(0) = 0, f(s) <= K s^α and 0 <= g(s) <= K0 s^l on a sample grid.
class Model {
 public:
  explicit Model(ModelParams params);
  Model(ModelParams params, Nonlinearities custom);

  double sensitivity(double s) const;
  double production(double s) const;

  const ModelParams& params() const { return params_; }
  bool uses_prototypes() const { return !custom_.sensitivity && !custom_.production; }

 private:
  ModelParams params_;
  Nonlinearities custom_;
};

/// Throws DomainError naming the first sample that violates the growth bounds.
void validate_nonlinearities(const Nonlinearities& custom, const ModelParams& params,
                             int samples = 512, double s_max = 1e4);

enum class RegionTag { TheoremRegion, PriorResultRegion, OutsideKnownRegion };

std::string_view to_string(RegionTag tag);

struct RegionVerdict {
  RegionTag tag;
  std::string detail;
};

/// 2/n, the lower α bound of both regions.
Rational alpha_lower(int n);
/// 1 + 1/n − l/2, strict upper α bound in the parabolic–parabolic case.
Rational alpha_upper_pp(int n, const Rational& l);
/// 1 + 2/n − l, strict upper α bound in the parabolic–elliptic case.
Rational alpha_upper_pe(int n, const Rational& l);

/// Parabolic–parabolic classification:
///   TheoremRegion       l ∈ (0, 2/n) and 2/n <= α < 1 + 1/n − l/2
///   PriorResultRegion   l ∈ (0, 2/n) and α < 2/n
///   OutsideKnownRegion  otherwise
/// Comparisons are exact; boundary points fall outside the strict inequality.
RegionVerdict classify_pp(int n, const Rational& alpha, const Rational& l);
RegionVerdict classify_pp(int n, double alpha, double l);

/// Parabolic–elliptic classification, l ∈ (0, 1) and 2/n <= α < 1 + 2/n − l.
RegionVerdict classify_pe(int n, const Rational& alpha, const Rational& l);
RegionVerdict classify_pe(int n, double alpha, double l);

}  // namespace chemo
