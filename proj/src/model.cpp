#include "chemo/model.hpp"

#include <fmt/format.h>

#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

void ModelParams::validate() const {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  if (!(alpha > 0)) throw DomainError(fmt::format("alpha = {} must be positive", alpha));
  if (!(l > 0)) throw DomainError(fmt::format("l = {} must be positive", l));
  if (!(K > 0)) throw DomainError(fmt::format("K = {} must be positive", K));
  if (!(K0 > 0)) throw DomainError(fmt::format("K0 = {} must be positive", K0));
}

double eval_sensitivity(double s, const ModelParams& params) {
  if (!(s >= 0)) throw DomainError(fmt::format("sensitivity evaluated at s = {} < 0", s));
  if (s == 0) return 0.0;
  if (params.alpha == 1) return params.K * s;
  return params.K * std::pow(s, params.alpha);
}

double eval_production(double s, const ModelParams& params) {
  if (!(s >= 0)) throw DomainError(fmt::format("production evaluated at s = {} < 0", s));
  if (s == 0) return 0.0;
  if (params.l == 1) return params.K0 * s;
  return params.K0 * std::pow(s, params.l);
}

Model::Model(ModelParams params) : params_(params) { params_.validate(); }

Model::Model(ModelParams params, Nonlinearities custom) : params_(params), custom_(std::move(custom)) {
  params_.validate();
  validate_nonlinearities(custom_, params_);
}

double Model::sensitivity(double s) const {
  if (custom_.sensitivity) return custom_.sensitivity(s);
  return eval_sensitivity(s, params_);
}

double Model::production(double s) const {
  if (custom_.production) return custom_.production(s);
  return eval_production(s, params_);
}

void validate_nonlinearities(const Nonlinearities& custom, const ModelParams& params, int samples,
                             double s_max) {
  if (custom.sensitivity && custom.sensitivity(0.0) != 0.0) {
    throw DomainError("custom sensitivity must satisfy f(0) = 0");
  }
  // Log-spaced samples in [1e-6, s_max] plus s = 0.
  const double lo = std::log(1e-6);
  const double hi = std::log(s_max);
  for (int i = 0; i <= samples; ++i) {
    const double s = i == 0 ? 0.0 : std::exp(lo + (hi - lo) * (i - 1) / std::max(1, samples - 1));
    if (custom.sensitivity) {
      const double f = custom.sensitivity(s);
      const double bound = eval_sensitivity(s, params);
      if (!std::isfinite(f) || f > bound * (1 + 1e-12)) {
        throw DomainError(fmt::format("custom sensitivity f({}) = {} exceeds K s^alpha = {}", s, f, bound));
      }
    }
    if (custom.production) {
      const double g = custom.production(s);
      const double bound = eval_production(s, params);
      if (!std::isfinite(g) || g < 0 || g > bound * (1 + 1e-12)) {
        throw DomainError(fmt::format("custom production g({}) = {} outside [0, K0 s^l = {}]", s, g, bound));
      }
    }
  }
}

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::TheoremRegion:
      return "TheoremRegion";
    case RegionTag::PriorResultRegion:
      return "PriorResultRegion";
    case RegionTag::OutsideKnownRegion:
      return "OutsideKnownRegion";
  }
  return "?";
}

Rational alpha_lower(int n) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  return ratio(2, n);
}

Rational alpha_upper_pp(int n, const Rational& l) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  return Rational(1) + Rational(1, n) - l / 2;
}

Rational alpha_upper_pe(int n, const Rational& l) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  return Rational(1) + ratio(2, n) - l;
}

namespace {

void check_inputs(int n, const Rational& alpha, const Rational& l) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  if (alpha <= 0) throw DomainError(fmt::format("alpha = {} must be positive", to_string(alpha)));
  if (l <= 0) throw DomainError(fmt::format("l = {} must be positive", to_string(l)));
}

RegionVerdict classify(int n, const Rational& alpha, const Rational& l, const Rational& l_max,
                       std::string_view l_label, const Rational& upper, std::string_view upper_label) {
  const Rational lower = alpha_lower(n);
  if (l >= l_max) {
    return {RegionTag::OutsideKnownRegion,
            fmt::format("l = {} is not below {} = {}", to_decimal(l), l_label, to_string(l_max))};
  }
  if (alpha < lower) {
    return {RegionTag::PriorResultRegion,
            fmt::format("alpha = {} < 2/n = {}", to_decimal(alpha), to_string(lower))};
  }
  if (alpha < upper) {
    return {RegionTag::TheoremRegion, fmt::format("2/n = {} <= alpha = {} < {} = {}", to_string(lower),
                                                  to_decimal(alpha), upper_label, to_decimal(upper))};
  }
  return {RegionTag::OutsideKnownRegion,
          fmt::format("alpha = {} is not below {} = {}", to_decimal(alpha), upper_label, to_decimal(upper))};
}

}  // namespace

RegionVerdict classify_pp(int n, const Rational& alpha, const Rational& l) {
  check_inputs(n, alpha, l);
  return classify(n, alpha, l, ratio(2, n), "2/n", alpha_upper_pp(n, l), "1+1/n-l/2");
}

RegionVerdict classify_pp(int n, double alpha, double l) {
  return classify_pp(n, to_rational(alpha), to_rational(l));
}

RegionVerdict classify_pe(int n, const Rational& alpha, const Rational& l) {
  check_inputs(n, alpha, l);
  return classify(n, alpha, l, Rational(1), "1", alpha_upper_pe(n, l), "1+2/n-l");
}

RegionVerdict classify_pe(int n, double alpha, double l) {
  return classify_pe(n, to_rational(alpha), to_rational(l));
}

}  // namespace chemo
