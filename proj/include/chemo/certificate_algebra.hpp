/**
 * @file certificate_algebra.hpp
 * @brief Closed-form expressions behind the (θ, μ, p, q) exponent selection.
 *
 * Every function is a template over the scalar: `double` for the fast path,
 * `Rational` for exact evaluation. Nothing here checks admissibility beyond
 * refusing zero denominators; that is verify_certificate's job.
 */
#pragma once

#include <array>
#include <string_view>

#include <fmt/format.h>

#include "chemo/errors.hpp"

namespace chemo::algebra {

template <class T>
T checked_div(const T& num, const T& den, std::string_view what) {
  if (den == 0) throw ConstraintViolation(fmt::format("zero denominator in {}", what));
  return T(num / den);
}

/// Hölder conjugate x' = x/(x−1).
template <class T>
T conjugate(const T& x) {
  return checked_div<T>(x, T(x - 1), "conjugate exponent");
}

/// n(θ + 1 − 2αθ) + 2θ, required positive for the θ that certifies α.
template <class T>
T positivity_term(int n, const T& alpha, const T& theta) {
  const T nn = n;
  return T(nn * (theta + 1 - 2 * alpha * theta) + 2 * theta);
}

/// 2nθ + n² − n²θ, the shared denominator of the right-hand fractions.
template <class T>
T theta_denominator(int n, const T& theta) {
  const T nn = n;
  return T(2 * nn * theta + nn * nn - nn * nn * theta);
}

/// h(θ,μ) = l(2μ−1)/(4μ−n) − (n(θ+1−2αθ)+2θ)/(2nθ+n²−n²θ).
template <class T>
T h_value(int n, const T& alpha, const T& l, const T& theta, const T& mu) {
  const T nn = n;
  const T first = checked_div<T>(T(l * (2 * mu - 1)), T(4 * mu - nn), "h: 4mu-n");
  const T second = checked_div<T>(positivity_term(n, alpha, theta), theta_denominator(n, theta),
                                  "h: 2n*theta+n^2-n^2*theta");
  return T(first - second);
}

/// lim_{μ→∞} h(1, μ) = l/2 − 1 + α − 1/n.
template <class T>
T h_limit(int n, const T& alpha, const T& l) {
  const T nn = n;
  return T(l / 2 - 1 + alpha - 1 / nn);
}

template <class T>
struct Coefficients {
  T A, B, C, D;
};

template <class T>
Coefficients<T> coefficients(int n, const T& alpha, const T& l, const T& theta, const T& mu) {
  const T nn = n;
  const T den_mu = T(4 * mu - nn);
  const T den_theta = theta_denominator(n, theta);
  Coefficients<T> c;
  c.A = checked_div<T>(T(2 * l * (2 * mu - 1)), den_mu, "A");
  c.B = checked_div<T>(T(2 * l * mu * (nn - 2) * (nn - 2)), T(nn * den_mu), "B");
  c.C = checked_div<T>(T(2 * nn * (theta + 1 - 2 * alpha * theta) + 4 * theta), den_theta, "C");
  c.D = checked_div<T>(T(2 * nn * theta * (1 - alpha) * (nn - 2)), den_theta, "D");
  return c;
}

/// f1(q) exactly as displayed: −2l(nq + μ(4 + n² − 2n(2+q))) / (n(4μ−n)).
template <class T>
T f1_displayed(int n, const T& l, const T& mu, const T& q) {
  const T nn = n;
  return checked_div<T>(T(-2 * l * (nn * q + mu * (4 + nn * nn - 2 * nn * (2 + q)))),
                        T(nn * (4 * mu - nn)), "f1");
}

/// f2(q) exactly as displayed: (q(2n(θ+1−2αθ)+4θ) + 2nθ(α−1)(n−2)) / (2nθ+n²−n²θ).
template <class T>
T f2_displayed(int n, const T& alpha, const T& theta, const T& q) {
  const T nn = n;
  return checked_div<T>(
      T(q * (2 * nn * (theta + 1 - 2 * alpha * theta) + 4 * theta) + 2 * nn * theta * (alpha - 1) * (nn - 2)),
      theta_denominator(n, theta), "f2");
}

/// q_r = (B−D)/(A−C) when B−D < 0, else 1. Requires A − C < 0.
template <class T>
T q_threshold(const Coefficients<T>& c) {
  const T slope = T(c.A - c.C);
  if (!(slope < 0)) {
    throw ConstraintViolation("A - C >= 0: no q threshold (theta, mu do not satisfy h < 0)");
  }
  const T offset = T(c.B - c.D);
  if (offset < 0) return T(offset / slope);
  return T(1);
}

/// The four strict lower bounds on q, in displayed order:
/// (n−2)θ'/n, n/(2μ')+1, 2nθ(α−1)(2−n)/(2n(θ+1−2αθ)+4θ), q_r.
template <class T>
std::array<T, 4> q_lower_bounds(int n, const T& alpha, const T& l, const T& theta, const T& mu) {
  const T nn = n;
  const T theta_c = conjugate(theta);
  const T mu_c = conjugate(mu);
  return {T((nn - 2) * theta_c / nn), T(nn / (2 * mu_c) + 1),
          checked_div<T>(T(2 * nn * theta * (alpha - 1) * (2 - nn)),
                         T(2 * nn * (theta + 1 - 2 * alpha * theta) + 4 * theta), "q bound 3"),
          q_threshold(coefficients(n, alpha, l, theta, mu))};
}

/// The three strict lower bounds on p: 2+1/θ, 2(n−2)lμ/n, 2θ(α−1)(n−2)/(n−θ(n−2)).
template <class T>
std::array<T, 3> p_lower_bounds(int n, const T& alpha, const T& l, const T& theta, const T& mu) {
  const T nn = n;
  return {T(2 + 1 / theta), T(2 * (nn - 2) * l * mu / nn),
          checked_div<T>(T(2 * theta * (alpha - 1) * (nn - 2)), T(nn - theta * (nn - 2)), "p bound 3")};
}

template <class T>
struct Exponents {
  T a1, a2, a3, a4, kappa1, kappa2;
  T beta1, gamma1, beta2, gamma2;
  T sum1() const { return T(beta1 + gamma1); }
  T sum2() const { return T(beta2 + gamma2); }
};

template <class T>
Exponents<T> exponents(int n, const T& alpha, const T& l, const T& theta, const T& mu, const T& p, const T& q) {
  const T nn = n;
  const T half_n = T(nn / 2);
  const T theta_c = conjugate(theta);
  const T mu_c = conjugate(mu);
  const T np2 = T(nn * p / 2);
  const T np2l = checked_div<T>(T(nn * p), T(2 * l), "np/(2l)");
  const T den_p = T(1 - half_n + np2);
  const T den_pl = T(1 - half_n + np2l);
  const T den_q = T(1 - half_n + q);

  Exponents<T> e;
  const T inner1 = checked_div<T>(T(1), T((p + 2 * alpha - 2) * theta), "a1: (p+2alpha-2)theta");
  e.a1 = checked_div<T>(T(np2 * (1 - inner1)), den_p, "a1");
  e.a2 = checked_div<T>(T(nn * q * (1 / nn - 1 / (2 * theta_c))), den_q, "a2");
  e.a3 = checked_div<T>(T(np2l * (1 - 1 / (2 * mu))), den_pl, "a3");
  const T inner4 = checked_div<T>(T(1), T(2 * (q - 1) * mu_c), "a4: 2(q-1)mu'");
  e.a4 = checked_div<T>(T(nn * q * (1 / nn - inner4)), den_q, "a4");
  e.kappa1 = checked_div<T>(T(np2 * (1 - 1 / p)), den_p, "kappa1");
  e.kappa2 = checked_div<T>(T(q - half_n), den_q, "kappa2");

  e.beta1 = checked_div<T>(T(p - 2 + 2 * alpha), p, "beta1") * e.a1;
  e.gamma1 = checked_div<T>(e.a2, q, "gamma1");
  e.beta2 = checked_div<T>(T(2 * l), p, "beta2") * e.a3;
  e.gamma2 = checked_div<T>(T(q - 1), q, "gamma2") * e.a4;
  return e;
}

/// Rational rearrangement of β1 + γ1 − 1.
template <class T>
T first_sum_minus_one(int n, const T& alpha, const T& theta, const T& p, const T& q) {
  const T nn = n;
  const T num = T(nn * nn * (2 * (alpha - 1) * theta + p * (theta - 1)) +
                  2 * nn * (q * (-2 * alpha * theta + theta + 1) - theta * (2 * alpha + p - 2)) + 4 * q * theta);
  const T den = T(theta * (nn * (p - 1) + 2) * (nn - 2 * (q + 1)));
  return checked_div<T>(num, den, "first sum identity");
}

/// Rational rearrangement of β2 + γ2 − 1.
template <class T>
T second_sum_minus_one(int n, const T& l, const T& mu, const T& p, const T& q) {
  const T nn = n;
  const T num = T(nn * p * (nn - 4 * mu) - 2 * l * (mu * (nn * nn - 2 * nn * (q + 2) + 4) + nn * q));
  const T den = T(mu * (nn - 2 * (q + 1)) * (l * (nn - 2) - nn * p));
  return checked_div<T>(num, den, "second sum identity");
}

}  // namespace chemo::algebra
