/**
 * @file certificate.hpp
 * @brief Constructive exponent selection for the boundedness argument.
 *
 * A Certificate is a checkable witness (θ, μ, p, q) together with the derived
 * Gagliardo–Nirenberg exponents a1..a4, κ1, κ2 and the sums β1+γ1, β2+γ2.
 * All algebra is exact (GMP rationals); doubles enter only as a pre-filter
 * during the (θ, μ) search.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chemo/rational.hpp"

namespace chemo {

inline constexpr int kDefaultSearchBudget = 256;

struct AuxiliaryPair {
  Rational theta;
  Rational mu;
};

struct CoefficientSet {
  Rational A, B, C, D;
};

struct ExponentSet {
  Rational a1, a2, a3, a4, kappa1, kappa2;
  Rational beta1, gamma1, beta2, gamma2;

  Rational sum1() const { return beta1 + gamma1; }
  Rational sum2() const { return beta2 + gamma2; }
};

struct CertificateParams {
  int n = 2;
  Rational alpha;
  Rational l;
};

struct Certificate {
  CertificateParams params;
  AuxiliaryPair aux;
  Rational p;
  Rational q;
  ExponentSet exponents;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool all_passed() const;
  std::size_t failures() const;
  /// nullptr when no check carries that name.
  const Check* find(std::string_view name) const;
};

/// h(θ, μ). Throws ConstraintViolation when θ ∉ (1, n/(n−2)) (θ > 1 for n = 2) or μ <= n/2.
Rational h_value(int n, const Rational& alpha, const Rational& l, const Rational& theta, const Rational& mu);
double h_value(int n, double alpha, double l, double theta, double mu);

/// Searches θ_k = 1 + 2^-k, μ_j = n/2 + 2^j in shells of increasing k + j for
/// the first pair with h < 0 and n(θ+1−2αθ)+2θ > 0. `budget` counts pairs.
/// Throws SearchFailure when the budget runs out.
AuxiliaryPair find_theta_mu(int n, const Rational& alpha, const Rational& l, int budget = kDefaultSearchBudget);

CoefficientSet coeffs_abcd(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux);

/// (f1, f2) = (A q − B, C q − D).
std::pair<Rational, Rational> p_interval(const CoefficientSet& coeffs, const Rational& q);

/// Root of k(q) = A − C − (B − D)/q, or 1 when B − D >= 0. Throws when A − C >= 0.
Rational q_threshold(const CoefficientSet& coeffs);

/// q = 5/4 · max(q lower bounds); p = midpoint of (max(p lower bounds, f1(q)), f2(q)).
/// An empty interval doubles q and retries. Throws InfeasibleError after the retry cap.
std::pair<Rational, Rational> choose_pq(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux);

/// Throws ConstraintViolation when an exponent leaves (0, 1) or a sum reaches 1.
ExponentSet exponent_set(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux,
                         const Rational& p, const Rational& q);

/// find_theta_mu → choose_pq → exponent_set.
Certificate build_certificate(int n, const Rational& alpha, const Rational& l, int budget = kDefaultSearchBudget);

/// Total: every failed constraint becomes a failed Check, never an exception.
VerificationReport verify_certificate(const Certificate& cert);

/// Flat `key = value` text; values are exact rationals, followed by the report.
std::string serialize_certificate(const Certificate& cert, const VerificationReport& report);

/// Reads the document written by serialize_certificate. Report lines are ignored.
/// Decimals are read exactly. Throws ConfigError on missing or malformed keys.
Certificate parse_certificate(std::string_view text);

}  // namespace chemo
