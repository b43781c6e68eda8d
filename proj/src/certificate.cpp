#include "chemo/certificate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "chemo/certificate_algebra.hpp"
#include "chemo/errors.hpp"

namespace chemo {

namespace {

constexpr int kMaxDoublings = 64;

Rational power_of_two(int exponent) {
  mpz_class value;
  mpz_ui_pow_ui(value.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return Rational(value);
}

bool theta_in_range(int n, const Rational& theta) {
  if (theta <= 1) return false;
  return n == 2 || theta < ratio(n, n - 2);
}

void require_aux(int n, const Rational& theta, const Rational& mu) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  if (!theta_in_range(n, theta)) {
    throw ConstraintViolation(
        fmt::format("theta = {} outside (1, n/(n-2)) for n = {}", to_string(theta), n));
  }
  if (mu <= ratio(n, 2)) {
    throw ConstraintViolation(fmt::format("mu = {} must exceed n/2 = {}", to_string(mu), to_string(ratio(n, 2))));
  }
}

bool strictly_inside_unit(const Rational& x) { return x > 0 && x < 1; }

}  // namespace

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

const Check* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Rational h_value(int n, const Rational& alpha, const Rational& l, const Rational& theta, const Rational& mu) {
  require_aux(n, theta, mu);
  return algebra::h_value<Rational>(n, alpha, l, theta, mu);
}

double h_value(int n, double alpha, double l, double theta, double mu) {
  require_aux(n, to_rational(theta), to_rational(mu));
  return algebra::h_value<double>(n, alpha, l, theta, mu);
}

AuxiliaryPair find_theta_mu(int n, const Rational& alpha, const Rational& l, int budget) {
  if (n < 2) throw UnsupportedDimension(fmt::format("dimension n = {} (need n >= 2)", n));
  const Rational theta_cap = n > 2 ? ratio(n, n - 2) : Rational(0);
  const double alpha_d = to_double(alpha);
  const double l_d = to_double(l);

  int tried = 0;
  for (int shell = 1; tried < budget; ++shell) {
    for (int k = 1; k <= shell && tried < budget; ++k) {
      const int j = shell - k;
      ++tried;
      Rational theta = Rational(1) + Rational(1) / power_of_two(k);
      if (n > 2 && theta >= theta_cap) theta = (Rational(1) + theta_cap) / 2;
      const Rational mu = ratio(n, 2) + power_of_two(j);

      // Float pre-filter; exact arithmetic has the final word.
      const double h_fast = algebra::h_value<double>(n, alpha_d, l_d, to_double(theta), to_double(mu));
      if (h_fast > 1e-9) continue;

      if (algebra::positivity_term<Rational>(n, alpha, theta) <= 0) continue;
      if (algebra::h_value<Rational>(n, alpha, l, theta, mu) < 0) return {theta, mu};
    }
  }
  throw SearchFailure(fmt::format(
      "search failure: no (theta, mu) with h < 0 among {} pairs for n = {}, alpha = {}, l = {} "
      "(a budget statement, not a proof of infeasibility)",
      budget, n, to_decimal(alpha), to_decimal(l)));
}

CoefficientSet coeffs_abcd(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux) {
  require_aux(n, aux.theta, aux.mu);
  const auto c = algebra::coefficients<Rational>(n, alpha, l, aux.theta, aux.mu);
  return {c.A, c.B, c.C, c.D};
}

std::pair<Rational, Rational> p_interval(const CoefficientSet& coeffs, const Rational& q) {
  return {coeffs.A * q - coeffs.B, coeffs.C * q - coeffs.D};
}

Rational q_threshold(const CoefficientSet& coeffs) {
  return algebra::q_threshold<Rational>({coeffs.A, coeffs.B, coeffs.C, coeffs.D});
}

std::pair<Rational, Rational> choose_pq(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux) {
  require_aux(n, aux.theta, aux.mu);
  if (algebra::h_value<Rational>(n, alpha, l, aux.theta, aux.mu) >= 0) {
    throw ConstraintViolation("choose_pq needs h(theta, mu) < 0");
  }
  const auto coeffs = coeffs_abcd(n, alpha, l, aux);
  const auto q_bounds = algebra::q_lower_bounds<Rational>(n, alpha, l, aux.theta, aux.mu);
  const auto p_bounds = algebra::p_lower_bounds<Rational>(n, alpha, l, aux.theta, aux.mu);
  const Rational p_floor = *std::max_element(p_bounds.begin(), p_bounds.end());

  Rational q = *std::max_element(q_bounds.begin(), q_bounds.end()) * Rational(5, 4);
  for (int attempt = 0; attempt <= kMaxDoublings; ++attempt) {
    const auto [f1, f2] = p_interval(coeffs, q);
    const Rational lo = std::max(p_floor, f1);
    if (lo < f2) {
      Rational p = (lo + f2) / 2;
      p.canonicalize();
      q.canonicalize();
      return {p, q};
    }
    q *= 2;
  }
  throw InfeasibleError(fmt::format("no p in (f1(q), f2(q)) above the p bounds after {} doublings of q", kMaxDoublings));
}

ExponentSet exponent_set(int n, const Rational& alpha, const Rational& l, const AuxiliaryPair& aux, const Rational& p,
                         const Rational& q) {
  require_aux(n, aux.theta, aux.mu);
  const auto e = algebra::exponents<Rational>(n, alpha, l, aux.theta, aux.mu, p, q);
  ExponentSet out{e.a1, e.a2, e.a3, e.a4, e.kappa1, e.kappa2, e.beta1, e.gamma1, e.beta2, e.gamma2};
  const std::pair<const char*, const Rational*> unit[] = {{"a1", &out.a1}, {"a2", &out.a2},         {"a3", &out.a3},
                                                          {"a4", &out.a4}, {"kappa1", &out.kappa1}, {"kappa2", &out.kappa2}};
  for (const auto& [name, value] : unit) {
    if (!strictly_inside_unit(*value)) {
      throw ConstraintViolation(fmt::format("invalid certificate: {} = {} not in (0,1)", name, to_decimal(*value)));
    }
  }
  if (!strictly_inside_unit(out.sum1())) {
    throw ConstraintViolation(fmt::format("invalid certificate: beta1+gamma1 = {} not in (0,1)", to_decimal(out.sum1())));
  }
  if (!strictly_inside_unit(out.sum2())) {
    throw ConstraintViolation(fmt::format("invalid certificate: beta2+gamma2 = {} not in (0,1)", to_decimal(out.sum2())));
  }
  return out;
}

Certificate build_certificate(int n, const Rational& alpha, const Rational& l, int budget) {
  Certificate cert;
  cert.params = {n, alpha, l};
  cert.aux = find_theta_mu(n, alpha, l, budget);
  std::tie(cert.p, cert.q) = choose_pq(n, alpha, l, cert.aux);
  cert.exponents = exponent_set(n, alpha, l, cert.aux, cert.p, cert.q);
  return cert;
}

VerificationReport verify_certificate(const Certificate& cert) {
  VerificationReport report;
  const int n = cert.params.n;
  const Rational& alpha = cert.params.alpha;
  const Rational& l = cert.params.l;
  const Rational& theta = cert.aux.theta;
  const Rational& mu = cert.aux.mu;
  const Rational& p = cert.p;
  const Rational& q = cert.q;

  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  // Runs `body`; a thrown constraint (zero denominator, ...) fails the check.
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  };
  auto strict_gt = [&](const std::string& name, const Rational& lhs, const Rational& rhs) {
    add(name, lhs > rhs, fmt::format("{} > {}", to_decimal(lhs), to_decimal(rhs)));
  };

  if (n < 2) {
    add("n >= 2", false, fmt::format("n = {}", n));
    return report;
  }
  add("alpha > 0 and l > 0", alpha > 0 && l > 0, fmt::format("alpha = {}, l = {}", to_decimal(alpha), to_decimal(l)));

  const bool theta_ok = theta_in_range(n, theta);
  add("theta in (1, n/(n-2))", theta_ok, fmt::format("theta = {}", to_decimal(theta)));
  const bool mu_ok = mu > ratio(n, 2);
  add("mu > n/2", mu_ok, fmt::format("mu = {}", to_decimal(mu)));
  const Rational positivity = algebra::positivity_term<Rational>(n, alpha, theta);
  add("n(theta+1-2*alpha*theta)+2*theta > 0", positivity > 0, fmt::format("value {}", to_decimal(positivity)));

  if (!theta_ok || !mu_ok) {
    // Everything downstream is defined only on the admissible (theta, mu) range.
    add("h(theta,mu) < 0", false, "theta or mu out of range");
    return report;
  }

  guarded("h(theta,mu) < 0", [&] {
    const Rational h = algebra::h_value<Rational>(n, alpha, l, theta, mu);
    add("h(theta,mu) < 0", h < 0, fmt::format("h = {}", to_decimal(h)));
  });

  const char* q_names[] = {"q > (n-2)theta'/n", "q > n/(2mu')+1",
                           "q > 2n*theta(alpha-1)(2-n)/(2n(theta+1-2*alpha*theta)+4*theta)", "q > q_r"};
  try {
    const auto bounds = algebra::q_lower_bounds<Rational>(n, alpha, l, theta, mu);
    for (std::size_t i = 0; i < bounds.size(); ++i) strict_gt(q_names[i], q, bounds[i]);
  } catch (const Error& e) {
    // q_r is the only bound that can throw once theta and mu are in range.
    const Rational theta_c = algebra::conjugate(theta);
    const Rational mu_c = algebra::conjugate(mu);
    strict_gt(q_names[0], q, Rational((n - 2) * theta_c / n));
    strict_gt(q_names[1], q, Rational(Rational(n) / (2 * mu_c) + 1));
    guarded(q_names[2], [&] {
      strict_gt(q_names[2], q,
                algebra::checked_div<Rational>(Rational(2 * n * theta * (alpha - 1) * (2 - n)),
                                               Rational(2 * n * (theta + 1 - 2 * alpha * theta) + 4 * theta), "q bound 3"));
    });
    add(q_names[3], false, e.what());
  }

  const char* p_names[] = {"p > 2+1/theta", "p > 2(n-2)l*mu/n", "p > 2theta(alpha-1)(n-2)/(n-theta(n-2))"};
  guarded("p lower bounds", [&] {
    const auto bounds = algebra::p_lower_bounds<Rational>(n, alpha, l, theta, mu);
    for (std::size_t i = 0; i < bounds.size(); ++i) strict_gt(p_names[i], p, bounds[i]);
  });

  guarded("p in (f1(q), f2(q))", [&] {
    const auto c = algebra::coefficients<Rational>(n, alpha, l, theta, mu);
    const auto [f1, f2] = p_interval({c.A, c.B, c.C, c.D}, q);
    add("p > f1(q)", p > f1, fmt::format("{} > {}", to_decimal(p), to_decimal(f1)));
    add("p < f2(q)", p < f2, fmt::format("{} < {}", to_decimal(p), to_decimal(f2)));
  });

  guarded("exponents defined", [&] {
    const auto e = algebra::exponents<Rational>(n, alpha, l, theta, mu, p, q);
    const std::pair<const char*, const Rational*> unit[] = {{"a1", &e.a1}, {"a2", &e.a2},         {"a3", &e.a3},
                                                            {"a4", &e.a4}, {"kappa1", &e.kappa1}, {"kappa2", &e.kappa2}};
    for (const auto& [name, value] : unit) {
      add(fmt::format("{} in (0,1)", name), strictly_inside_unit(*value), fmt::format("{} = {}", name, to_decimal(*value)));
    }
    const Rational s1 = e.sum1();
    const Rational s2 = e.sum2();
    add("beta1+gamma1 in (0,1)", strictly_inside_unit(s1), fmt::format("sum = {}", to_decimal(s1)));
    add("beta2+gamma2 in (0,1)", strictly_inside_unit(s2), fmt::format("sum = {}", to_decimal(s2)));

    guarded("identity beta1+gamma1-1", [&] {
      const Rational rhs = algebra::first_sum_minus_one<Rational>(n, alpha, theta, p, q);
      add("identity beta1+gamma1-1", rhs == s1 - 1, fmt::format("rearranged {} vs direct {}", to_decimal(rhs), to_decimal(Rational(s1 - 1))));
    });
    guarded("identity beta2+gamma2-1", [&] {
      const Rational rhs = algebra::second_sum_minus_one<Rational>(n, l, mu, p, q);
      add("identity beta2+gamma2-1", rhs == s2 - 1, fmt::format("rearranged {} vs direct {}", to_decimal(rhs), to_decimal(Rational(s2 - 1))));
    });

    const ExponentSet& st = cert.exponents;
    const bool same = st.a1 == e.a1 && st.a2 == e.a2 && st.a3 == e.a3 && st.a4 == e.a4 && st.kappa1 == e.kappa1 &&
                      st.kappa2 == e.kappa2 && st.beta1 == e.beta1 && st.gamma1 == e.gamma1 && st.beta2 == e.beta2 &&
                      st.gamma2 == e.gamma2;
    add("stored exponents match recomputation", same, same ? "exact match" : "stored exponents differ");
  });

  return report;
}

namespace {

const char* const kExponentKeys[] = {"a1",     "a2",    "a3",     "a4",    "kappa1",
                                     "kappa2", "beta1", "gamma1", "beta2", "gamma2"};

Rational* exponent_slot(ExponentSet& e, std::string_view key) {
  if (key == "a1") return &e.a1;
  if (key == "a2") return &e.a2;
  if (key == "a3") return &e.a3;
  if (key == "a4") return &e.a4;
  if (key == "kappa1") return &e.kappa1;
  if (key == "kappa2") return &e.kappa2;
  if (key == "beta1") return &e.beta1;
  if (key == "gamma1") return &e.gamma1;
  if (key == "beta2") return &e.beta2;
  if (key == "gamma2") return &e.gamma2;
  return nullptr;
}

std::string value_line(std::string_view key, const Rational& value) {
  return fmt::format("{} = {}  # {}\n", key, to_string(value), to_decimal(value));
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string serialize_certificate(const Certificate& cert, const VerificationReport& report) {
  std::string out = "# exponent certificate (theta, mu, p, q) and derived exponents\n";
  out += fmt::format("n = {}\n", cert.params.n);
  out += value_line("alpha", cert.params.alpha);
  out += value_line("l", cert.params.l);
  out += value_line("theta", cert.aux.theta);
  out += value_line("mu", cert.aux.mu);
  out += value_line("p", cert.p);
  out += value_line("q", cert.q);
  ExponentSet e = cert.exponents;
  for (const char* key : kExponentKeys) out += value_line(key, *exponent_slot(e, key));
  out += value_line("sum1", e.sum1());
  out += value_line("sum2", e.sum2());
  out += fmt::format("# verification: {} checks, {} failed\n", report.checks.size(), report.failures());
  for (const auto& c : report.checks) {
    out += fmt::format("check: {} = {}  # {}\n", c.name, c.passed ? "pass" : "FAIL", c.detail);
  }
  return out;
}

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  std::map<std::string, bool> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty() || body.rfind("check:", 0) == 0) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("certificate line {}: expected key = value", line_no));
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (seen.count(key)) throw ConfigError(fmt::format("certificate line {}: duplicate key '{}'", line_no, key));
    seen[key] = true;
    try {
      if (key == "n") {
        const Rational n = parse_rational(value);
        if (n.get_den() != 1 || !n.get_num().fits_sint_p()) throw ConfigError("n must be an integer");
        cert.params.n = static_cast<int>(n.get_num().get_si());
      } else if (key == "alpha") {
        cert.params.alpha = parse_rational(value);
      } else if (key == "l") {
        cert.params.l = parse_rational(value);
      } else if (key == "theta") {
        cert.aux.theta = parse_rational(value);
      } else if (key == "mu") {
        cert.aux.mu = parse_rational(value);
      } else if (key == "p") {
        cert.p = parse_rational(value);
      } else if (key == "q") {
        cert.q = parse_rational(value);
      } else if (Rational* slot = exponent_slot(cert.exponents, key)) {
        *slot = parse_rational(value);
      } else if (key != "sum1" && key != "sum2") {
        throw ConfigError(fmt::format("unknown key '{}'", key));
      }
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("certificate line {}: {}", line_no, e.what()));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("certificate line {}: {}", line_no, e.what()));
    }
  }
  for (const char* key : {"n", "alpha", "l", "theta", "mu", "p", "q"}) {
    if (!seen.count(key)) throw ConfigError(fmt::format("certificate is missing key '{}'", key));
  }
  for (const char* key : kExponentKeys) {
    if (!seen.count(key)) throw ConfigError(fmt::format("certificate is missing key '{}'", key));
  }
  return cert;
}

}  // namespace chemo
