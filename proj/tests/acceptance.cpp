// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chemo/certificate.hpp"
#include "chemo/certificate_algebra.hpp"
#include "chemo/diagnostics.hpp"
#include "chemo/errors.hpp"
#include "chemo/ineq.hpp"
#include "chemo/model.hpp"
#include "chemo/region.hpp"
#include "chemo/solver.hpp"
#include "chemo/sweep.hpp"

namespace fs = std::filesystem;
using chemo::ratio;
using chemo::Rational;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

int g_failures = 0;
int g_run = 0;
std::vector<int> g_selected;  // empty: run everything

void criterion(int id, const char* title, double time_limit, const std::function<Verdict()>& body) {
  if (!g_selected.empty() && std::find(g_selected.begin(), g_selected.end(), id) == g_selected.end()) return;
  ++g_run;
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.fail(fmt::format("exception: {}", e.what()));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && seconds > time_limit) v.fail(fmt::format("runtime {:.2f}s exceeds {}s; {}", seconds, time_limit, v.detail));
  if (!v.passed) ++g_failures;
  fmt::print("criterion {} [{}] {}: {} ({:.2f}s)\n", id, v.passed ? "PASS" : "FAIL", title, v.detail, seconds);
  std::fflush(stdout);
}

/// Uniform rational in (lo, hi) on a 2^-40 lattice, never an endpoint.
Rational uniform_between(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  const std::uint64_t k = (rng() >> 24) % ((std::uint64_t{1} << 40) - 1) + 1;
  Rational t(mpz_class(std::to_string(k)), mpz_class(std::to_string(std::uint64_t{1} << 40)));
  t.canonicalize();
  return lo + (hi - lo) * t;
}

// 1. Region exactness.
Verdict region_exactness() {
  Verdict v;
  const Rational pp[] = {ratio(3, 2), ratio(4, 3), ratio(5, 4), ratio(6, 5)};
  const Rational pe[] = {Rational(2), ratio(5, 3), ratio(3, 2), ratio(7, 5)};
  int rows_checked = 0;
  for (int n = 2; n <= 5; ++n) {
    const auto pp_line = chemo::pp_upper_line(n);
    const auto pe_line = chemo::pe_upper_line(n);
    if (pp_line.intercept != pp[n - 2] || pp_line.slope != ratio(-1, 2)) v.fail(fmt::format("PP line n={}", n));
    if (pe_line.intercept != pe[n - 2] || pe_line.slope != -1) v.fail(fmt::format("PE line n={}", n));
    for (const auto& row : chemo::region_table(n, 200)) {
      ++rows_checked;
      if (row.alpha_lower != ratio(2, n)) v.fail(fmt::format("lower bound n={}", n));
      const bool pp_expected = row.l < ratio(2, n);
      if (row.alpha_upper_pp.has_value() != pp_expected) v.fail(fmt::format("PP presence n={} l={}", n, chemo::to_string(row.l)));
      if (row.alpha_upper_pp && *row.alpha_upper_pp != pp[n - 2] - row.l / 2) v.fail("PP value");
      if (!row.alpha_upper_pe || *row.alpha_upper_pe != pe[n - 2] - row.l) v.fail("PE value");
    }
  }
  if (v.passed) {
    v.detail = fmt::format("PP 3/2,4/3,5/4,6/5 - l/2; PE 2,5/3,3/2,7/5 - l; lower 2/n; {} rows exact", rows_checked);
  }
  return v;
}

// 2. Certificate soundness.
Verdict certificate_soundness() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  int total = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Rational l = uniform_between(rng, Rational(0), ratio(2, n));
      const Rational alpha = uniform_between(rng, chemo::alpha_lower(n), chemo::alpha_upper_pp(n, l));
      if (chemo::classify_pp(n, alpha, l).tag != chemo::RegionTag::TheoremRegion) {
        v.fail("sampler left the theorem region");
        continue;
      }
      const std::string where = fmt::format("n={} alpha={} l={}", n, chemo::to_decimal(alpha), chemo::to_decimal(l));
      chemo::Certificate cert;
      try {
        cert.params = {n, alpha, l};
        cert.aux = chemo::find_theta_mu(n, alpha, l);
        std::tie(cert.p, cert.q) = chemo::choose_pq(n, alpha, l, cert.aux);
        cert.exponents = chemo::exponent_set(n, alpha, l, cert.aux, cert.p, cert.q);
      } catch (const chemo::Error& e) {
        v.fail(fmt::format("{}: {}", where, e.what()));
        continue;
      }
      const auto report = chemo::verify_certificate(cert);
      if (!report.all_passed()) {
        for (const auto& c : report.checks)
          if (!c.passed) v.fail(fmt::format("{}: {} ({})", where, c.name, c.detail));
        continue;
      }
      const auto& e = cert.exponents;
      const auto in01 = [](const Rational& x) { return x > 0 && x < 1; };
      const auto [f1, f2] = chemo::p_interval(chemo::coeffs_abcd(n, alpha, l, cert.aux), cert.q);
      if (!(in01(e.a1) && in01(e.a2) && in01(e.a3) && in01(e.a4) && in01(e.kappa1) && in01(e.kappa2) &&
            e.sum1() < 1 && e.sum2() < 1 && f1 < cert.p && cert.p < f2)) {
        v.fail(fmt::format("{}: direct re-check failed", where));
      }
      ++total;
    }
  }
  if (v.passed) v.detail = fmt::format("{} sampled triples (100 per n = 2..5) verified with zero failed checks", total);
  return v;
}

// 3. Algebraic identities.
Verdict algebraic_identities() {
  namespace alg = chemo::algebra;
  Verdict v;
  std::mt19937_64 rng(99);
  double worst_rel = 0;
  int points = 0;
  while (points < 10000) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Rational alpha = uniform_between(rng, ratio(1, 10), Rational(3));
    const Rational l = uniform_between(rng, ratio(1, 100), Rational(2));
    const Rational theta = n == 2 ? uniform_between(rng, Rational(1), Rational(4))
                                  : uniform_between(rng, Rational(1), ratio(n, n - 2));
    const Rational mu = uniform_between(rng, ratio(n, 2), Rational(100));
    const Rational p = uniform_between(rng, Rational(1), Rational(20));
    const Rational q = uniform_between(rng, Rational(1), Rational(20));
    alg::Coefficients<Rational> c;
    alg::Exponents<Rational> e;
    try {
      c = alg::coefficients<Rational>(n, alpha, l, theta, mu);
      e = alg::exponents<Rational>(n, alpha, l, theta, mu, p, q);
    } catch (const chemo::ConstraintViolation&) {
      continue;  // a sampled denominator vanished
    }
    ++points;
    const Rational lhs[5] = {alg::f1_displayed<Rational>(n, l, mu, q), alg::f2_displayed<Rational>(n, alpha, theta, q),
                             c.A - c.C, alg::first_sum_minus_one<Rational>(n, alpha, theta, p, q),
                             alg::second_sum_minus_one<Rational>(n, l, mu, p, q)};
    const Rational rhs[5] = {c.A * q - c.B, c.C * q - c.D, 2 * alg::h_value<Rational>(n, alpha, l, theta, mu),
                             e.sum1() - 1, e.sum2() - 1};
    for (int k = 0; k < 5; ++k) {
      if (lhs[k] != rhs[k]) v.fail(fmt::format("identity {} not exact at point {}", k + 1, points));
    }

    // Same identities in double precision.
    const double nd_alpha = chemo::to_double(alpha), nd_l = chemo::to_double(l), nd_theta = chemo::to_double(theta),
                 nd_mu = chemo::to_double(mu), nd_p = chemo::to_double(p), nd_q = chemo::to_double(q);
    const auto cd = alg::coefficients<double>(n, nd_alpha, nd_l, nd_theta, nd_mu);
    const auto ed = alg::exponents<double>(n, nd_alpha, nd_l, nd_theta, nd_mu, nd_p, nd_q);
    const double dl[5] = {alg::f1_displayed<double>(n, nd_l, nd_mu, nd_q),
                          alg::f2_displayed<double>(n, nd_alpha, nd_theta, nd_q), cd.A - cd.C,
                          alg::first_sum_minus_one<double>(n, nd_alpha, nd_theta, nd_p, nd_q),
                          alg::second_sum_minus_one<double>(n, nd_l, nd_mu, nd_p, nd_q)};
    const double dr[5] = {cd.A * nd_q - cd.B, cd.C * nd_q - cd.D,
                          2 * alg::h_value<double>(n, nd_alpha, nd_l, nd_theta, nd_mu), ed.sum1() - 1, ed.sum2() - 1};
    // Each identity is a difference of operands; rounding is measured against
    // the operand magnitude, since the difference itself may cancel to ~0.
    const double scale[5] = {std::max(std::abs(cd.A * nd_q), std::abs(cd.B)),
                             std::max(std::abs(cd.C * nd_q), std::abs(cd.D)),
                             std::max(std::abs(cd.A), std::abs(cd.C)),
                             std::max(std::abs(ed.sum1()), 1.0),
                             std::max(std::abs(ed.sum2()), 1.0)};
    for (int k = 0; k < 5; ++k) {
      worst_rel = std::max(worst_rel, std::abs(dl[k] - dr[k]) / std::max({std::abs(dl[k]), std::abs(dr[k]), scale[k]}));
    }
  }
  if (worst_rel > 1e-12) v.fail(fmt::format("double-mode relative error {:.3g} > 1e-12", worst_rel));
  if (v.passed) {
    v.detail = fmt::format("5 identities exact on {} rational points; double mode worst relative discrepancy {:.2g}", points, worst_rel);
  }
  return v;
}

// 4. Worked witness.
Verdict worked_witness() {
  Verdict v;
  const int n = 2;
  const Rational alpha(1), l = ratio(1, 2), theta = ratio(101, 100), mu(10), p(3), q(4);
  const auto close = [&](const char* name, const Rational& got, double want) {
    if (std::abs(chemo::to_double(got) - want) > 1e-4) v.fail(fmt::format("{} = {} (want {})", name, chemo::to_decimal(got), want));
  };
  close("h", chemo::h_value(n, alpha, l, theta, mu), -0.25);
  const auto c = chemo::coeffs_abcd(n, alpha, l, {theta, mu});
  close("A", c.A, 0.5);
  close("B", c.B, 0.0);
  close("C", c.C, 1.0);
  close("D", c.D, 0.0);
  const auto [f1, f2] = chemo::p_interval(c, q);
  close("f1(4)", f1, 2.0);
  close("f2(4)", f2, 4.0);
  const auto e = chemo::exponent_set(n, alpha, l, {theta, mu}, p, q);
  close("kappa1", e.kappa1, 2.0 / 3.0);
  close("kappa2", e.kappa2, 0.75);
  close("beta1+gamma1", e.sum1(), 278.0 / 303.0);
  close("beta2+gamma2", e.sum2(), 101.0 / 120.0);
  close("a1", e.a1, 0.66997);
  close("a2", e.a2, 0.99010);
  close("a3", e.a3, 0.95);
  close("a4", e.a4, 0.7);
  chemo::Certificate cert{{n, alpha, l}, {theta, mu}, p, q, e};
  if (!chemo::verify_certificate(cert).all_passed()) v.fail("verify_certificate rejected the worked witness");
  if (v.passed) {
    v.detail = fmt::format("h=-1/4, A=1/2, B=D=0, C=1, interval (2,4), kappa=(2/3,3/4), sums=({:.4f},{:.4f})",
                           chemo::to_double(e.sum1()), chemo::to_double(e.sum2()));
  }
  return v;
}

// 5. Conservation and positivity over 1000 steps at 64².
Verdict conservation_positivity() {
  Verdict v;
  std::string detail;
  for (chemo::Mode mode : {chemo::Mode::ParabolicParabolic, chemo::Mode::ParabolicElliptic}) {
    chemo::SimConfig c;
    c.model = {2, 1.0, 0.5, 1.0, 1.0};
    c.mode = mode;
    c.resolution = 64;
    // Sharp bump on a near-vacuum background, so the upwind limiter is exercised.
    c.init.mass = 40;
    c.init.amplitude = 1e4;
    const chemo::Model m(c.model);
    chemo::SimState s = chemo::init_state(c, m);
    const double m0 = chemo::mass(s.u);
    double drift = 0, min_u = s.u.min(), min_v = s.v.min();
    for (int k = 0; k < 1000; ++k) {
      const double dt = chemo::adaptive_dt(s, m, c.time.safety, c.time.dt_max);
      s = mode == chemo::Mode::ParabolicParabolic ? chemo::step_pp(s, m, dt) : chemo::step_pe(s, m, dt);
      drift = std::max(drift, std::abs(chemo::mass(s.u) - m0) / m0);
      min_u = std::min(min_u, s.u.min());
      min_v = std::min(min_v, s.v.min());
    }
    if (drift > 1e-12) v.fail(fmt::format("{} mass drift {:.3g}", to_string(mode), drift));
    if (min_u < -1e-14 || min_v < -1e-14) v.fail(fmt::format("{} min(u)={:.3g} min(v)={:.3g}", to_string(mode), min_u, min_v));
    detail += fmt::format("{}{}: drift {:.2g}, min u {:.2g}, min v {:.2g}", detail.empty() ? "" : "; ", to_string(mode), drift, min_u, min_v);
  }
  if (v.passed) v.detail = detail;
  return v;
}

// 6. Accuracy against exact solutions.
Verdict solver_accuracy() {
  Verdict v;
  chemo::SimConfig c;
  c.model = {2, 1.0, 0.5, 1.0, 1.5};
  c.resolution = 8;
  c.init.preset = chemo::Preset::Constant;
  c.init.mass = 2;
  const chemo::Model m(c.model);
  chemo::SimState s = chemo::init_state(c, m);
  const double cv = 0.3;
  std::fill(s.v.values.begin(), s.v.values.end(), cv);
  for (int k = 0; k < 1000; ++k) s = chemo::step_pp(s, m, 1e-3);
  const double g = 1.5 * std::sqrt(2.0);
  const double exact_v = g + (cv - g) * std::exp(-s.t);
  double err = 0;
  for (std::size_t k = 0; k < s.u.values.size(); ++k) {
    err = std::max({err, std::abs(s.u.values[k] - 2.0), std::abs(s.v.values[k] - exact_v)});
  }
  if (err > 1e-6) v.fail(fmt::format("uniform-state error {:.3g}", err));

  chemo::ModelParams lin{2, 1.0, 1.0, 1.0, 1.0};
  const chemo::Model linear(lin, chemo::Nonlinearities{{}, [](double x) { return x; }});
  std::vector<double> errors;
  for (int res : {32, 64, 128}) {
    const chemo::Grid grid(2, {1, 1}, res);
    chemo::Field u(grid);
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) u(i, j) = 1 + std::cos(std::numbers::pi * grid.center(0, i));
    const auto sol = chemo::solve_elliptic(u, linear, 1e-12);
    double e = 0;
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) {
        const double exact = 1 + std::cos(std::numbers::pi * grid.center(0, i)) / (1 + std::numbers::pi * std::numbers::pi);
        e = std::max(e, std::abs(sol.v(i, j) - exact));
      }
    errors.push_back(e);
  }
  const double order1 = std::log2(errors[0] / errors[1]);
  const double order2 = std::log2(errors[1] / errors[2]);
  if (order1 < 1.8 || order2 < 1.8) v.fail(fmt::format("observed orders {:.3f}, {:.3f}", order1, order2));
  if (v.passed) v.detail = fmt::format("uniform-state error {:.2g}; eigenmode orders {:.3f}, {:.3f}", err, order1, order2);
  return v;
}

// 7. Boundedness property suite.
Verdict boundedness_suite() {
  Verdict v;
  int bounded = 0, plateau = 0, runs = 0;
  double worst_ratio = 0;
  const Rational ls[4] = {ratio(1, 5), ratio(2, 5), ratio(3, 5), ratio(4, 5)};
  for (double m : {1.0, 20.0}) {
    for (const Rational& l : ls) {
      const Rational hi = chemo::alpha_upper_pp(2, l);
      for (int i = 1; i <= 4; ++i) {
        const Rational alpha = Rational(1) + (hi - 1) * ratio(i, 5);
        if (chemo::classify_pp(2, alpha, l).tag != chemo::RegionTag::TheoremRegion) v.fail("grid point outside region");
        chemo::SimConfig c;
        c.model = {2, chemo::to_double(alpha), chemo::to_double(l), 1.0, 1.0};
        c.resolution = 16;
        c.time.t_end = 50;
        c.init.preset = chemo::Preset::Gaussian;
        c.init.mass = m;
        c.output.stride = 100;
        const auto result = chemo::run(c);
        ++runs;
        const std::string where = fmt::format("alpha={} l={} mass={}", chemo::to_string(alpha), chemo::to_string(l), m);
        if (!result.exponents.from_certificate) v.fail(where + ": no certificate exponents");
        if (result.termination != chemo::Termination::Completed)
          v.fail(fmt::format("{}: {} ({})", where, to_string(result.termination), result.message));
        if (result.run_class == chemo::RunClass::Bounded) {
          ++bounded;
        } else {
          v.fail(fmt::format("{}: classified {}", where, to_string(result.run_class)));
        }
        if (chemo::y_plateau(result.records, 1.1)) {
          ++plateau;
        } else {
          v.fail(where + ": y(t) trailing-plateau criterion violated");
        }
        const auto half = std::partition_point(result.records.begin(), result.records.end(),
                                               [&](const auto& r) { return r.t < result.records.back().t / 2; });
        double first = 0, trailing = 0;
        for (auto it = result.records.begin(); it != half; ++it) first = std::max(first, it->y);
        for (auto it = half; it != result.records.end(); ++it) trailing = std::max(trailing, it->y);
        worst_ratio = std::max(worst_ratio, trailing / first);
      }
    }
  }
  if (v.passed) {
    v.detail = fmt::format("{}/{} runs Bounded to t=50 (16x16 cells), {}/{} satisfy the y plateau (worst trailing/first {:.4f})",
                           bounded, runs, plateau, runs, worst_ratio);
  }
  return v;
}

// 8. Inequality constants.
double young_grid_sup(double d1, double d2, double eps) {
  const auto g = [&](double a, double b) { return std::pow(a, d1) * std::pow(b, d2) - eps * (a + b); };
  double best = 0, ba = 0, bb = 0, lo_a = 0, hi_a = 10, lo_b = 0, hi_b = 10;
  for (int round = 0; round < 8; ++round) {
    const int steps = 500;
    const double sa = (hi_a - lo_a) / steps, sb = (hi_b - lo_b) / steps;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps; ++j) {
        const double a = lo_a + i * sa, b = lo_b + j * sb, val = g(a, b);
        if (val > best) {
          best = val;
          ba = a;
          bb = b;
        }
      }
    lo_a = std::max(0.0, ba - 2 * sa);
    hi_a = ba + 2 * sa;
    lo_b = std::max(0.0, bb - 2 * sb);
    hi_b = bb + 2 * sb;
  }
  return best;
}

Verdict inequality_constants() {
  Verdict v;
  const double sets[][3] = {{0.25, 0.25, 1.0}, {0.5, 0.4, 1.0}, {0.1, 0.7, 0.3}, {0.45, 0.05, 5.0}, {0.3, 0.3, 1e-3}};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> log10_ab(-8, 8);
  long samples = 0;
  for (const auto& s : sets) {
    const double c = chemo::young_product_constant(s[0], s[1], s[2]);
    for (int k = 0; k < 100000; ++k) {
      const double a = std::pow(10.0, log10_ab(rng)), b = std::pow(10.0, log10_ab(rng));
      ++samples;
      if (std::pow(a, s[0]) * std::pow(b, s[1]) > s[2] * (a + b) + c) {
        v.fail(fmt::format("violation at d1={} d2={} eps={} a={} b={}", s[0], s[1], s[2], a, b));
        break;
      }
    }
  }
  const double closed = chemo::young_product_constant(0.25, 0.25, 1.0);
  const double grid = young_grid_sup(0.25, 0.25, 1.0);
  if (std::abs(closed - 0.125) > 1e-6 || std::abs(closed - grid) > 1e-6) {
    v.fail(fmt::format("(1/4,1/4,1): closed form {:.10f}, grid {:.10f}", closed, grid));
  }
  if (v.passed) {
    v.detail = fmt::format("{} random samples over 5 parameter sets, no violation; c(1/4,1/4,1) = {:.12f}, grid {:.10f}",
                           samples, closed, grid);
  }
  return v;
}

// 9. Determinism of sweeps across worker counts.
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict sweep_determinism() {
  Verdict v;
  chemo::SweepSpec spec;
  spec.base.model.n = 2;
  spec.base.resolution = 12;
  spec.base.time.t_end = 0.5;
  spec.base.init.mass = 5;
  spec.alphas = chemo::parse_rational_list("linspace(1, 1.3, 4)");
  spec.ls = chemo::parse_rational_list("0.2, 0.5, 0.8");
  spec.masses = {1.0, 5.0};
  const fs::path root = fs::temp_directory_path() / "chemo_acceptance_sweep";
  fs::remove_all(root);
  std::vector<std::string> outputs;
  for (int workers : {1, 4, 3, 1}) {
    const fs::path dir = root / fmt::format("w{}_{}", workers, outputs.size());
    chemo::run_sweep(spec, dir, workers);
    outputs.push_back(slurp(dir / "sweep.csv"));
  }
  for (std::size_t k = 1; k < outputs.size(); ++k) {
    if (outputs[k] != outputs[0]) v.fail(fmt::format("aggregate CSV of run {} differs from run 0", k));
  }
  fs::remove_all(root);
  if (v.passed) {
    const auto rows = std::count(outputs[0].begin(), outputs[0].end(), '\n') - 1;
    v.detail = fmt::format("worker counts 1, 4, 3, 1 give byte-identical sweep.csv ({} rows, {} bytes)", rows, outputs[0].size());
  }
  return v;
}

}  // namespace

// Usage: acceptance [criterion ...]; with no arguments all nine run.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > 9) {
      fmt::print(stderr, "unknown criterion '{}' (expected 1..9)\n", argv[i]);
      return 2;
    }
    g_selected.push_back(id);
  }
  criterion(1, "region exactness", 1.0, region_exactness);
  criterion(2, "certificate soundness", 10.0, certificate_soundness);
  criterion(3, "algebraic identities", 0, algebraic_identities);
  criterion(4, "worked witness", 0, worked_witness);
  criterion(5, "solver conservation and positivity", 30.0, conservation_positivity);
  criterion(6, "solver accuracy", 0, solver_accuracy);
  criterion(7, "boundedness property suite", 600.0, boundedness_suite);
  criterion(8, "inequality constants", 0, inequality_constants);
  criterion(9, "sweep determinism", 0, sweep_determinism);
  fmt::print("acceptance: {} of {} criteria passed\n", g_run - g_failures, g_run);
  return g_failures == 0 ? 0 : 1;
}
