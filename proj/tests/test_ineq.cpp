#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chemo/errors.hpp"
#include "chemo/ineq.hpp"

namespace {

// Brute-force sup over a, b of a^d1 b^d2 − ε(a + b), refined around the best cell.
double product_gap_sup(double d1, double d2, double eps) {
  auto g = [&](double a, double b) { return std::pow(a, d1) * std::pow(b, d2) - eps * (a + b); };
  double best = 0, ba = 0, bb = 0;
  double lo_a = 0, hi_a = 10, lo_b = 0, hi_b = 10;
  for (int round = 0; round < 6; ++round) {
    const int steps = 400;
    const double sa = (hi_a - lo_a) / steps, sb = (hi_b - lo_b) / steps;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const double a = lo_a + i * sa, b = lo_b + j * sb;
        const double v = g(a, b);
        if (v > best) {
          best = v;
          ba = a;
          bb = b;
        }
      }
    }
    lo_a = std::max(0.0, ba - 2 * sa);
    hi_a = ba + 2 * sa;
    lo_b = std::max(0.0, bb - 2 * sb);
    hi_b = bb + 2 * sb;
  }
  return best;
}

}  // namespace

TEST_SUITE("ineq") {
  TEST_CASE("symmetric quarter exponents give 1/8") {
    CHECK(chemo::young_product_constant(0.25, 0.25, 1.0) == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(product_gap_sup(0.25, 0.25, 1.0) == doctest::Approx(0.125).epsilon(1e-6));
  }

  TEST_CASE("asymmetric exponents match brute force") {
    const double c = chemo::young_product_constant(0.5, 0.4, 1.0);
    CHECK(std::abs(c - product_gap_sup(0.5, 0.4, 1.0)) < 1e-6);
  }

  TEST_CASE("large penalty drives the constant to zero") {
    double previous = chemo::young_product_constant(0.3, 0.3, 1.0);
    for (double eps : {10.0, 100.0, 1e4}) {
      const double c = chemo::young_product_constant(0.3, 0.3, eps);
      CHECK(c < previous);
      previous = c;
    }
    CHECK(previous < 1e-6);
  }

  TEST_CASE("divergent supremum is reported") {
    CHECK_THROWS_AS(chemo::young_product_constant(0.5, 0.5, 1.0), chemo::DomainError);
    CHECK_THROWS_AS(chemo::young_product_constant(-0.1, 0.5, 1.0), chemo::DomainError);
    CHECK_THROWS_AS(chemo::young_product_constant(0.2, 0.5, 0.0), chemo::DomainError);
  }

  TEST_CASE("power sum lower bound") {
    auto [d5, d] = chemo::power_sum_lower(1.0, 1.0);
    CHECK(d5 == 1.0);
    CHECK(d == 0.0);

    std::tie(d5, d) = chemo::power_sum_lower(1.0, 0.5);
    CHECK(d5 == 0.5);
    CHECK(d >= 0.0);
    double worst = 0;
    for (int i = 0; i <= 1000; ++i) {
      for (int j = 0; j <= 1000; j += 10) {
        const double a = 0.1 * i, b = 0.1 * j;
        worst = std::max(worst, std::pow(2.0, -d5) * std::pow(a + b, d5) - a - std::sqrt(b));
      }
    }
    CHECK(worst <= d);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> log_u(-6, 6);
    for (int i = 0; i < 100000; ++i) {
      const double a = std::pow(10.0, log_u(rng)), b = std::pow(10.0, log_u(rng));
      REQUIRE(a + std::sqrt(b) >= std::pow(2.0, -d5) * std::pow(a + b, d5) - d - 1e-12 * (a + b + 1));
    }
  }

  TEST_CASE("ode comparison bound") {
    CHECK(chemo::ode_comparison_bound(2, 1, 1, 2) == 2);
    CHECK(chemo::ode_comparison_bound(0.5, 4, 1, 1) == 0.5);
    CHECK(chemo::ode_comparison_bound(0, 1, 8, 3) == doctest::Approx(2));
    CHECK(chemo::ode_comparison_bound(0, 1, 9, 3) >= chemo::ode_comparison_bound(0, 1, 8, 3));
    CHECK(chemo::ode_comparison_bound(0, 2, 8, 3) <= chemo::ode_comparison_bound(0, 1, 8, 3));
  }
}
