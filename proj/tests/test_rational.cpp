#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chemo/errors.hpp"
#include "chemo/rational.hpp"

using chemo::Rational;

TEST_SUITE("rational") {
  TEST_CASE("decimal strings parse exactly") {
    CHECK(chemo::parse_rational("0.1") == Rational(1, 10));
    CHECK(chemo::parse_rational("-7/12") == Rational(-7, 12));
    CHECK(chemo::parse_rational("1e-3") == Rational(1, 1000));
    CHECK(chemo::parse_rational("2.5E+2") == Rational(250));
    CHECK(chemo::parse_rational(" 3 ") == Rational(3));
    CHECK(chemo::parse_rational("1.5/0.5") == Rational(3));
    CHECK(chemo::parse_rational(".25") == Rational(1, 4));
  }

  TEST_CASE("malformed numbers are rejected") {
    for (const char* bad : {"", "abc", "1/0", "1e", "1.2.3", "--1", "1/", "nan"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(chemo::parse_rational(bad), chemo::DomainError);
    }
  }

  TEST_CASE("double round trip is exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
      const double x = dist(rng);
      CHECK(chemo::to_double(chemo::to_rational(x)) == x);
    }
    CHECK_THROWS_AS(chemo::to_rational(std::numeric_limits<double>::infinity()), chemo::DomainError);
  }

  TEST_CASE("to_double rounds to nearest") {
    CHECK(chemo::to_double(Rational(13, 10)) == 1.3);
    CHECK(chemo::to_double(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(chemo::to_double(Rational(-2, 3)) == -2.0 / 3.0);
    CHECK(chemo::to_double(Rational(7, 12)) == 7.0 / 12.0);
  }

  TEST_CASE("canonical text") {
    CHECK(chemo::to_string(Rational(6, 4)) == "3/2");
    CHECK(chemo::to_string(Rational(4, 2)) == "2");
    CHECK(chemo::to_decimal(Rational(1, 4)) == "0.25");
  }
}
