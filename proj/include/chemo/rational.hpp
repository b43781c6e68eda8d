#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chemo {

using Rational = mpq_class;

/// num/den in canonical form. GMP arithmetic requires canonical operands,
/// which the two-argument mpq_class constructor does not produce.
Rational ratio(long num, long den);

/// Exact: every finite double is a dyadic rational.
Rational to_rational(double value);

double to_double(const Rational& value);

/// Parses integers, fractions ("-7/12") and decimals with optional exponent
/// ("0.25", "1e-3", "2.5E+2") without rounding. Throws DomainError on bad input.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" (or "num" when den == 1).
std::string to_string(const Rational& value);

/// Shortest-roundtrip decimal rendering of the nearest double, 17 significant digits.
std::string to_decimal(const Rational& value);

}  // namespace chemo
