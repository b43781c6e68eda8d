#include "chemo/rational.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "chemo/errors.hpp"

namespace chemo {

Rational ratio(long num, long den) {
  if (den == 0) throw DomainError(fmt::format("ratio {}/0", num));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational to_rational(double value) {
  if (!std::isfinite(value)) {
    throw DomainError(fmt::format("cannot convert non-finite value {} to a rational", value));
  }
  return Rational(value);
}

double to_double(const Rational& value) {
  // get_d truncates toward zero; compare against the next double away from
  // zero to round to nearest, ties to even.
  const double truncated = value.get_d();
  if (!std::isfinite(truncated) || Rational(truncated) == value) return truncated;
  const double away = std::nextafter(truncated, value > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return truncated;
  const Rational err_truncated = abs(value - Rational(truncated));
  const Rational err_away = abs(value - Rational(away));
  if (err_away < err_truncated) return away;
  if (err_truncated < err_away) return truncated;
  std::int64_t bits = 0;
  std::memcpy(&bits, &truncated, sizeof bits);
  return (bits & 1) == 0 ? truncated : away;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw DomainError(fmt::format("malformed exponent in '{}'", text));
    }
    std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw DomainError(fmt::format("malformed number '{}'", text));
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw DomainError(fmt::format("malformed number '{}'", text));
    digits = std::string(s);
  }
  Rational value(parse_integer(digits));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    value /= Rational(scale);
  } else {
    value *= Rational(scale);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)));
    Rational den = parse_decimal(trim(s.substr(slash + 1)));
    if (den == 0) throw DomainError(fmt::format("zero denominator in '{}'", text));
    Rational out = num / den;
    out.canonicalize();
    return out;
  }
  return parse_decimal(s);
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

std::string to_decimal(const Rational& value) { return fmt::format("{:.17g}", to_double(value)); }

}  // namespace chemo
