#include "chemo/region.hpp"

#include <fmt/format.h>

#include <ostream>

#include "chemo/errors.hpp"
#include "chemo/model.hpp"

namespace chemo {

namespace {

void require_dimension(int n) {
  if (n < 2) throw UnsupportedDimension(fmt::format("region: dimension n = {} must be >= 2", n));
}

}  // namespace

RegionLine pp_upper_line(int n) {
  require_dimension(n);
  return {alpha_upper_pp(n, Rational(0)), Rational(-1, 2)};
}

RegionLine pe_upper_line(int n) {
  require_dimension(n);
  return {alpha_upper_pe(n, Rational(0)), Rational(-1)};
}

RegionRow region_row(int n, const Rational& l) {
  require_dimension(n);
  if (l <= 0 || l >= 1) throw DomainError(fmt::format("region: l = {} outside (0, 1)", to_string(l)));
  RegionRow row{l, alpha_lower(n), std::nullopt, std::nullopt};
  if (l < ratio(2, n)) row.alpha_upper_pp = alpha_upper_pp(n, l);
  row.alpha_upper_pe = alpha_upper_pe(n, l);
  return row;
}

std::vector<RegionRow> region_table(int n, int samples) {
  require_dimension(n);
  if (samples < 2) throw DomainError(fmt::format("region: samples = {} must be >= 2", samples));
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    rows.push_back(region_row(n, ratio(2 * i + 1, 2 * samples)));
  }
  return rows;
}

void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows) {
  out << kRegionCsvHeader << '\n';
  for (const RegionRow& row : rows) {
    out << to_string(row.l) << ',' << to_string(row.alpha_lower) << ',';
    if (row.alpha_upper_pp) out << to_string(*row.alpha_upper_pp);
    out << ',';
    if (row.alpha_upper_pe) out << to_string(*row.alpha_upper_pe);
    out << '\n';
  }
}

}  // namespace chemo
