/**
 * @file region.hpp
 * @brief Tabulated boundaries of the boundedness regions in the (l, α) plane.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "chemo/rational.hpp"

namespace chemo {

struct RegionRow {
  Rational l;
  Rational alpha_lower;                    ///< 2/n
  std::optional<Rational> alpha_upper_pp;  ///< 1 + 1/n − l/2, present iff l < 2/n
  std::optional<Rational> alpha_upper_pe;  ///< 1 + 2/n − l, present iff l < 1
};

/// Row for a single l in (0, 1). Throws UnsupportedDimension for n < 2.
RegionRow region_row(int n, const Rational& l);

/// Rows at l_i = (2i + 1) / (2 samples), i = 0 .. samples − 1, so every sample
/// sits strictly inside (0, 1). Requires samples >= 2.
std::vector<RegionRow> region_table(int n, int samples);

/// Boundary line α = intercept + slope · l.
struct RegionLine {
  Rational intercept;
  Rational slope;
};

RegionLine pp_upper_line(int n);
RegionLine pe_upper_line(int n);

inline constexpr const char* kRegionCsvHeader = "l,alpha_lower,alpha_upper_pp,alpha_upper_pe";

/// Values are exact rationals ("num/den"); absent bounds leave the cell empty.
void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows);

}  // namespace chemo
