/**
 * @file sweep.hpp
 * @brief Run reports and parameter sweeps over (α, l[, mass]).
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemo/config.hpp"
#include "chemo/model.hpp"
#include "chemo/solver.hpp"

namespace chemo {

/// Verdict for the configured mode (classify_pp or classify_pe).
RegionVerdict classify_mode(Mode mode, int n, const Rational& alpha, const Rational& l);

/// Run summary: termination, wall_time, steps, final_sup_u, final_sup_v and
/// descriptive extras (region verdict, exponents, initial data).
nlohmann::json summary_json(const RunConfig& config, const SimResult& result);

/// Writes summary.json and diagnostics.csv into `dir` (created if needed).
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, const SimResult& result);

struct SweepPoint {
  Rational alpha;
  Rational l;
  double mass = 0;
  RegionVerdict verdict{RegionTag::OutsideKnownRegion, {}};
  Termination termination = Termination::Completed;
  double final_sup_u = 0;
  std::string directory;  ///< relative to the sweep output directory
};

/// Grid points sorted by (α, l, mass). Duplicates are kept.
std::vector<RunConfig> sweep_points(const SweepSpec& spec);

/// Runs every point on `workers` threads (0 uses spec.workers), writing one
/// directory per point plus sweep.csv under `out_dir`. The aggregate file
/// depends only on the spec, never on the worker count.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir, int workers = 0);

/// `alpha,l[,mass],verdict,termination,final_sup_u`; mass only when swept.
std::string sweep_csv(const std::vector<SweepPoint>& points, bool with_mass);

}  // namespace chemo
