#include "chemo/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "chemo/errors.hpp"

namespace chemo {

namespace fs = std::filesystem;

RegionVerdict classify_mode(Mode mode, int n, const Rational& alpha, const Rational& l) {
  return mode == Mode::ParabolicParabolic ? classify_pp(n, alpha, l) : classify_pe(n, alpha, l);
}

nlohmann::json summary_json(const RunConfig& config, const SimResult& result) {
  const SimConfig& sim = config.sim;
  const RegionVerdict verdict = classify_mode(sim.mode, sim.model.n, config.alpha, config.l);
  const SimState& last = result.final_state;
  nlohmann::json j;
  j["termination"] = std::string(to_string(result.termination));
  j["wall_time"] = result.wall_time;
  j["steps"] = result.steps;
  j["final_sup_u"] = sup_norm(last.u);
  j["final_sup_v"] = sup_norm(last.v);
  j["t_final"] = last.t;
  j["message"] = result.message;
  j["run_class"] = std::string(to_string(result.run_class));
  j["mass_initial"] = result.initial_mass;
  j["mass_final"] = mass(last.u);
  j["model"] = {{"n", sim.model.n},
                {"alpha", to_string(config.alpha)},
                {"l", to_string(config.l)},
                {"K", sim.model.K},
                {"K0", sim.model.K0},
                {"mode", std::string(to_string(sim.mode))}};
  j["region"] = {{"verdict", std::string(to_string(verdict.tag))}, {"detail", verdict.detail}};
  j["diagnostic_exponents"] = {{"p", result.exponents.p},
                               {"q", result.exponents.q},
                               {"from_certificate", result.exponents.from_certificate}};
  j["domain"] = {{"dims", sim.dims}, {"extent", sim.extent}, {"resolution", sim.resolution}};
  j["initial_data"] = {
      {"preset", std::string(to_string(sim.init.preset))},
      {"mass", sim.init.mass},
      {"amplitude", sim.init.amplitude},
      {"seed", sim.init.seed},
      {"v0", sim.mode == Mode::ParabolicElliptic || sim.init.v0 == SignalInit::Elliptic ? "elliptic" : "zero"},
      {"note", "initial-data shape and amplitude are artifact choices; the underlying theory fixes no magnitudes"}};
  return j;
}

void write_run_outputs(const fs::path& dir, const RunConfig& config, const SimResult& result) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "summary.json");
    out << summary_json(config, result).dump(2) << '\n';
    if (!out) throw Error(fmt::format("cannot write {}", (dir / "summary.json").string()));
  }
  std::ofstream csv(dir / "diagnostics.csv");
  write_diagnostics_csv(csv, result.records);
  if (!csv) throw Error(fmt::format("cannot write {}", (dir / "diagnostics.csv").string()));
}

std::vector<RunConfig> sweep_points(const SweepSpec& spec) {
  std::vector<Rational> alphas = spec.alphas;
  std::vector<Rational> ls = spec.ls;
  std::vector<double> masses = spec.masses;
  std::sort(alphas.begin(), alphas.end());
  std::sort(ls.begin(), ls.end());
  std::sort(masses.begin(), masses.end());
  if (masses.empty()) masses.push_back(spec.base.init.mass);

  std::vector<RunConfig> points;
  points.reserve(alphas.size() * ls.size() * masses.size());
  for (const Rational& a : alphas) {
    for (const Rational& l : ls) {
      for (double m : masses) {
        RunConfig rc{spec.base, a, l};
        rc.sim.model.alpha = to_double(a);
        rc.sim.model.l = to_double(l);
        rc.sim.init.mass = m;
        rc.sim.output.path.clear();
        points.push_back(std::move(rc));
      }
    }
  }
  return points;
}

std::string sweep_csv(const std::vector<SweepPoint>& points, bool with_mass) {
  std::string out = with_mass ? "alpha,l,mass,verdict,termination,final_sup_u\n"
                              : "alpha,l,verdict,termination,final_sup_u\n";
  for (const SweepPoint& p : points) {
    out += to_string(p.alpha);
    out += ',';
    out += to_string(p.l);
    if (with_mass) out += fmt::format(",{:.17g}", p.mass);
    out += fmt::format(",{},{},{:.17g}\n", to_string(p.verdict.tag), to_string(p.termination), p.final_sup_u);
  }
  return out;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, const fs::path& out_dir, int workers) {
  const std::vector<RunConfig> configs = sweep_points(spec);
  if (configs.empty()) throw ConfigError("sweep: empty parameter grid");
  if (workers <= 0) workers = spec.workers;
  workers = std::clamp(workers, 1, static_cast<int>(configs.size()));
  fs::create_directories(out_dir);

  std::vector<SweepPoint> points(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
      try {
        const RunConfig& rc = configs[i];
        SweepPoint& point = points[i];
        point.alpha = rc.alpha;
        point.l = rc.l;
        point.mass = rc.sim.init.mass;
        point.verdict = classify_mode(rc.sim.mode, rc.sim.model.n, rc.alpha, rc.l);
        point.directory = fmt::format("point_{:04d}", i);
        const SimResult result = run(rc.sim);
        point.termination = result.termination;
        point.final_sup_u = sup_norm(result.final_state.u);
        write_run_outputs(out_dir / point.directory, rc, result);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(configs.size());
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::ofstream csv(out_dir / "sweep.csv", std::ios::binary);
  csv << sweep_csv(points, !spec.masses.empty());
  if (!csv) throw Error(fmt::format("cannot write {}", (out_dir / "sweep.csv").string()));
  return points;
}

}  // namespace chemo
