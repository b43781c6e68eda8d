// Command-line front end: classify, certificate, region, simulate, sweep.
//
// Exit codes: 0 success, 1 negative verification or classification,
// 2 usage or configuration error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <json.hpp>

#include "chemo/certificate.hpp"
#include "chemo/config.hpp"
#include "chemo/errors.hpp"
#include "chemo/model.hpp"
#include "chemo/region.hpp"
#include "chemo/solver.hpp"
#include "chemo/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

chemo::Mode mode_from_flag(const std::string& text) {
  if (text == "pp") return chemo::Mode::ParabolicParabolic;
  if (text == "pe") return chemo::Mode::ParabolicElliptic;
  throw chemo::ConfigError(fmt::format("--mode must be pp or pe, got '{}'", text));
}

chemo::Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return chemo::parse_rational(text);
  } catch (const chemo::DomainError& e) {
    throw chemo::ConfigError(fmt::format("{}: {}", name, e.what()));
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chemo::ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw chemo::Error(fmt::format("cannot write '{}'", path.string()));
}

struct ClassifyArgs {
  int n = 0;
  std::string alpha, l, mode = "pp";
};

int cmd_classify(const ClassifyArgs& a) {
  const chemo::Mode mode = mode_from_flag(a.mode);
  const chemo::Rational alpha = rational_flag("--alpha", a.alpha);
  const chemo::Rational l = rational_flag("--l", a.l);
  const chemo::RegionVerdict v = chemo::classify_mode(mode, a.n, alpha, l);
  const nlohmann::json out = {{"n", a.n},
                              {"alpha", chemo::to_string(alpha)},
                              {"l", chemo::to_string(l)},
                              {"mode", std::string(chemo::to_string(mode))},
                              {"verdict", std::string(chemo::to_string(v.tag))},
                              {"detail", v.detail}};
  std::cout << out.dump(2) << '\n';
  return v.tag == chemo::RegionTag::TheoremRegion ? kOk : kNegative;
}

struct CertificateArgs {
  int n = 0;
  std::string alpha, l, verify_only, output;
  int budget = chemo::kDefaultSearchBudget;
};

int cmd_certificate(const CertificateArgs& a) {
  chemo::Certificate cert;
  if (!a.verify_only.empty()) {
    cert = chemo::parse_certificate(read_text(a.verify_only));
  } else {
    if (a.n == 0 || a.alpha.empty() || a.l.empty()) {
      throw chemo::ConfigError("certificate needs --n, --alpha and --l (or --verify-only FILE)");
    }
    const chemo::Rational alpha = rational_flag("--alpha", a.alpha);
    const chemo::Rational l = rational_flag("--l", a.l);
    try {
      cert = chemo::build_certificate(a.n, alpha, l, a.budget);
    } catch (const chemo::SearchFailure& e) {
      std::cerr << e.what() << '\n';
      return kNegative;
    } catch (const chemo::InfeasibleError& e) {
      std::cerr << e.what() << '\n';
      return kNegative;
    } catch (const chemo::ConstraintViolation& e) {
      std::cerr << e.what() << '\n';
      return kNegative;
    }
  }
  const chemo::VerificationReport report = chemo::verify_certificate(cert);
  const std::string text = chemo::serialize_certificate(cert, report);
  if (!a.output.empty()) write_text(a.output, text);
  std::cout << text;
  for (const chemo::Check& c : report.checks) {
    if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
  }
  return report.all_passed() ? kOk : kNegative;
}

struct RegionArgs {
  int n = 0;
  int samples = 0;
  std::string output;
};

int cmd_region(const RegionArgs& a) {
  const auto rows = chemo::region_table(a.n, a.samples);
  std::ostringstream csv;
  chemo::write_region_csv(csv, rows);
  if (a.output.empty()) {
    std::cout << csv.str();
  } else {
    write_text(a.output, csv.str());
  }
  return kOk;
}

struct SimulateArgs {
  std::string config, output;
};

int cmd_simulate(const SimulateArgs& a) {
  const chemo::RunConfig rc = chemo::load_run_config(a.config);
  const chemo::SimResult result = chemo::run(rc.sim);
  const std::string dir = a.output.empty() ? rc.sim.output.path : a.output;
  if (!dir.empty()) chemo::write_run_outputs(dir, rc, result);
  std::cout << chemo::summary_json(rc, result).dump(2) << '\n';
  return kOk;
}

struct SweepArgs {
  std::string spec, output;
  int workers = 0;
};

int cmd_sweep(const SweepArgs& a) {
  const chemo::SweepSpec spec = chemo::load_sweep_spec(a.spec);
  const std::string dir = a.output.empty() ? spec.base.output.path : a.output;
  if (dir.empty()) throw chemo::ConfigError("sweep needs --output DIR or output.path");
  const auto points = chemo::run_sweep(spec, dir, a.workers);
  std::cout << chemo::sweep_csv(points, !spec.masses.empty());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chemotaxis boundedness toolkit: region classification, exponent certificates, simulation"};
  app.require_subcommand(1);

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Classify (n, alpha, l) against the known boundedness regions");
  c->add_option("--n", classify.n, "Spatial dimension (>= 2)")->required();
  c->add_option("--alpha", classify.alpha, "Sensitivity exponent (decimal or a/b)")->required();
  c->add_option("--l", classify.l, "Production exponent (decimal or a/b)")->required();
  c->add_option("--mode", classify.mode, "pp or pe")->required();

  CertificateArgs certificate;
  auto* cert = app.add_subcommand("certificate", "Build and verify an exponent certificate");
  cert->add_option("--n", certificate.n, "Spatial dimension (>= 2)");
  cert->add_option("--alpha", certificate.alpha, "Sensitivity exponent");
  cert->add_option("--l", certificate.l, "Production exponent");
  cert->add_option("--budget", certificate.budget, "Number of (theta, mu) pairs to try")->check(CLI::PositiveNumber);
  cert->add_option("--verify-only", certificate.verify_only, "Verify an existing certificate file")
      ->check(CLI::ExistingFile);
  cert->add_option("--output", certificate.output, "Also write the certificate to this file");

  RegionArgs region;
  auto* reg = app.add_subcommand("region", "Tabulate region boundaries as CSV");
  reg->add_option("--n", region.n, "Spatial dimension (>= 2)")->required();
  reg->add_option("--samples", region.samples, "Number of l samples (>= 2)")->required();
  reg->add_option("--output", region.output, "CSV file (stdout when omitted)");

  SimulateArgs simulate;
  auto* sim = app.add_subcommand("simulate", "Run one simulation from a config file");
  sim->add_option("config", simulate.config, "INI configuration")->required()->check(CLI::ExistingFile);
  sim->add_option("--output", simulate.output, "Output directory (overrides output.path)");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Run a parameter sweep from a sweep file");
  sw->add_option("file", sweep.spec, "INI sweep file")->required()->check(CLI::ExistingFile);
  sw->add_option("--output", sweep.output, "Output directory (overrides output.path)");
  sw->add_option("--workers", sweep.workers, "Worker threads (overrides sweep.workers)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_classify(classify);
    if (cert->parsed()) return cmd_certificate(certificate);
    if (reg->parsed()) return cmd_region(region);
    if (sim->parsed()) return cmd_simulate(simulate);
    if (sw->parsed()) return cmd_sweep(sweep);
  } catch (const chemo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const chemo::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const chemo::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}
