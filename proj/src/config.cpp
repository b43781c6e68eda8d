#include "chemo/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chemo/errors.hpp"

namespace chemo {

namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Strips trailing "# ..." / "; ..." comments, which the INI reader keeps in values.
std::string clean_value(std::string_view raw) {
  std::string_view v = raw;
  const auto hash = v.find_first_of("#;");
  if (hash != std::string_view::npos) v = v.substr(0, hash);
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

using Schema = std::map<std::string, std::set<std::string>>;

/// Flattens the tree into "section.key" -> value after checking the schema.
std::map<std::string, std::string> read_ini(std::string_view text, const Schema& schema) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  std::map<std::string, std::string> flat;
  for (const auto& [section, body] : tree) {
    const auto allowed = schema.find(section);
    if (allowed == schema.end() || body.empty()) {
      throw ConfigError(fmt::format("config: unknown section or top-level key '{}'", section));
    }
    for (const auto& [key, node] : body) {
      if (!allowed->second.contains(key)) throw ConfigError(fmt::format("config: unknown key '{}.{}'", section, key));
      flat[section + "." + key] = clean_value(node.data());
    }
  }
  return flat;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.contains(key); }

  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(fmt::format("config: missing required key '{}'", key));
    return it->second;
  }

  Rational rational(const std::string& key) const {
    try {
      return parse_rational(raw(key));
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("config: {}: {}", key, e.what()));
    }
  }

  double real(const std::string& key) const { return to_double(rational(key)); }
  double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

  long long integer(const std::string& key) const {
    const std::string& text = raw(key);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigError(fmt::format("config: {} = '{}' is not an integer", key, text));
    }
    return value;
  }
  long long integer(const std::string& key, long long fallback) const { return has(key) ? integer(key) : fallback; }

  std::string text(const std::string& key, std::string fallback) const { return has(key) ? raw(key) : fallback; }

 private:
  std::map<std::string, std::string> values_;
};

Schema base_schema() {
  return {
      {"model", {"n", "alpha", "l", "K", "K0", "mode"}},
      {"domain", {"dims", "extent", "resolution"}},
      {"time", {"t_end", "dt_max", "safety", "dt_min"}},
      {"init", {"preset", "mass", "amplitude", "seed", "v0"}},
      {"output", {"path", "stride", "growth_threshold"}},
  };
}

Mode parse_mode(std::string_view text) {
  if (text == "pp") return Mode::ParabolicParabolic;
  if (text == "pe") return Mode::ParabolicElliptic;
  throw ConfigError(fmt::format("config: model.mode = '{}' (expected pp or pe)", text));
}

SignalInit parse_signal_init(std::string_view text) {
  if (text == "zero") return SignalInit::Zero;
  if (text == "elliptic") return SignalInit::Elliptic;
  throw ConfigError(fmt::format("config: init.v0 = '{}' (expected zero or elliptic)", text));
}

std::array<double, 2> parse_extent(std::string_view text) {
  std::array<double, 2> extent{};
  const auto comma = text.find(',');
  try {
    if (comma == std::string_view::npos) {
      extent[0] = extent[1] = to_double(parse_rational(trim(text)));
    } else {
      extent[0] = to_double(parse_rational(trim(text.substr(0, comma))));
      extent[1] = to_double(parse_rational(trim(text.substr(comma + 1))));
    }
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("config: domain.extent: {}", e.what()));
  }
  if (!(extent[0] > 0 && extent[1] > 0)) throw ConfigError("config: domain.extent must be positive");
  return extent;
}

/// Everything but model.alpha / model.l, which the caller fills in.
SimConfig read_sim_config(const Reader& r) {
  SimConfig c;
  c.model.n = static_cast<int>(r.integer("model.n"));
  c.model.K = r.real("model.K", 1.0);
  c.model.K0 = r.real("model.K0", 1.0);
  c.mode = parse_mode(r.text("model.mode", "pp"));

  c.dims = static_cast<int>(r.integer("domain.dims"));
  c.extent = parse_extent(r.raw("domain.extent"));
  c.resolution = static_cast<int>(r.integer("domain.resolution"));
  if (c.dims == 1) c.extent[1] = 1.0;

  c.time.t_end = r.real("time.t_end");
  c.time.dt_max = r.real("time.dt_max", c.time.dt_max);
  c.time.safety = r.real("time.safety", c.time.safety);
  c.time.dt_min = r.real("time.dt_min", c.time.dt_min);

  try {
    c.init.preset = parse_preset(r.raw("init.preset"));
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("config: init.preset: {}", e.what()));
  }
  c.init.mass = r.real("init.mass");
  c.init.amplitude = r.real("init.amplitude", c.init.amplitude);
  const long long seed = r.integer("init.seed", 0);
  if (seed < 0) throw ConfigError("config: init.seed must be >= 0");
  c.init.seed = static_cast<std::uint64_t>(seed);
  c.init.v0 = parse_signal_init(r.text("init.v0", "zero"));

  c.output.path = r.text("output.path", "");
  c.output.stride = static_cast<int>(r.integer("output.stride", c.output.stride));
  c.output.growth_threshold = r.real("output.growth_threshold", c.output.growth_threshold);
  return c;
}

void validate_or_rethrow(const SimConfig& c) {
  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("config: cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
  text = trim(text);
  std::vector<Rational> out;
  try {
    if (text.starts_with("linspace(") && text.ends_with(")")) {
      const std::string_view args = text.substr(9, text.size() - 10);
      std::vector<std::string_view> parts;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= args.size(); ++i) {
        if (i == args.size() || args[i] == ',') {
          parts.push_back(trim(args.substr(start, i - start)));
          start = i + 1;
        }
      }
      if (parts.size() != 3) throw ConfigError(fmt::format("config: '{}' needs linspace(a, b, count)", text));
      const Rational a = parse_rational(parts[0]);
      const Rational b = parse_rational(parts[1]);
      const Rational count = parse_rational(parts[2]);
      if (count.get_den() != 1 || count < 1) throw ConfigError(fmt::format("config: linspace count in '{}'", text));
      const long k = count.get_num().get_si();
      if (k == 1) return {a};
      for (long i = 0; i < k; ++i) {
        const Rational x = a + (b - a) * ratio(i, k - 1);
        out.push_back(x);
      }
      return out;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ',') {
        out.push_back(parse_rational(trim(text.substr(start, i - start))));
        start = i + 1;
      }
    }
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("config: list '{}': {}", text, e.what()));
  }
  if (out.empty()) throw ConfigError("config: empty list");
  return out;
}

RunConfig parse_run_config(std::string_view text) {
  const Reader r(read_ini(text, base_schema()));
  RunConfig rc{read_sim_config(r), r.rational("model.alpha"), r.rational("model.l")};
  rc.sim.model.alpha = to_double(rc.alpha);
  rc.sim.model.l = to_double(rc.l);
  validate_or_rethrow(rc.sim);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_file(path)); }

SweepSpec parse_sweep_spec(std::string_view text) {
  Schema schema = base_schema();
  schema["model"].erase("alpha");
  schema["model"].erase("l");
  schema["sweep"] = {"alpha", "l", "mass", "workers"};
  const Reader r(read_ini(text, schema));

  SweepSpec spec{read_sim_config(r), parse_rational_list(r.raw("sweep.alpha")), parse_rational_list(r.raw("sweep.l")),
                 {}, static_cast<int>(r.integer("sweep.workers", 1))};
  if (r.has("sweep.mass")) {
    for (const Rational& m : parse_rational_list(r.raw("sweep.mass"))) spec.masses.push_back(to_double(m));
  }
  if (spec.workers < 1) throw ConfigError("config: sweep.workers must be >= 1");
  // Validate the base against the first point; every point is revalidated when run.
  spec.base.model.alpha = to_double(spec.alphas.front());
  spec.base.model.l = to_double(spec.ls.front());
  validate_or_rethrow(spec.base);
  for (double m : spec.masses) {
    if (!(m > 0)) throw ConfigError("config: sweep.mass entries must be positive");
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) { return parse_sweep_spec(read_file(path)); }

}  // namespace chemo
