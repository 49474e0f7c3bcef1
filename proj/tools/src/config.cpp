#include "lobatto_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "lobatto/errors.hpp"
#include "lobatto/exact.hpp"

namespace lobatto::cli {

namespace {

struct Origin {
  std::string token;
  std::size_t position = 0;
  bool from_file = false;
};

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

double to_real(const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("expected a real number");
  }
  return value;
}

std::size_t to_count(const std::string& text) {
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("expected an integer");
  if (value < 0) throw std::invalid_argument("expected a non-negative integer");
  return static_cast<std::size_t>(value);
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"system",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "harmonic") c.system = System::harmonic;
         else if (v == "pendulum") c.system = System::pendulum;
         else throw std::invalid_argument("expected harmonic or pendulum");
       }},
      {"scheme",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "lobatto") c.scheme = Scheme::lobatto;
         else if (v == "midpoint") c.scheme = Scheme::midpoint;
         else throw std::invalid_argument("expected lobatto or midpoint");
       }},
      {"meshes", [](ExperimentConfig& c, const std::string& v) { c.meshes = to_count(v); }},
      {"periods", [](ExperimentConfig& c, const std::string& v) { c.periods = to_count(v); }},
      {"mass", [](ExperimentConfig& c, const std::string& v) { c.mass = to_real(v); }},
      {"omega", [](ExperimentConfig& c, const std::string& v) { c.omega = to_real(v); }},
      {"amplitude", [](ExperimentConfig& c, const std::string& v) { c.amplitude = to_real(v); }},
      {"out", [](ExperimentConfig& c, const std::string& v) { c.out = v; }},
      {"levels", [](ExperimentConfig& c, const std::string& v) { c.levels = to_count(v); }},
      {"step", [](ExperimentConfig& c, const std::string& v) { c.step = to_real(v); }},
      {"hw-min", [](ExperimentConfig& c, const std::string& v) { c.hw_min = to_real(v); }},
      {"hw-max", [](ExperimentConfig& c, const std::string& v) { c.hw_max = to_real(v); }},
      {"hw-step", [](ExperimentConfig& c, const std::string& v) { c.hw_step = to_real(v); }},
      {"scan-steps", [](ExperimentConfig& c, const std::string& v) { c.scan_steps = to_count(v); }},
      {"newton-tol",
       [](ExperimentConfig& c, const std::string& v) { c.newton.tolerance = to_real(v); }},
      {"newton-max-iter",
       [](ExperimentConfig& c, const std::string& v) { c.newton.max_iterations = to_count(v); }},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void read_config_file(const std::string& path, std::map<std::string, std::string>& values,
                      std::map<std::string, Origin>& origins) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", path, 0, true);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string content = trim(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key=value in " + path, content, number, true);
    }
    const std::string key = trim(content.substr(0, eq));
    if (!setters().contains(key)) {
      throw ConfigError("unknown config key '" + key + "' in " + path, key, number, true);
    }
    values[key] = trim(content.substr(eq + 1));
    origins[key] = {values[key], number, true};
  }
}

// Index of the token carrying the value of --key in args (either "--key=v" or the token
// after "--key"). Falls back to the last index.
std::size_t value_position(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  std::size_t found = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == flag) found = i + 1 < args.size() ? i + 1 : i;
    else if (args[i].rfind(flag + "=", 0) == 0) found = i;
  }
  return found < args.size() ? found : args.size() - 1;
}

std::size_t first_unknown_token(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      // A bare value is fine only right after a known flag without '='.
      const std::string& prev = args[i - 1];
      if (i > 1 && prev.rfind("--", 0) == 0 && prev.find('=') == std::string::npos) continue;
      return i;
    }
    const std::string key = a.substr(2, a.find('=') - 2);
    if (key != "config" && key != "help" && !setters().contains(key)) return i;
  }
  return args.size() - 1;
}

Command parse_command(const std::string& name) {
  if (name == "trajectory") return Command::trajectory;
  if (name == "convergence") return Command::convergence;
  if (name == "drift") return Command::drift;
  if (name == "stability") return Command::stability;
  throw ConfigError("unknown subcommand '" + name + "'", name, 0);
}

[[noreturn]] void reject(const std::map<std::string, Origin>& origins, const std::string& key,
                         const std::string& why) {
  const auto it = origins.find(key);
  if (it == origins.end()) throw ConfigError(key + ": " + why, key, 0);
  throw ConfigError(key + ": " + why, it->second.token, it->second.position, it->second.from_file);
}

void validate_with(const ExperimentConfig& c, const std::map<std::string, Origin>& origins) {
  if (!(c.mass > 0.0)) reject(origins, "mass", "must be positive");
  if (!(c.omega >= 0.0)) reject(origins, "omega", "must be positive");
  if (c.omega == 0.0 && origins.contains("omega")) reject(origins, "omega", "must be positive");
  if (c.meshes && *c.meshes < 2) reject(origins, "meshes", "needs at least 2 meshes per period");
  if (c.periods < 1) reject(origins, "periods", "needs at least one period");
  if (c.levels < 2 && c.command == Command::convergence) {
    reject(origins, "levels", "a convergence run needs at least 2 levels");
  }
  if (c.step && !(*c.step > 0.0)) reject(origins, "step", "must be positive");
  if (!(c.newton.tolerance > 0.0)) reject(origins, "newton-tol", "must be positive");
  if (c.newton.max_iterations < 1) reject(origins, "newton-max-iter", "must be at least 1");
  if (c.amplitude) {
    if (c.system == System::pendulum && !(*c.amplitude > 0.0 && *c.amplitude < std::numbers::pi)) {
      reject(origins, "amplitude", "pendulum release angle must lie in (0, pi)");
    }
    if (c.system == System::harmonic && !(*c.amplitude > 0.0)) {
      reject(origins, "amplitude", "must be positive");
    }
  }
  if (c.command == Command::stability) {
    if (!(c.hw_min > 0.0 && c.hw_max > c.hw_min)) reject(origins, "hw-max", "needs 0 < hw-min < hw-max");
    if (!(c.hw_step > 0.0)) reject(origins, "hw-step", "must be positive");
    if (c.scan_steps < 1) reject(origins, "scan-steps", "must be at least 1");
  }
  if (c.system == System::harmonic && c.scheme == Scheme::lobatto &&
      c.command != Command::stability) {
    const double hw = c.step_size() * c.omega_or_default();
    if (!(hw < std::sqrt(10.0))) {
      reject(origins, c.step ? "step" : "meshes", "harmonic Lobatto needs h*omega < sqrt(10)");
    }
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string token, std::size_t position,
                         bool from_file)
    : std::runtime_error(message + (from_file ? " (line " : " (argument ") +
                         std::to_string(position) + ", token '" + token + "')"),
      token_(std::move(token)),
      position_(position),
      from_file_(from_file) {}

double ExperimentConfig::omega_or_default() const {
  return omega > 0.0 ? omega : 2.0 * std::numbers::pi;
}

double ExperimentConfig::amplitude_or_default() const {
  return amplitude.value_or(std::numbers::pi / 2.0);
}

std::size_t ExperimentConfig::meshes_or_default() const {
  if (meshes) return *meshes;
  return system == System::harmonic ? 10 : 50;
}

double ExperimentConfig::period() const {
  return simulation(meshes_or_default(), 1).exact_period();
}

double ExperimentConfig::step_size() const {
  if (step) return *step;
  SimulationSpec spec;
  spec.system = system;
  spec.mass = mass;
  spec.omega = omega_or_default();
  spec.amplitude = amplitude_or_default();
  return spec.exact_period() / static_cast<double>(meshes_or_default());
}

SimulationSpec ExperimentConfig::simulation(std::size_t n, std::size_t count) const {
  SimulationSpec spec;
  spec.system = system;
  spec.scheme = scheme;
  spec.mass = mass;
  spec.omega = omega_or_default();
  spec.amplitude = amplitude_or_default();
  spec.step = spec.exact_period() / static_cast<double>(n);
  spec.steps = n * count;
  spec.newton = newton;
  return spec;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw ConfigError("missing subcommand", "", 0);

  ExperimentConfig config;
  config.command = parse_command(args[0]);

  CLI::App app{"lobatto experiments"};
  app.allow_extras(false);
  app.set_help_flag();
  std::map<std::string, std::string> flag_values;
  for (const auto& [key, setter] : setters()) app.add_option("--" + key, flag_values[key]);
  std::string config_path;
  app.add_option("--config", config_path);

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const std::size_t at = first_unknown_token(args);
    throw ConfigError(e.what(), args[at], at);
  }

  std::map<std::string, std::string> values;
  std::map<std::string, Origin> origins;
  if (!config_path.empty()) read_config_file(config_path, values, origins);
  for (const auto& [key, setter] : setters()) {
    if (app.get_option("--" + key)->count() == 0) continue;
    const std::size_t at = value_position(args, key);
    values[key] = flag_values[key];
    origins[key] = {flag_values[key], at, false};
  }

  for (const auto& [key, value] : values) {
    try {
      setters().at(key)(config, value);
    } catch (const std::invalid_argument& e) {
      const Origin& o = origins.at(key);
      throw ConfigError(key + ": " + e.what(), o.token, o.position, o.from_file);
    }
  }
  validate_with(config, origins);
  return config;
}

void validate(const ExperimentConfig& config) { validate_with(config, {}); }

std::string usage() {
  std::ostringstream os;
  os << "usage: lobatto_cli <trajectory|convergence|drift|stability> [options]\n"
        "  --system harmonic|pendulum   --scheme lobatto|midpoint\n"
        "  --meshes N   --periods P   --mass m   --omega w   --amplitude A\n"
        "  --out FILE   --config FILE (key=value lines; flags override)\n"
        "  convergence: --levels L      drift: --step h\n"
        "  stability:   --hw-min --hw-max --hw-step --scan-steps\n"
        "  solver:      --newton-tol --newton-max-iter\n"
        "exit codes: 0 success, 2 config error, 3 solver failure\n";
  return os.str();
}

}  // namespace lobatto::cli
