#include "hammersley/config.hpp"

#include <fstream>
#include <sstream>

namespace hammersley {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ConfigError("bad number for " + key + ": '" + v + "'");
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-')
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  return n;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
  };
  if (lambda) positive(*lambda, "lambda");
  positive(gamma, "gamma");
  positive(delta, "delta");
  positive(a, "a");
  positive(window, "window");
  if (t1) positive(*t1, "t1");
  if (t2) positive(*t2, "t2");
  if (replications && *replications < 1) throw ConfigError("reps must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "lambda") cfg.lambda = to_double(key, value);
  else if (key == "gamma") cfg.gamma = to_double(key, value);
  else if (key == "delta") cfg.delta = to_double(key, value);
  else if (key == "t1") cfg.t1 = to_double(key, value);
  else if (key == "t2") cfg.t2 = to_double(key, value);
  else if (key == "a") cfg.a = to_double(key, value);
  else if (key == "reps" || key == "replications") cfg.replications = to_u64(key, value);
  else if (key == "seed") cfg.seed = to_u64(key, value);
  else if (key == "out" || key == "output_dir") cfg.output_dir = value;
  else if (key == "alpha") cfg.alpha = to_double(key, value);
  else if (key == "window") cfg.window = to_double(key, value);
  else if (key == "experiment") cfg.experiment = value;
  else throw ConfigError("unknown key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    try {
      apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::map<std::string, std::string>& overrides) {
  ExperimentConfig cfg;
  if (path) cfg = load_config_file(*path, cfg);
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

}  // namespace hammersley
