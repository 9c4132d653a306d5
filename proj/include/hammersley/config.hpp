#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace hammersley {

/// Malformed configuration; the message names the offending line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unset optional fields take the per-experiment defaults documented in
/// the README.
struct ExperimentConfig {
  std::string experiment;
  std::optional<double> lambda;  ///< unset: 1, or the experiment's sweep
  double gamma = 1.0;
  double delta = 1.5;
  std::optional<double> t1;
  std::optional<double> t2;
  double a = 1.0;
  std::optional<std::uint64_t> replications;
  std::uint64_t seed = 20050601;
  std::filesystem::path output_dir = "out";
  double alpha = 0.01;
  double window = 50.0;

  /// Throws ConfigError for nonpositive sizes or intensities.
  void validate() const;
};

/// Applies `key=value` pairs to the config; keys are lambda, gamma, delta,
/// t1, t2, a, reps, seed, out, alpha, window, experiment.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key=value` lines; `#` starts a comment and blank lines are
/// ignored.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

/// File values first, then each flag in `overrides` on top.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::map<std::string, std::string>& overrides);

}  // namespace hammersley
