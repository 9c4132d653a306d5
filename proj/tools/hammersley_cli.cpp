// Command-line front end: hammersley <subcommand> [options]

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hammersley/config.hpp"
#include "hammersley/csv.hpp"
#include "hammersley/errors.hpp"
#include "hammersley/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace hammersley;

  CLI::App app{"Hammersley process simulator and verification suites"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::map<std::string, std::string> flags;
  const std::vector<std::string> keys = {"lambda", "gamma", "delta", "t1", "t2", "a",
                                         "reps",   "seed",  "out",   "alpha", "window"};
  app.add_option("--config", config_path, "key=value configuration file");
  for (const auto& k : keys)
    app.add_option_function<std::string>("--" + k, [&flags, k](const std::string& v) { flags[k] = v; },
                                         "override " + k);
  for (const auto& name : subcommands()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  ExperimentConfig cfg;
  try {
    std::optional<std::filesystem::path> path;
    if (!config_path.empty()) path = config_path;
    cfg = load_config(path, flags);
    cfg.experiment = sub;
    cfg.validate();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  SuiteOutput out;
  try {
    out = run_suite(sub, cfg);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    emit_outputs(sub, cfg, out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  for (const auto& r : out.reports)
    std::printf("%s %-40s stat=%-12.6g p=%-10.4g %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.statistic,
                r.p_value, r.notes.c_str());
  std::printf("%s: %s (outputs in %s)\n", sub.c_str(), out.pass() ? "pass" : "FAIL", cfg.output_dir.c_str());
  return out.pass() ? 0 : kExitFail;
}
