#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hammersley/config.hpp"
#include "hammersley/stats.hpp"
#include "hammersley/svg.hpp"

namespace hammersley {

/// CSV data product; cells are preformatted.
struct Table {
  std::string filename;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Plot {
  std::string filename;
  std::string title;
  std::vector<Series> series;
};

struct SuiteOutput {
  std::vector<TestReport> reports;
  std::vector<Table> tables;
  std::vector<Plot> plots;
  std::vector<std::uint64_t> stream_ids;

  bool pass() const;
  void append(SuiteOutput other);
};

// One function per acceptance criterion. Each reads only the fields of
// `cfg` it documents and falls back to the acceptance defaults otherwise.

SuiteOutput lis_ground_truth();
SuiteOutput lis_oracle_equivalence(const ExperimentConfig& cfg);   // reps: trials (1e4)
SuiteOutput lis_crossings(const ExperimentConfig& cfg);            // reps: 1e4, t1=t2=20
SuiteOutput time_reversal_sweep(const ExperimentConfig& cfg);      // reps: 1e3, t1=t2=30
SuiteOutput pathwise_couplings(const ExperimentConfig& cfg);       // reps: 1e3, t1=t2=20
/// X_t/t bands; with `include_lr` also X'_x/x for each lambda.
SuiteOutput second_class_slopes(const ExperimentConfig& cfg, bool include_lr);  // t2=2000, reps 100
SuiteOutput flux_statistics(const ExperimentConfig& cfg);             // gamma, delta, t2=2000, reps 100
SuiteOutput burke_suite(const ExperimentConfig& cfg);              // lambda, t1=t2=50, reps 200
SuiteOutput duality_check(const ExperimentConfig& cfg);            // lambda, t1=2, reps 1e5
SuiteOutput local_poisson(const ExperimentConfig& cfg);            // a, t2=1000, window, reps 100
SuiteOutput ulam_curve(const ExperimentConfig& cfg);               // reps 200
SuiteOutput weak_path_trend(const ExperimentConfig& cfg);          // reps 100
SuiteOutput vt_table(const ExperimentConfig& cfg);                 // t2=1000, reps 4
SuiteOutput simulate_once(const ExperimentConfig& cfg);            // lambda, t1=t2=10

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "simulate", "burke", "scp", "flux", "reverse", "duality",
      "lis", "ulam", "local-poisson", "weak-path", "vt"};
  return names;
}

/// Runs a subcommand; throws std::invalid_argument for unknown names.
SuiteOutput run_suite(const std::string& subcommand, const ExperimentConfig& cfg);

/// Writes tables, plots, report.json and manifest.json into
/// cfg.output_dir; returns the list of files written. Throws IoError.
std::vector<std::string> emit_outputs(const std::string& subcommand, const ExperimentConfig& cfg,
                                      const SuiteOutput& out);

}  // namespace hammersley
