#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hammersley/csv.hpp"
#include "hammersley/experiments.hpp"
#include "json.hpp"

namespace hammersley {

namespace {

using nlohmann::json;

json config_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  j["gamma"] = c.gamma;
  j["delta"] = c.delta;
  j["t1"] = c.t1 ? json(*c.t1) : json(nullptr);
  j["t2"] = c.t2 ? json(*c.t2) : json(nullptr);
  j["a"] = c.a;
  j["replications"] = c.replications ? json(*c.replications) : json(nullptr);
  j["seed"] = c.seed;
  j["alpha"] = c.alpha;
  j["window"] = c.window;
  return j;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

std::string table_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += '\n';
  }
  return s;
}

}  // namespace

SuiteOutput run_suite(const std::string& sub, const ExperimentConfig& cfg) {
  if (sub == "simulate") return simulate_once(cfg);
  if (sub == "burke") return burke_suite(cfg);
  if (sub == "scp") return second_class_slopes(cfg, true);
  if (sub == "flux") {
    auto out = pathwise_couplings(cfg);
    out.append(flux_statistics(cfg));
    return out;
  }
  if (sub == "reverse") return time_reversal_sweep(cfg);
  if (sub == "duality") return duality_check(cfg);
  if (sub == "lis") {
    auto out = lis_ground_truth();
    out.append(lis_oracle_equivalence(cfg));
    out.append(lis_crossings(cfg));
    return out;
  }
  if (sub == "ulam") return ulam_curve(cfg);
  if (sub == "local-poisson") return local_poisson(cfg);
  if (sub == "weak-path") return weak_path_trend(cfg);
  if (sub == "vt") return vt_table(cfg);
  throw std::invalid_argument("unknown subcommand: " + sub);
}

std::vector<std::string> emit_outputs(const std::string& sub, const ExperimentConfig& cfg, const SuiteOutput& out) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  std::vector<std::string> files;
  for (const auto& t : out.tables) {
    write_text(cfg.output_dir / t.filename, table_csv(t));
    files.push_back(t.filename);
  }
  for (const auto& p : out.plots) {
    write_svg_plot(cfg.output_dir / p.filename, p.title, p.series);
    files.push_back(p.filename);
  }

  json reports = json::array();
  for (const auto& r : out.reports)
    reports.push_back({{"name", r.name},
                       {"statistic", finite_or_null(r.statistic)},
                       {"p_value", finite_or_null(r.p_value)},
                       {"alpha", r.alpha},
                       {"n", r.n},
                       {"pass", r.pass},
                       {"notes", r.notes}});
  json report{{"experiment", sub}, {"config", config_json(cfg)}, {"reports", reports}, {"pass", out.pass()}};
  write_text(cfg.output_dir / "report.json", report.dump(2) + "\n");
  files.push_back("report.json");

  json manifest{{"experiment", sub},
                {"config", config_json(cfg)},
                {"seed", cfg.seed},
                {"stream_id_ranges", json::array()},
                {"files", files}};
  for (std::size_t i = 0; i + 1 < out.stream_ids.size(); i += 2)
    manifest["stream_id_ranges"].push_back({out.stream_ids[i], out.stream_ids[i + 1]});
  write_text(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
  files.push_back("manifest.json");
  return files;
}

}  // namespace hammersley
