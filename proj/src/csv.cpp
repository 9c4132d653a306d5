#include "hammersley/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hammersley/errors.hpp"

namespace hammersley {

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, std::size_t cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;  // header
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": bad number");
      }
    }
    if (row.size() != cols)
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_points_csv(const std::filesystem::path& path, const Points1D& p) {
  auto out = open_out(path);
  out << "x\n";
  for (double v : p) out << format_coord(v) << '\n';
  finish(out, path);
}

void write_points_csv(const std::filesystem::path& path, const Points2D& p) {
  auto out = open_out(path);
  out << "x,t\n";
  for (const auto& q : p) out << format_coord(q.x) << ',' << format_coord(q.t) << '\n';
  finish(out, path);
}

Points1D read_points1d_csv(const std::filesystem::path& path) {
  Points1D p;
  for (const auto& r : read_rows(path, 1)) p.push_back(r[0]);
  return p;
}

Points2D read_points2d_csv(const std::filesystem::path& path) {
  Points2D p;
  for (const auto& r : read_rows(path, 2)) p.push_back({r[0], r[1]});
  std::sort(p.begin(), p.end(), time_order);
  return p;
}

std::string event_kind_code(EventKind k) {
  switch (k) {
    case EventKind::AlphaJump: return "AJ";
    case EventKind::AlphaCreate: return "AC";
    case EventKind::SinkConsume: return "SC";
    case EventKind::SinkVoid: return "SV";
  }
  return "?";
}

void write_event_log_csv(const std::filesystem::path& path, const EventLog& log) {
  auto out = open_out(path);
  out << "time,kind,from_x,to_x\n";
  for (const auto& e : log.events) {
    out << format_coord(e.time) << ',' << event_kind_code(e.kind) << ',';
    if (!std::isnan(e.from)) out << format_coord(e.from);
    out << ',';
    if (!std::isnan(e.to)) out << format_coord(e.to);
    out << '\n';
  }
  finish(out, path);
}

void write_boundary_csv(const std::filesystem::path& dir, const BoundaryTally& b) {
  write_points_csv(dir / "beta.csv", b.beta);
  write_points_csv(dir / "east.csv", b.east_entries);
  write_points_csv(dir / "north.csv", b.north_exits);
  write_points_csv(dir / "consumed.csv", b.consumed_sink_times);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr) {
  auto out = open_out(path);
  out << "t,x\n0,0\n";
  for (const auto& j : tr.jumps) out << format_coord(j.time) << ',' << format_coord(j.pos) << '\n';
  finish(out, path);
}

}  // namespace hammersley
