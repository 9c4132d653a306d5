#pragma once

#include <filesystem>
#include <string>

#include "hammersley/coupling.hpp"
#include "hammersley/engine.hpp"

namespace hammersley {

/// 17 significant digits; round-trips every double.
std::string format_coord(double v);

/// Thrown when a file cannot be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_points_csv(const std::filesystem::path& path, const Points1D& p);
void write_points_csv(const std::filesystem::path& path, const Points2D& p);
Points1D read_points1d_csv(const std::filesystem::path& path);
Points2D read_points2d_csv(const std::filesystem::path& path);

/// Columns time,kind,from_x,to_x with kind in {AJ, AC, SC, SV}.
void write_event_log_csv(const std::filesystem::path& path, const EventLog& log);
std::string event_kind_code(EventKind k);

/// beta.csv, east.csv, north.csv and consumed.csv inside `dir`.
void write_boundary_csv(const std::filesystem::path& dir, const BoundaryTally& b);

/// Header t,x; one row per jump, preceded by the starting point (0, 0).
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr);

}  // namespace hammersley
