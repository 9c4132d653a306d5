#pragma once

#include <cstddef>
#include <span>

#include "hammersley/point_process.hpp"

namespace hammersley {

/// Longest chain with both coordinates strictly increasing, O(n log n).
std::size_t lis_patience(std::span<const Point2> p);

/// Quadratic longest-chain DP; refuses more than `kBruteforceCap` points.
inline constexpr std::size_t kBruteforceCap = 20;
std::size_t lis_bruteforce(std::span<const Point2> p);

struct WeakPathInstance {
  Points2D interior;
  Points1D sources;  ///< positions on the x-axis
  Points1D sinks;    ///< times on the y-axis
  Point2 target;
};

/// Longest weakly North-East path to the target: axis points from one axis
/// first, then a strict chain of interior points beyond the last axis point.
std::size_t lis_weak(const WeakPathInstance& w);

struct WeakPathResult {
  std::size_t length = 0;
  /// Largest coordinate of the last axis point over all optimal paths; 0
  /// when only axis-free paths are optimal.
  double departure = 0.0;
};

WeakPathResult weak_path(const WeakPathInstance& w);
double weak_axis_departure(const WeakPathInstance& w);

/// Runs the particle process on the instance and compares the longest weak
/// path to the box corner with the number of space-time paths meeting the
/// box. Without sources or sinks it also compares the strict LIS with the
/// final particle count.
bool check_lis_equals_crossings(const Points2D& interior, const Points1D& sources,
                                const Points1D& sinks, const Rect& box);

}  // namespace hammersley
