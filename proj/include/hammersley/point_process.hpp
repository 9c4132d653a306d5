#pragma once

#include <compare>
#include <span>
#include <utility>
#include <vector>

#include "hammersley/random.hpp"

namespace hammersley {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double length() const noexcept { return hi - lo; }
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

struct Rect {
  Interval x;
  Interval t;

  double area() const noexcept { return x.length() * t.length(); }
  bool contains(double px, double pt) const noexcept {
    return x.contains(px) && t.contains(pt);
  }
};

/// A planar point; `t` is the time coordinate.
struct Point2 {
  double x = 0.0;
  double t = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Order used for Points2D: by time, then position.
constexpr bool time_order(const Point2& a, const Point2& b) noexcept {
  return a.t < b.t || (a.t == b.t && a.x < b.x);
}

/// Strictly increasing coordinates on some interval.
using Points1D = std::vector<double>;
/// Planar points sorted by `time_order`.
using Points2D = std::vector<Point2>;

bool is_valid_points1d(std::span<const double> p, const Interval& iv);
bool is_valid_points2d(std::span<const Point2> p, const Rect& r);

/// Homogeneous Poisson process on `iv`, generated by exponential gaps.
Points1D sample_poisson_1d(const Interval& iv, double rate, RandomStream& rng);
Points1D sample_poisson_1d(const Interval& iv, double rate, const UnitStream& stream);

/// Streaming generator of a planar Poisson process in time order.
///
/// Times are the arrivals of a rate `rate * |r.x|` process on `r.t`; each
/// arrival gets an independent uniform position on `r.x`. This is the same
/// law as a Poisson(rate * area) count with uniform placement, already
/// sorted by time.
class PoissonPlaneStream {
 public:
  PoissonPlaneStream(const Rect& r, double rate, const UnitStream& stream);

  bool done() const noexcept { return done_; }
  const Point2& current() const noexcept { return cur_; }
  void advance();

 private:
  Rect rect_;
  double time_rate_;
  RandomStream rng_;
  Point2 cur_;
  bool done_ = false;
};

Points2D sample_poisson_2d(const Rect& r, double rate, const UnitStream& stream);

struct ThinResult {
  Points1D kept;
  Points1D removed;
};

/// Keeps each point independently with probability `keep_prob`.
ThinResult thin(std::span<const double> p, double keep_prob, RandomStream& rng);
ThinResult thin(std::span<const double> p, double keep_prob, const UnitStream& stream);

/// Sorted union of two point sets.
Points1D superpose(std::span<const double> a, std::span<const double> b);

/// Point reflection through the centre of `r`; throws InvalidInput for
/// points outside `r`.
Points2D rotate180(std::span<const Point2> p, const Rect& r);

/// Swaps the two coordinates of every point (result re-sorted by time).
Points2D transpose_points(std::span<const Point2> p);

}  // namespace hammersley
