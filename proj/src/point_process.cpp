#include "hammersley/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hammersley/errors.hpp"

namespace hammersley {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw InvalidParameter("interval requires lo <= hi");
}

bool is_valid_points1d(std::span<const double> p, const Interval& iv) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!iv.contains(p[i])) return false;
    if (i > 0 && !(p[i - 1] < p[i])) return false;
  }
  return true;
}

bool is_valid_points2d(std::span<const Point2> p, const Rect& r) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!r.contains(p[i].x, p[i].t)) return false;
    if (i > 0 && !time_order(p[i - 1], p[i])) return false;
  }
  return true;
}

namespace {

void check_rate(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw InvalidParameter("rate must be finite and >= 0, got " + std::to_string(rate));
}

}  // namespace

Points1D sample_poisson_1d(const Interval& iv, double rate, RandomStream& rng) {
  check_rate(rate);
  Points1D out;
  if (rate == 0.0) return out;
  out.reserve(static_cast<std::size_t>(rate * iv.length() * 1.1) + 8);
  double pos = iv.lo + rng.exponential(rate);
  while (pos <= iv.hi) {
    out.push_back(pos);
    pos += rng.exponential(rate);
  }
  return out;
}

Points1D sample_poisson_1d(const Interval& iv, double rate, const UnitStream& stream) {
  RandomStream rng(stream);
  return sample_poisson_1d(iv, rate, rng);
}

PoissonPlaneStream::PoissonPlaneStream(const Rect& r, double rate, const UnitStream& stream)
    : rect_(r), time_rate_(rate * r.x.length()), rng_(stream) {
  check_rate(rate);
  if (time_rate_ <= 0.0) {
    done_ = true;
    return;
  }
  cur_.t = r.t.lo;
  advance();
}

void PoissonPlaneStream::advance() {
  if (done_) return;
  cur_.t += rng_.exponential(time_rate_);
  if (cur_.t > rect_.t.hi) {
    done_ = true;
    return;
  }
  cur_.x = rng_.uniform(rect_.x.lo, rect_.x.hi);
}

Points2D sample_poisson_2d(const Rect& r, double rate, const UnitStream& stream) {
  PoissonPlaneStream gen(r, rate, stream);
  Points2D out;
  out.reserve(static_cast<std::size_t>(rate * r.area() * 1.05) + 8);
  for (; !gen.done(); gen.advance()) out.push_back(gen.current());
  return out;
}

ThinResult thin(std::span<const double> p, double keep_prob, RandomStream& rng) {
  if (!(keep_prob >= 0.0 && keep_prob <= 1.0))
    throw InvalidParameter("keep probability must lie in [0, 1]");
  ThinResult r;
  for (double v : p) (rng.bernoulli(keep_prob) ? r.kept : r.removed).push_back(v);
  return r;
}

ThinResult thin(std::span<const double> p, double keep_prob, const UnitStream& stream) {
  RandomStream rng(stream);
  return thin(p, keep_prob, rng);
}

Points1D superpose(std::span<const double> a, std::span<const double> b) {
  Points1D out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

Points2D rotate180(std::span<const Point2> p, const Rect& r) {
  Points2D out;
  out.reserve(p.size());
  for (const auto& q : p) {
    if (!r.contains(q.x, q.t)) throw InvalidInput("rotate180: point outside rectangle");
    out.push_back({r.x.hi + r.x.lo - q.x, r.t.hi + r.t.lo - q.t});
  }
  std::sort(out.begin(), out.end(), time_order);
  return out;
}

Points2D transpose_points(std::span<const Point2> p) {
  Points2D out;
  out.reserve(p.size());
  for (const auto& q : p) out.push_back({q.t, q.x});
  std::sort(out.begin(), out.end(), time_order);
  return out;
}

}  // namespace hammersley
