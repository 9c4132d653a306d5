#include "hammersley/paths.hpp"

#include <algorithm>
#include <vector>

#include "hammersley/engine.hpp"
#include "hammersley/errors.hpp"

namespace hammersley {

std::size_t lis_patience(std::span<const Point2> p) {
  std::vector<Point2> pts(p.begin(), p.end());
  // Equal times cannot chain: order them by decreasing x.
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.t < b.t || (a.t == b.t && a.x > b.x);
  });
  std::vector<double> tails;
  for (const auto& q : pts) {
    auto it = std::lower_bound(tails.begin(), tails.end(), q.x);
    if (it == tails.end())
      tails.push_back(q.x);
    else
      *it = q.x;
  }
  return tails.size();
}

std::size_t lis_bruteforce(std::span<const Point2> p) {
  if (p.size() > kBruteforceCap) throw InvalidInput("lis_bruteforce: too many points");
  const std::size_t n = p.size();
  // best[i]: longest chain ending at p[i]; relax until stable (no ordering assumed).
  std::vector<std::size_t> best(n, 1);
  for (std::size_t round = 0; round < n; ++round)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p[j].x < p[i].x && p[j].t < p[i].t) best[i] = std::max(best[i], best[j] + 1);
  return n == 0 ? 0 : *std::max_element(best.begin(), best.end());
}

namespace {

// For each point, the longest strict chain that starts at it.
std::vector<std::size_t> chain_from(const std::vector<Point2>& pts) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  const bool strictly_timed = std::adjacent_find(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
                                return !(a.t < b.t);
                              }) == pts.end();
  if (!strictly_timed)
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pts[a].t > pts[b].t || (pts[a].t == pts[b].t && pts[a].x < pts[b].x);
    });
  // best[k]: largest x among processed points starting a chain of length > k.
  std::vector<double> best;
  std::vector<std::size_t> d(pts.size());
  for (std::size_t idx : order) {
    const double x = pts[idx].x;
    const auto it = std::partition_point(best.begin(), best.end(), [&](double b) { return b > x; });
    const auto k = static_cast<std::size_t>(it - best.begin());
    d[idx] = k + 1;
    if (k == best.size())
      best.push_back(x);
    else
      best[k] = std::max(best[k], x);
  }
  return d;
}

// out[i] = max chain over points whose key is > q[i]; q sorted.
std::vector<std::size_t> best_above(const std::vector<Point2>& pts, const std::vector<std::size_t>& d,
                                    const std::vector<double>& q, double Point2::*key) {
  std::vector<std::size_t> bucket(q.size() + 1, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto j = static_cast<std::size_t>(std::lower_bound(q.begin(), q.end(), pts[i].*key) - q.begin());
    bucket[j] = std::max(bucket[j], d[i]);
  }
  std::vector<std::size_t> out(q.size());
  std::size_t run = bucket[q.size()];
  for (std::size_t i = q.size(); i-- > 0;) {
    out[i] = run;
    run = std::max(run, bucket[i]);
  }
  return out;
}

}  // namespace

WeakPathResult weak_path(const WeakPathInstance& w) {
  std::vector<Point2> pts;
  pts.reserve(w.interior.size());
  for (const auto& q : w.interior)
    if (q.x <= w.target.x && q.t <= w.target.t) pts.push_back(q);
  const auto d = chain_from(pts);
  std::size_t strict = 0;
  for (std::size_t v : d) strict = std::max(strict, v);

  std::vector<double> src, snk;
  for (double s : w.sources)
    if (s <= w.target.x) src.push_back(s);
  for (double s : w.sinks)
    if (s <= w.target.t) snk.push_back(s);
  const auto right_of = best_above(pts, d, src, &Point2::x);
  const auto above = best_above(pts, d, snk, &Point2::t);

  struct Candidate {
    std::size_t length;
    double departure;
  };
  std::vector<Candidate> cands{{strict, 0.0}};
  for (std::size_t k = 0; k < src.size(); ++k) cands.push_back({k + 1 + right_of[k], src[k]});
  for (std::size_t k = 0; k < snk.size(); ++k) cands.push_back({k + 1 + above[k], snk[k]});
  WeakPathResult r;
  for (const auto& c : cands) r.length = std::max(r.length, c.length);
  for (const auto& c : cands)
    if (c.length == r.length) r.departure = std::max(r.departure, c.departure);
  return r;
}

std::size_t lis_weak(const WeakPathInstance& w) { return weak_path(w).length; }

double weak_axis_departure(const WeakPathInstance& w) { return weak_path(w).departure; }

bool check_lis_equals_crossings(const Points2D& interior, const Points1D& sources,
                                const Points1D& sinks, const Rect& box) {
  SimInputs in;
  in.t1 = box.x.hi;
  in.t2 = box.t.hi;
  in.sources = sources;
  in.sinks = sinks;
  in.alphas = interior;
  const auto log = evolve(in);
  const std::size_t weak = lis_weak({interior, sources, sinks, {box.x.hi, box.t.hi}});
  if (weak != path_count_box(log, box.x.hi, box.t.hi)) return false;
  if (sources.empty() && sinks.empty())
    return lis_patience(interior) == log.final_config.size();
  return true;
}

}  // namespace hammersley
