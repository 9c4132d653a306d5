#include "hammersley/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "hammersley/errors.hpp"

namespace hammersley {

TestReport make_report(std::string name, double statistic, double p_value, std::size_t n,
                       double alpha, std::string notes) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.p_value = std::clamp(p_value, 0.0, 1.0);
  r.alpha = alpha;
  r.pass = r.p_value >= alpha;
  r.n = n;
  r.notes = std::move(notes);
  return r;
}

TestReport TestReport::exact(std::string name, bool ok, double statistic, std::size_t n,
                             std::string notes) {
  return make_report(std::move(name), statistic, ok ? 1.0 : 0.0, n, kDefaultAlpha,
                     std::move(notes));
}

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // the alternating series converges slowly here; Q is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestReport ks_exponential(std::span<const double> gaps, double rate, double alpha) {
  if (gaps.empty()) throw InvalidInput("ks_exponential: no gaps");
  if (!(rate > 0.0)) throw InvalidInput("ks_exponential: rate must be > 0");
  std::vector<double> s(gaps.begin(), gaps.end());
  for (double g : s)
    if (!(g > 0.0)) throw InvalidInput("ks_exponential: gaps must be positive");
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = -std::expm1(-rate * s[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  const double p = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
  return make_report("ks_exponential", d, p, s.size(), alpha);
}

TestReport dispersion_test(std::span<const std::int64_t> counts, double mean, double alpha) {
  if (counts.empty()) throw InvalidInput("dispersion_test: no counts");
  if (!(mean > 0.0)) throw InvalidInput("dispersion_test: mean must be > 0");
  double stat = 0.0;
  for (auto c : counts) {
    const double dev = static_cast<double>(c) - mean;
    stat += dev * dev / mean;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size()));
  const double lower = boost::math::cdf(dist, stat);
  const double upper = boost::math::cdf(boost::math::complement(dist, stat));
  return make_report("dispersion", stat, 2.0 * std::min(lower, upper), counts.size(), alpha);
}

TestReport chi2_uniform(std::span<const Point2> points, const Rect& r, std::size_t k,
                        std::size_t m, double alpha) {
  const std::size_t cells = k * m;
  if (cells < 2) throw InvalidInput("chi2_uniform: need at least two cells");
  const double expected = static_cast<double>(points.size()) / static_cast<double>(cells);
  if (expected < 5.0) throw InvalidInput("chi2_uniform: expected count per cell below 5");
  std::vector<double> obs(cells, 0.0);
  for (const auto& p : points) {
    if (!r.contains(p.x, p.t)) throw InvalidInput("chi2_uniform: point outside rectangle");
    auto bin = [](double v, const Interval& iv, std::size_t nb) {
      const auto b = static_cast<std::size_t>((v - iv.lo) / iv.length() * static_cast<double>(nb));
      return std::min(b, nb - 1);
    };
    obs[bin(p.x, r.x, k) * m + bin(p.t, r.t, m)] += 1.0;
  }
  double stat = 0.0;
  for (double o : obs) stat += (o - expected) * (o - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return make_report("chi2_uniform", stat, boost::math::cdf(boost::math::complement(dist, stat)),
                     points.size(), alpha);
}

TestReport independence_corr(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw InvalidInput("independence_corr: length mismatch");
  if (a.size() < 30) throw InvalidInput("independence_corr: need at least 30 pairs");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw InvalidInput("independence_corr: constant sequence");
  const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  double p = 0.0;
  if (std::abs(r) < 1.0) {
    const double z = std::atanh(r) * std::sqrt(n - 3.0);
    const boost::math::normal std_normal;
    p = 2.0 * boost::math::cdf(boost::math::complement(std_normal, std::abs(z)));
  }
  return make_report("independence_corr", r, p, a.size(), alpha);
}

std::vector<double> gaps_from(std::span<const double> pts, double origin, std::size_t k) {
  std::vector<double> g;
  g.reserve(std::min(k, pts.size()));
  double prev = origin;
  for (double p : pts) {
    if (g.size() == k) break;
    g.push_back(p - prev);
    prev = p;
  }
  return g;
}

std::size_t leading_gap_count(double mean) {
  const double k = std::floor(mean - 4.0 * std::sqrt(mean));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

std::vector<TestReport> poisson_report(const std::vector<Points1D>& reps, const Interval& domain,
                                       double intensity, const std::string& label, double alpha) {
  std::vector<std::int64_t> counts;
  std::vector<double> gaps;
  const std::size_t k = leading_gap_count(intensity * domain.length());
  for (const auto& r : reps) {
    counts.push_back(static_cast<std::int64_t>(r.size()));
    const auto g = gaps_from(r, domain.lo, k);
    gaps.insert(gaps.end(), g.begin(), g.end());
  }
  auto disp = dispersion_test(counts, intensity * domain.length(), alpha);
  disp.name = label + ".count_dispersion";
  auto ks = ks_exponential(gaps, intensity, alpha);
  ks.name = label + ".gap_ks";
  return {disp, ks};
}

std::vector<TestReport> poisson_report(const std::vector<Points2D>& reps, const Rect& domain,
                                       double intensity, const std::string& label, double alpha) {
  std::vector<std::int64_t> counts;
  Points2D pooled;
  for (const auto& r : reps) {
    counts.push_back(static_cast<std::int64_t>(r.size()));
    pooled.insert(pooled.end(), r.begin(), r.end());
  }
  auto disp = dispersion_test(counts, intensity * domain.area(), alpha);
  disp.name = label + ".count_dispersion";
  auto chi = chi2_uniform(pooled, domain, 5, 5, alpha);
  chi.name = label + ".chi2_5x5";
  return {disp, chi};
}

MeanSe mean_se(std::span<const double> v) {
  if (v.empty()) return {};
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

SlopeEstimate slope_estimate(std::span<const Trajectory> trajs, double t_max) {
  if (!(t_max > 0.0)) throw InvalidInput("slope_estimate: t_max must be > 0");
  std::vector<double> ratios;
  ratios.reserve(trajs.size());
  for (const auto& tr : trajs) ratios.push_back(tr.at(t_max) / t_max);
  const auto ms = mean_se(ratios);
  return {ms.mean, ms.se, ratios.size()};
}

std::vector<VRow> v_measure_diagnostic(std::span<const Point2> alphas, std::span<const Point2> betas,
                                       double t, std::span<const std::pair<double, double>> grid) {
  if (!(t > 0.0)) throw InvalidInput("v_measure_diagnostic: t must be > 0");
  auto count = [](std::span<const Point2> pts, double x, double y) {
    return static_cast<double>(
        std::count_if(pts.begin(), pts.end(), [&](const Point2& p) { return p.x <= x && p.t <= y; }));
  };
  std::vector<VRow> rows;
  for (const auto& [x, y] : grid) {
    const double v = (count(alphas, t * x, t * y) - count(betas, t * x, t * y)) / t;
    rows.push_back({x, y, v, 2.0 * std::sqrt(x * y)});
  }
  return rows;
}

}  // namespace hammersley
