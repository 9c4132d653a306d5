#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hammersley/coupling.hpp"
#include "hammersley/point_process.hpp"

namespace hammersley {

inline constexpr double kDefaultAlpha = 0.01;

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  bool pass = true;
  double alpha = kDefaultAlpha;
  std::size_t n = 0;
  std::string notes;

  /// Report for a pathwise or band check (p-value 1 or 0).
  static TestReport exact(std::string name, bool ok, double statistic, std::size_t n,
                          std::string notes = {});
};

TestReport make_report(std::string name, double statistic, double p_value, std::size_t n,
                       double alpha = kDefaultAlpha, std::string notes = {});

/// Kolmogorov limiting survival function Q(x) = 2 sum (-1)^(k-1) exp(-2 k^2 x^2).
double kolmogorov_q(double x);

/// One-sample K-S against Exp(rate); p-value from the Kolmogorov limit with
/// Stephens' finite-n correction (sqrt(n) + 0.12 + 0.11/sqrt(n)) D.
TestReport ks_exponential(std::span<const double> gaps, double rate, double alpha = kDefaultAlpha);

/// Index of dispersion sum (c - mean)^2 / mean against chi^2(n), two-sided.
TestReport dispersion_test(std::span<const std::int64_t> counts, double mean,
                           double alpha = kDefaultAlpha);

/// Pearson chi^2 over a k x m grid of equal cells, df = k m - 1.
TestReport chi2_uniform(std::span<const Point2> points, const Rect& r, std::size_t k,
                        std::size_t m, double alpha = kDefaultAlpha);

/// Pearson correlation with a Fisher-z two-sided p-value against 0.
TestReport independence_corr(std::span<const double> a, std::span<const double> b,
                             double alpha = kDefaultAlpha);

/// Count dispersion across replications plus gap K-S on the pooled leading
/// gaps of each replication.
std::vector<TestReport> poisson_report(const std::vector<Points1D>& reps, const Interval& domain,
                                       double intensity, const std::string& label,
                                       double alpha = kDefaultAlpha);
/// Count dispersion across replications plus 5 x 5 chi^2 on pooled points.
std::vector<TestReport> poisson_report(const std::vector<Points2D>& reps, const Rect& domain,
                                       double intensity, const std::string& label,
                                       double alpha = kDefaultAlpha);

/// The first `k` gaps of a sorted point set, starting from `origin` (fewer if
/// there are fewer points). For a Poisson process these are iid
/// exponential; all complete gaps of a bounded window are not, since long
/// gaps are more likely to be cut off at the window end.
std::vector<double> gaps_from(std::span<const double> pts, double origin, std::size_t k);

/// Gap count used per replication when the expected number of points is
/// `mean`: floor(mean - 4 sqrt(mean)), at least 1, so a window almost never
/// holds fewer points.
std::size_t leading_gap_count(double mean);

struct SlopeEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

/// Mean and standard error of traj(t_max)/t_max across replications.
SlopeEstimate slope_estimate(std::span<const Trajectory> trajs, double t_max);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(std::span<const double> v);
double median(std::vector<double> v);

struct VRow {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;      ///< (#alpha - #beta in [0,tx]x[0,ty]) / t
  double reference = 0.0;  ///< 2 sqrt(x y)
};

std::vector<VRow> v_measure_diagnostic(std::span<const Point2> alphas, std::span<const Point2> betas,
                                       double t, std::span<const std::pair<double, double>> grid);

}  // namespace hammersley
