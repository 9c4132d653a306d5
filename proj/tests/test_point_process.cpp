#include <cmath>
#include <vector>

#include "doctest.h"
#include "hammersley/errors.hpp"
#include "hammersley/paths.hpp"
#include "hammersley/point_process.hpp"
#include "hammersley/stats.hpp"

using namespace hammersley;

namespace {

std::vector<std::int64_t> counts_1d(const Interval& iv, double rate, int reps, std::uint64_t seed) {
  std::vector<std::int64_t> c;
  for (int r = 0; r < reps; ++r)
    c.push_back(static_cast<std::int64_t>(sample_poisson_1d(iv, rate, UnitStream{seed, static_cast<std::uint64_t>(r)}).size()));
  return c;
}

double mean_of(const std::vector<std::int64_t>& c) {
  double s = 0.0;
  for (auto v : c) s += static_cast<double>(v);
  return s / static_cast<double>(c.size());
}

}  // namespace

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), InvalidParameter);
  CHECK(Interval(0.0, 0.0).length() == 0.0);
}

TEST_CASE("1d sampler: zero rate, errors, sortedness, determinism") {
  CHECK(sample_poisson_1d(Interval(0, 1), 0.0, UnitStream{1, 1}).empty());
  CHECK_THROWS_AS(sample_poisson_1d(Interval(0, 1), -1.0, UnitStream{1, 1}), InvalidParameter);
  const auto a = sample_poisson_1d(Interval(2, 40), 3.0, UnitStream{5, 9});
  CHECK(is_valid_points1d(a, Interval(2, 40)));
  CHECK(a == sample_poisson_1d(Interval(2, 40), 3.0, UnitStream{5, 9}));
  CHECK(a != sample_poisson_1d(Interval(2, 40), 3.0, UnitStream{5, 10}));
}

TEST_CASE("1d sampler: mean and dispersion of counts") {
  const auto c100 = counts_1d(Interval(0, 100), 1.0, 1000, 21);
  CHECK(std::abs(mean_of(c100) - 100.0) < 4.0 * std::sqrt(100.0 / 1000.0));
  const auto c50 = counts_1d(Interval(0, 50), 2.0, 1000, 22);
  CHECK(dispersion_test(c50, 100.0).pass);
}

TEST_CASE("2d sampler: zero rate, mean, uniformity, order") {
  const Rect r{Interval(0, 10), Interval(0, 10)};
  CHECK(sample_poisson_2d(r, 0.0, UnitStream{1, 1}).empty());
  CHECK_THROWS_AS(sample_poisson_2d(r, -0.5, UnitStream{1, 1}), InvalidParameter);
  double total = 0.0;
  for (std::uint64_t k = 0; k < 400; ++k) {
    const auto p = sample_poisson_2d(r, 1.0, UnitStream{3, k});
    REQUIRE(is_valid_points2d(p, r));
    total += static_cast<double>(p.size());
  }
  CHECK(std::abs(total / 400.0 - 100.0) < 4.0 * std::sqrt(100.0 / 400.0));
  const Rect big{Interval(0, 100), Interval(0, 100)};
  const auto p = sample_poisson_2d(big, 1.0, UnitStream{4, 0});
  CHECK(chi2_uniform(p, big, 2, 2).pass);
}

TEST_CASE("plane stream reproduces the materialized sample") {
  const Rect r{Interval(0, 7), Interval(1, 9)};
  const UnitStream s{8, 8};
  PoissonPlaneStream st(r, 1.5, s);
  Points2D streamed;
  for (; !st.done(); st.advance()) streamed.push_back(st.current());
  CHECK(streamed == sample_poisson_2d(r, 1.5, s));
}

TEST_CASE("thin: extremes, partition, law") {
  const auto p = sample_poisson_1d(Interval(0, 30), 2.0, UnitStream{6, 0});
  const auto all = thin(p, 1.0, UnitStream{6, 1});
  CHECK(all.kept == p);
  CHECK(all.removed.empty());
  const auto none = thin(p, 0.0, UnitStream{6, 1});
  CHECK(none.kept.empty());
  CHECK(none.removed == p);
  CHECK_THROWS_AS(thin(p, 1.5, UnitStream{6, 1}), InvalidParameter);
  CHECK_THROWS_AS(thin(p, -0.1, UnitStream{6, 1}), InvalidParameter);
  const auto half = thin(p, 0.5, UnitStream{6, 2});
  CHECK(superpose(half.kept, half.removed) == p);

  std::vector<std::int64_t> kept;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const auto q = sample_poisson_1d(Interval(0, 50), 2.0, UnitStream{7, k});
    kept.push_back(static_cast<std::int64_t>(thin(q, 0.5, UnitStream{7, 100000 + k}).kept.size()));
  }
  CHECK(dispersion_test(kept, 50.0).pass);
  CHECK(std::abs(mean_of(kept) - 50.0) < 4.0 * std::sqrt(50.0 / 1000.0));
}

TEST_CASE("superpose") {
  const Points1D p = {0.1, 0.4};
  CHECK(superpose(p, {}) == p);
  CHECK(superpose(Points1D{0.2}, Points1D{0.5}) == Points1D{0.2, 0.5});
  std::vector<std::int64_t> c;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const auto a = sample_poisson_1d(Interval(0, 40), 1.0, UnitStream{9, k});
    const auto b = sample_poisson_1d(Interval(0, 40), 0.5, UnitStream{10, k});
    const auto s = superpose(a, b);
    REQUIRE(s.size() == a.size() + b.size());
    c.push_back(static_cast<std::int64_t>(s.size()));
  }
  CHECK(dispersion_test(c, 60.0).pass);
}

TEST_CASE("rotate180") {
  const Rect unit{Interval(0, 1), Interval(0, 1)};
  const auto q = rotate180(Points2D{{0.3, 0.2}}, unit);
  REQUIRE(q.size() == 1);
  CHECK(q[0].x == doctest::Approx(0.7));
  CHECK(q[0].t == doctest::Approx(0.8));
  CHECK_THROWS_AS(rotate180(Points2D{{1.5, 0.2}}, unit), InvalidInput);

  const Rect r{Interval(0, 12), Interval(0, 5)};
  const auto p = sample_poisson_2d(r, 2.0, UnitStream{12, 0});
  const auto back = rotate180(rotate180(p, r), r);
  REQUIRE(back.size() == p.size());
  double cx = 0, ct = 0, rx = 0, rt = 0;
  const auto rot = rotate180(p, r);
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Involution up to the rounding of hi - (hi - x).
    CHECK(std::abs(back[i].x - p[i].x) <= 1e-15 * 12.0);
    CHECK(std::abs(back[i].t - p[i].t) <= 1e-15 * 5.0);
    cx += p[i].x, ct += p[i].t, rx += rot[i].x, rt += rot[i].t;
  }
  const double n = static_cast<double>(p.size());
  CHECK(rx / n == doctest::Approx(12.0 - cx / n));
  CHECK(rt / n == doctest::Approx(5.0 - ct / n));
  CHECK(is_valid_points2d(rot, r));
}

TEST_CASE("transpose_points") {
  CHECK(transpose_points(Points2D{{1, 2}}) == Points2D{{2, 1}});
  const auto p = sample_poisson_2d({Interval(0, 8), Interval(0, 8)}, 1.0, UnitStream{13, 0});
  CHECK(transpose_points(transpose_points(p)) == p);
  CHECK(lis_patience(transpose_points(p)) == lis_patience(p));
}

TEST_CASE("point set validation") {
  CHECK(is_valid_points1d(Points1D{0.0, 0.5, 1.0}, Interval(0, 1)));
  CHECK_FALSE(is_valid_points1d(Points1D{0.5, 0.5}, Interval(0, 1)));
  CHECK_FALSE(is_valid_points1d(Points1D{0.5, 1.5}, Interval(0, 1)));
  const Rect r{Interval(0, 1), Interval(0, 1)};
  CHECK(is_valid_points2d(Points2D{{0.5, 0.1}, {0.2, 0.3}}, r));
  CHECK_FALSE(is_valid_points2d(Points2D{{0.2, 0.3}, {0.5, 0.1}}, r));
  CHECK_FALSE(is_valid_points2d(Points2D{{0.2, 0.3}, {0.2, 0.3}}, r));
}
