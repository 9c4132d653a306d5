#include "hammersley/generator.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "hammersley/errors.hpp"

namespace hammersley {

namespace {

constexpr std::array<std::array<double, 2>, 8> kGauss16 = {{
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
}};

double checked(double v) {
  if (!std::isfinite(v)) throw EvaluationError("functional returned a non-finite value");
  return v;
}

void check_params(double lambda, double t1) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  if (!(t1 >= 0.0)) throw InvalidParameter("t1 must be >= 0");
}

// Integrates f over the configurations obtained by writing s into slot
// `slot` of `base` (a copy of the configuration, possibly with one extra
// slot), for s in [a, b].
double integrate_slot(const Functional& f, std::vector<double>& base, std::size_t slot,
                      double a, double b) {
  if (!(b > a)) return 0.0;
  return gauss_legendre16(
      [&](double s) {
        base[slot] = s;
        return checked(f(base));
      },
      a, b);
}

}  // namespace

double gauss_legendre16(const std::function<double(double)>& h, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (const auto& [node, weight] : kGauss16)
    sum += weight * (h(mid - half * node) + h(mid + half * node));
  return half * sum;
}

double generator_apply(const Functional& f, const ParticleConfig& c, double lambda, double t1) {
  check_params(lambda, t1);
  const auto& x = c.positions;
  const std::size_t n = x.size();

  double integral = 0.0;
  std::vector<double> work(x);
  double left = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    integral += integrate_slot(f, work, i, left, x[i]);
    work[i] = x[i];
    left = x[i];
  }
  work.push_back(0.0);
  integral += integrate_slot(f, work, n, left, t1);

  const std::span<const double> all(x);
  const std::span<const double> exit_left = n > 0 ? all.subspan(1) : all;
  return integral + checked(f(exit_left)) / lambda - (1.0 / lambda + t1) * checked(f(all));
}

double adjoint_apply(const Functional& g, const ParticleConfig& c, double lambda, double t1) {
  check_params(lambda, t1);
  const auto& y = c.positions;
  const std::size_t n = y.size();

  double integral = 0.0;
  // s < y_1: a new particle is prepended at s.
  {
    std::vector<double> work;
    work.reserve(n + 1);
    work.push_back(0.0);
    work.insert(work.end(), y.begin(), y.end());
    integral += integrate_slot(g, work, 0, 0.0, n > 0 ? y[0] : t1);
  }
  // y_i <= s < y_{i+1}: y_i moves right to s.
  std::vector<double> work(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double right = i + 1 < n ? y[i + 1] : t1;
    integral += integrate_slot(g, work, i, y[i], right);
    work[i] = y[i];
  }

  const std::span<const double> all(y);
  const std::span<const double> exit_right = n > 0 ? all.first(n - 1) : all;
  return integral + checked(g(exit_right)) / lambda - (1.0 / lambda + t1) * checked(g(all));
}

ParticleConfig sample_mu(double lambda, double t1, RandomStream& rng) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  return {sample_poisson_1d(Interval(0.0, t1), lambda, rng)};
}

ParticleConfig sample_mu(double lambda, double t1, const UnitStream& stream) {
  RandomStream rng(stream);
  return sample_mu(lambda, t1, rng);
}

}  // namespace hammersley
