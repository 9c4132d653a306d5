#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hammersley/coupling.hpp"
#include "hammersley/errors.hpp"

using namespace hammersley;

namespace {

SimInputs make_inputs(double t1, double t2, Points1D sources, Points1D sinks, Points2D alphas) {
  SimInputs in;
  in.t1 = t1;
  in.t2 = t2;
  in.sources = std::move(sources);
  in.sinks = std::move(sinks);
  in.alphas = std::move(alphas);
  return in;
}

// Oracle for X: drop the first sink that takes a particle and rerun; the
// extra particle of the second run is the second-class particle.
bool wave_matches(const SimInputs& in, const Trajectory& x) {
  const auto log = evolve(in);
  auto it = std::find_if(log.events.begin(), log.events.end(),
                         [](const Event& e) { return e.kind == EventKind::SinkConsume; });
  if (it == log.events.end()) return x.jumps.empty();
  SimInputs without = in;
  without.sinks.erase(std::find(without.sinks.begin(), without.sinks.end(), it->time));
  const auto log2 = evolve(without);

  ParticleState a(in.sources), b(in.sources);
  std::size_t i = 0, j = 0;
  while (i < log.events.size()) {
    const Event& e = log.events[i++];
    e.is_alpha() ? (void)a.apply_alpha(e.to, e.time) : (void)a.apply_sink(e.time);
    if (j < log2.events.size() && log2.events[j].time == e.time) {
      const Event& f = log2.events[j++];
      f.is_alpha() ? (void)b.apply_alpha(f.to, f.time) : (void)b.apply_sink(f.time);
    }
    if (e.time < it->time || !x.valid_at(e.time)) continue;
    std::vector<double> diff;
    const auto pa = a.positions();
    const auto pb = b.positions();
    std::set_difference(pb.begin(), pb.end(), pa.begin(), pa.end(), std::back_inserter(diff));
    if (diff.size() != 1 || pb.size() != pa.size() + 1 || diff[0] != x.at(e.time)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("second-class particle: hand trace") {
  // Sink at 0.2 takes 0.5, X starts there; the alpha at 0.3 pulls 0.8 across
  // X, which follows to 0.8; later events stay right of X or are left of it.
  const auto in = make_inputs(1, 1, {0.5, 0.8}, {0.2, 0.75}, {{0.3, 0.4}, {0.9, 0.6}, {0.85, 0.7}});
  const auto x = isolated_second_class(evolve(in));
  REQUIRE(x.jumps.size() == 2);
  CHECK(x.jumps[0].time == 0.2);
  CHECK(x.jumps[0].pos == 0.5);
  CHECK(x.jumps[1].time == 0.4);
  CHECK(x.jumps[1].pos == 0.8);
  CHECK(x.complete());
  CHECK(x.at(0.1) == 0.0);
  CHECK(x.at(0.2) == 0.5);
  CHECK(x.at(0.39) == 0.5);
  CHECK(x.at(1.0) == 0.8);
  CHECK(wave_matches(in, x));
}

TEST_CASE("second-class particle: no sinks, void sinks and escape") {
  CHECK(isolated_second_class(evolve(make_inputs(1, 1, {0.5}, {}, {{0.3, 0.4}}))).jumps.empty());
  CHECK(isolated_second_class(evolve(make_inputs(1, 1, {}, {0.2}, {{0.3, 0.4}}))).jumps.empty());
  // After the only particle exits, an alpha left of X needs a particle from
  // beyond the box.
  const auto x = isolated_second_class(evolve(make_inputs(1, 1, {0.5}, {0.2}, {{0.3, 0.4}})));
  CHECK(x.jumps.size() == 1);
  CHECK_FALSE(x.complete());
  CHECK(x.valid_until == 0.4);
  CHECK(x.valid_at(0.3));
  CHECK_FALSE(x.valid_at(0.4));
}

TEST_CASE("second-class particle equals the wave of the omitted first sink") {
  for (std::uint64_t k = 0; k < 300; ++k) {
    const double lam = k % 3 == 0 ? 0.5 : (k % 3 == 1 ? 1.0 : 2.0);
    const auto in = sample_stationary_inputs(lam, 12, 12, UnitStream{51, k});
    const auto x = isolated_second_class(evolve(in));
    REQUIRE(wave_matches(in, x));
    for (std::size_t i = 1; i < x.jumps.size(); ++i) REQUIRE(x.jumps[i].pos >= x.jumps[i - 1].pos);
  }
}

TEST_CASE("left-to-right second-class particle via transposition") {
  const auto in = sample_stationary_inputs(1.0, 10, 10, UnitStream{52, 0});
  const auto tr = transpose_inputs(in);
  CHECK(tr.t1 == in.t2);
  CHECK(tr.sources == in.sinks);
  CHECK(tr.sinks == in.sources);
  CHECK(transpose_inputs(tr).alphas == in.alphas);
  CHECK(tr.lambda_meta == doctest::Approx(1.0 / in.lambda_meta));
  const auto xp = second_class_lr(in);
  CHECK(wave_matches(tr, xp));
}

TEST_CASE("streaming second-class particle equals the materialized one") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const UnitStream s{53, k};
    const auto a = stream_second_class(1.0, 40, 30, s);
    const auto b = isolated_second_class(evolve(sample_stationary_inputs(1.0, 40, 30, s)));
    REQUIRE(a.jumps.size() == b.jumps.size());
    for (std::size_t i = 0; i < a.jumps.size(); ++i) {
      REQUIRE(a.jumps[i].time == b.jumps[i].time);
      REQUIRE(a.jumps[i].pos == b.jumps[i].pos);
    }
    CHECK(a.valid_until == b.valid_until);
  }
}

TEST_CASE("coupling spec validation and trivial pair") {
  CHECK_THROWS_AS(CouplingSpec({1.0, 0.5, CouplingMode::ThickenSources}).validate(), InvalidParameter);
  CHECK_THROWS_AS(CouplingSpec({1.0, 2.0, CouplingMode::ThinSources}).validate(), InvalidParameter);
  CHECK_THROWS_AS(CouplingSpec({0.0, 1.0, CouplingMode::ThickenSources}).validate(), InvalidParameter);
  const auto base = sample_stationary_inputs(1.0, 10, 10, UnitStream{54, 0});
  const auto p = make_coupled_pair(base, {1.0, 1.0, CouplingMode::ThickenSources}, UnitStream{54, 1});
  CHECK(p.added_sources.empty());
  CHECK(p.removed_sinks.empty());
  CHECK(p.sigma.sources == p.eta.sources);
  CHECK(p.sigma.sinks == p.eta.sinks);
}

TEST_CASE("coupling rates") {
  double added = 0, removed = 0;
  const int reps = 400;
  for (int k = 0; k < reps; ++k) {
    const auto base = sample_stationary_inputs(1.0, 100, 100, UnitStream{55, static_cast<std::uint64_t>(k)});
    const auto p = make_coupled_pair(base, {1.0, 2.0, CouplingMode::ThickenSources}, UnitStream{56, static_cast<std::uint64_t>(k)});
    REQUIRE(superpose(p.eta.sources, p.added_sources) == p.sigma.sources);
    REQUIRE(superpose(p.sigma.sinks, p.removed_sinks) == p.eta.sinks);
    added += static_cast<double>(p.added_sources.size());
    removed += static_cast<double>(p.removed_sinks.size());
  }
  CHECK(std::abs(added / reps - 100.0) < 4.0 * std::sqrt(100.0 / reps));
  CHECK(std::abs(removed / reps - 50.0) < 4.0 * std::sqrt(50.0 / reps));
}

TEST_CASE("flux: time zero, monotone in x, mismatched logs") {
  const auto base = sample_stationary_inputs(1.0, 20, 20, UnitStream{57, 0});
  const auto p = make_coupled_pair(base, {1.0, 1.5, CouplingMode::ThickenSources}, UnitStream{57, 1});
  const auto el = evolve(p.eta), sl = evolve(p.sigma);
  for (double x : {0.0, 3.0, 7.5, 20.0}) {
    const auto n = std::upper_bound(p.added_sources.begin(), p.added_sources.end(), x) - p.added_sources.begin();
    CHECK(flux(el, sl, x, 0.0) == n);
  }
  long prev = flux(el, sl, 0.0, 20.0);
  for (double x = 0.1; x <= 20.0; x += 0.1) {
    const long f = flux(el, sl, x, 20.0);
    REQUIRE(f >= prev);
    prev = f;
  }
  const auto other = evolve(sample_stationary_inputs(1.0, 20, 20, UnitStream{57, 2}));
  CHECK_THROWS_AS(flux(el, other, 1.0, 1.0), InvalidInput);
}

TEST_CASE("Z: no removed sinks, and the pathwise relations") {
  const auto base = make_inputs(1, 1, {0.5}, {}, {{0.3, 0.4}});
  const auto p = make_coupled_pair(base, {1.0, 1.5, CouplingMode::ThickenSources}, UnitStream{58, 0});
  const auto z = track_z(p, evolve(p.eta), evolve(p.sigma));
  CHECK_FALSE(z.started);
  CHECK(z.z.at(1.0) == 0.0);

  std::size_t started = 0;
  for (std::uint64_t k = 0; k < 300; ++k) {
    const auto in = sample_stationary_inputs(1.0, 30, 20, UnitStream{59, k});
    const auto pair = make_coupled_pair(in, {1.0, 1.5, CouplingMode::ThickenSources}, UnitStream{59, 100000 + k});
    const auto el = evolve(pair.eta), sl = evolve(pair.sigma);
    REQUIRE(verify_domination(el, sl));
    const auto zt = track_z(pair, el, sl);
    const auto x = isolated_second_class(el);
    REQUIRE(verify_z_below_x(zt.z, x));
    for (std::size_t i = 1; i < zt.z.jumps.size(); ++i) REQUIRE(zt.z.jumps[i].pos >= zt.z.jumps[i - 1].pos);
    if (!zt.started) continue;
    ++started;
    // Flux vanishes at Z at every jump time of Z.
    for (const auto& j : zt.z.jumps) {
      if (!zt.z.valid_at(j.time)) break;
      const auto [left, right] = flux_around(el, sl, j.pos, j.time);
      REQUIRE(left == -1);
      REQUIRE(right == 0);
    }
  }
  CHECK(started > 250);
  CHECK_THROWS_AS(track_z(make_coupled_pair(sample_stationary_inputs(1.0, 5, 5, UnitStream{60, 0}),
                                            {1.0, 0.5, CouplingMode::ThinSources}, UnitStream{60, 1}),
                          evolve(sample_stationary_inputs(1.0, 5, 5, UnitStream{60, 0})),
                          evolve(sample_stationary_inputs(1.0, 5, 5, UnitStream{60, 0}))),
                  InvalidInput);
}

TEST_CASE("thin-source pair, transposed, is a thicken pair of the left-to-right process") {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto in = sample_stationary_inputs(1.0, 20, 30, UnitStream{61, k});
    const auto pair = make_coupled_pair(in, {1.0, 2.0 / 3.0, CouplingMode::ThinSources}, UnitStream{61, 1000 + k});
    REQUIRE(superpose(pair.sigma.sources, pair.removed_sources) == pair.eta.sources);
    REQUIRE(superpose(pair.eta.sinks, pair.added_sinks) == pair.sigma.sinks);
    const auto tp = transpose_pair(pair);
    REQUIRE(tp.mode == CouplingMode::ThickenSources);
    const auto el = evolve(tp.eta), sl = evolve(tp.sigma);
    REQUIRE(verify_domination(el, sl));
    const auto zp = track_z(tp, el, sl);
    REQUIRE(verify_z_below_x(zp.z, isolated_second_class(el)));
  }
}

TEST_CASE("streaming coupled run equals the materialized pair") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const UnitStream s{62, k};
    CoupledStreamParams p{1.0, 1.5, 40.0, 25.0, {5.0, 10.0, 40.0}};
    const auto st = run_coupled_stream(p, s);
    const auto base = sample_stationary_inputs(1.0, 40, 25, s);
    const auto pair = make_coupled_pair(base, {1.0, 1.5, CouplingMode::ThickenSources}, s.child(3));
    const auto el = evolve(pair.eta), sl = evolve(pair.sigma);
    const auto z = track_z(pair, el, sl);
    const auto x = isolated_second_class(el);
    REQUIRE(st.z.jumps.size() == z.z.jumps.size());
    for (std::size_t i = 0; i < z.z.jumps.size(); ++i) REQUIRE(st.z.jumps[i].pos == z.z.jumps[i].pos);
    REQUIRE(st.x.jumps.size() == x.jumps.size());
    for (std::size_t i = 0; i < p.flux_positions.size(); ++i)
      REQUIRE(st.flux[i] == flux(el, sl, p.flux_positions[i], 25.0));
  }
}

TEST_CASE("sinks do not matter right of X") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto in = sample_stationary_inputs(1.0, 15, 15, UnitStream{63, k});
    const auto log = evolve(in);
    SimInputs bare = in;
    bare.sinks.clear();
    REQUIRE(verify_sinks_irrelevant(log, evolve(bare), isolated_second_class(log)));
  }
  const auto in = sample_stationary_inputs(1.0, 5, 5, UnitStream{63, 999});
  CHECK_THROWS_AS(verify_sinks_irrelevant(evolve(in), evolve(in), isolated_second_class(evolve(in))),
                  InvalidInput);
}

TEST_CASE("ordering of X and X'") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double lam = k % 2 ? 2.0 : 0.5;
    const auto in = sample_stationary_inputs(lam, 15, 15, UnitStream{64, k});
    REQUIRE(verify_ordering(isolated_second_class(evolve(in)), second_class_lr(in)));
  }
}

TEST_CASE("pathwise checks reject crafted violations") {
  Trajectory x, z;
  x.push(1.0, 2.0);
  z.push(1.0, 3.0);
  CHECK_FALSE(verify_z_below_x(z, x));
  CHECK(verify_z_below_x(x, z));

  // X reaches 5 by time 1, while X' says the path through x = 1 is crossed
  // at height 2: X(X'(1)) = X(2) = 5 > 1.
  Trajectory xt, xp;
  xt.push(1.0, 5.0);
  xp.push(1.0, 2.0);
  CHECK_FALSE(verify_ordering(xt, xp));
}
