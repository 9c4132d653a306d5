#include <cmath>
#include <vector>

#include "doctest.h"
#include "hammersley/engine.hpp"
#include "hammersley/errors.hpp"
#include "hammersley/paths.hpp"
#include "hammersley/stats.hpp"

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

std::size_t count_kind(const EventLog& log, EventKind k) {
  std::size_t n = 0;
  for (const auto& e : log.events) n += e.kind == k;
  return n;
}

}  // namespace

TEST_CASE("apply_alpha examples") {
  auto [c1, e1] = apply_alpha({}, 0.5, 1.0, 1.0);
  CHECK(c1.positions == std::vector<double>{0.5});
  CHECK(e1.kind == EventKind::AlphaCreate);
  CHECK(e1.to == 0.5);

  auto [c2, e2] = apply_alpha({{0.7}}, 0.4, 1.0, 1.0);
  CHECK(c2.positions == std::vector<double>{0.4});
  CHECK(e2.kind == EventKind::AlphaJump);
  CHECK(e2.from == 0.7);
  CHECK(e2.to == 0.4);

  auto [c3, e3] = apply_alpha({{0.2, 0.9}}, 0.5, 1.0, 1.0);
  CHECK(c3.positions == std::vector<double>{0.2, 0.5});
  CHECK(e3.from == 0.9);

  // Alpha on an occupied site: zero-length jump.
  auto [c4, e4] = apply_alpha({{0.2, 0.9}}, 0.2, 1.0, 1.0);
  CHECK(c4.positions == std::vector<double>{0.2, 0.9});
  CHECK(e4.kind == EventKind::AlphaJump);
  CHECK(e4.from == 0.2);

  CHECK_THROWS_AS(apply_alpha({}, 1.5, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(apply_alpha({}, -0.1, 1.0, 1.0), InvalidInput);
}

TEST_CASE("apply_sink examples") {
  auto [c1, e1] = apply_sink({}, 0.3);
  CHECK(c1.positions.empty());
  CHECK(e1.kind == EventKind::SinkVoid);
  auto [c2, e2] = apply_sink({{0.5}}, 0.3);
  CHECK(c2.positions.empty());
  CHECK(e2.kind == EventKind::SinkConsume);
  CHECK(e2.from == 0.5);
  auto [c3, e3] = apply_sink({{0.2, 0.8}}, 0.3);
  CHECK(c3.positions == std::vector<double>{0.8});
  CHECK(e3.from == 0.2);
}

TEST_CASE("evolve and extract_boundary on hand-traced inputs") {
  const auto a = evolve(make_inputs(1, 1, {0.5}, {0.2}, {}));
  REQUIRE(a.events.size() == 1);
  CHECK(same_event(a.events[0], Event::sink_consume(0.2, 0.5)));
  CHECK(a.final_config.positions.empty());
  const auto ba = extract_boundary(a);
  CHECK(ba.beta == Points2D{{0.5, 0.2}});
  CHECK(ba.east_entries.empty());
  CHECK(ba.north_exits.empty());
  CHECK(path_count_box(a, 1, 1) == 1);

  const auto b = evolve(make_inputs(1, 1, {}, {}, {{0.7, 0.3}, {0.4, 0.6}}));
  REQUIRE(b.events.size() == 2);
  CHECK(same_event(b.events[0], Event::alpha_create(0.3, 0.7)));
  CHECK(same_event(b.events[1], Event::alpha_jump(0.6, 0.7, 0.4)));
  CHECK(b.final_config.positions == std::vector<double>{0.4});
  const auto bb = extract_boundary(b);
  CHECK(bb.beta == Points2D{{0.7, 0.6}});
  CHECK(bb.east_entries == Points1D{0.3});
  CHECK(bb.north_exits == Points1D{0.4});

  CHECK(path_count_box(evolve(make_inputs(1, 1, {}, {}, {})), 1, 1) == 0);
}

TEST_CASE("a longer hand trace with sources, sinks and alpha points") {
  // Sources 0.2, 0.6; sinks at 0.25 and 0.7; alphas below.
  // 0.1: alpha at 0.4 pulls 0.6 -> 0.4           config {0.2, 0.4}
  // 0.25: sink consumes 0.2                      config {0.4}
  // 0.3: alpha at 0.9 creates                    config {0.4, 0.9}
  // 0.5: alpha at 0.1 pulls 0.4 -> 0.1           config {0.1, 0.9}
  // 0.7: sink consumes 0.1                       config {0.9}
  // 0.8: alpha at 0.95 creates                   config {0.9, 0.95}
  const auto log = evolve(make_inputs(1, 1, {0.2, 0.6}, {0.25, 0.7},
                                      {{0.4, 0.1}, {0.9, 0.3}, {0.1, 0.5}, {0.95, 0.8}}));
  const std::vector<Event> want = {Event::alpha_jump(0.1, 0.6, 0.4), Event::sink_consume(0.25, 0.2),
                                   Event::alpha_create(0.3, 0.9),   Event::alpha_jump(0.5, 0.4, 0.1),
                                   Event::sink_consume(0.7, 0.1),   Event::alpha_create(0.8, 0.95)};
  REQUIRE(log.events.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(same_event(log.events[i], want[i]));
  CHECK(log.final_config.positions == std::vector<double>{0.9, 0.95});
  CHECK(config_at(log, 0.4).positions == std::vector<double>{0.4, 0.9});
  CHECK(path_count_box(log, 0.5, 0.4) == 2);  // one exited path plus the particle at 0.4
  const auto b = extract_boundary(log);
  CHECK(b.consumed_sink_times == Points1D{0.25, 0.7});
  CHECK(b.beta == Points2D{{0.6, 0.1}, {0.2, 0.25}, {0.4, 0.5}, {0.1, 0.7}});
  CHECK(time_reverse_check(log));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(evolve(make_inputs(1, 1, {}, {0.5}, {{0.3, 0.5}})), DuplicateEventTime);
  CHECK_THROWS_AS(evolve(make_inputs(1, 1, {}, {}, {{0.3, 0.5}, {0.6, 0.5}})), DuplicateEventTime);
  CHECK_THROWS_AS(evolve(make_inputs(1, 1, {1.5}, {}, {})), InvalidInput);
  CHECK_THROWS_AS(evolve(make_inputs(1, 1, {0.5, 0.2}, {}, {})), InvalidInput);
  CHECK_THROWS_AS(evolve(make_inputs(1, 1, {}, {}, {{0.3, 0.6}, {0.4, 0.5}})), InvalidInput);
  const auto log = evolve(make_inputs(1, 1, {0.5}, {}, {}));
  CHECK_THROWS_AS(config_at(log, 1.5), InvalidInput);
  CHECK_THROWS_AS(config_at(log, -0.5), InvalidInput);
  CHECK_THROWS_AS(path_count_box(log, 2.0, 0.5), InvalidInput);
}

TEST_CASE("config_at endpoints and replay") {
  const auto in = sample_stationary_inputs(1.0, 20, 20, UnitStream{31, 0});
  const auto log = evolve(in);
  CHECK(config_at(log, 0.0).positions == in.sources);
  CHECK(config_at(log, 20.0).positions == log.final_config.positions);
  // Incremental states from the pure operators match replays at event times.
  ParticleConfig c{in.sources};
  for (const auto& e : log.events) {
    c = e.is_alpha() ? apply_alpha(c, e.to, e.time, in.t1).first : apply_sink(c, e.time).first;
    REQUIRE(config_at(log, e.time).positions == c.positions);
  }
}

TEST_CASE("conservation, beta tally, monotone paths, involution on random runs") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double lam = (k % 3 == 0) ? 0.5 : (k % 3 == 1 ? 1.0 : 2.0);
    const auto log = evolve(sample_stationary_inputs(lam, 15, 15, UnitStream{32, k}));
    const auto b = extract_boundary(log);
    const auto creates = count_kind(log, EventKind::AlphaCreate);
    const auto jumps = count_kind(log, EventKind::AlphaJump);
    const auto consumed = count_kind(log, EventKind::SinkConsume);
    REQUIRE(log.final_config.size() == log.inputs.sources.size() + creates - consumed);
    REQUIRE(b.beta.size() == jumps + consumed);
    REQUIRE(b.east_entries.size() == creates);
    REQUIRE(b.north_exits == log.final_config.positions);

    // Jumps keep the sorted rank, so following ranks follows particles.
    ParticleState st(log.inputs.sources);
    for (const auto& e : log.events) {
      if (e.kind == EventKind::AlphaJump) {
        REQUIRE(e.to <= e.from);
      } else if (e.kind == EventKind::SinkConsume) {
        REQUIRE(st.size() > 0);
        REQUIRE(e.from == st.positions()[0]);
      } else if (e.kind == EventKind::SinkVoid) {
        REQUIRE(st.size() == 0);
      }
      e.is_alpha() ? (void)st.apply_alpha(e.to, e.time) : (void)st.apply_sink(e.time);
    }
    REQUIRE(time_reverse_check(log));
  }
}

TEST_CASE("stationarity: counts of particles in (0, x] at time t") {
  std::vector<std::int64_t> mid, part;
  for (std::uint64_t k = 0; k < 400; ++k) {
    const auto log = evolve(sample_stationary_inputs(1.0, 100, 100, UnitStream{33, k}));
    mid.push_back(static_cast<std::int64_t>(config_at(log, 50.0).size()));
    const auto c = config_at(log, 80.0).positions;
    part.push_back(std::upper_bound(c.begin(), c.end(), 30.0) - c.begin());
  }
  double s = 0.0;
  for (auto v : mid) s += static_cast<double>(v);
  CHECK(std::abs(s / 400.0 - 100.0) < 4.0 * std::sqrt(100.0 / 400.0));
  CHECK(dispersion_test(mid, 100.0).pass);
  CHECK(dispersion_test(part, 30.0).pass);
}

TEST_CASE("boundary means in the stationary box") {
  double nb = 0, ne = 0, nn = 0;
  const int reps = 100;
  for (int k = 0; k < reps; ++k) {
    const auto b = extract_boundary(evolve(sample_stationary_inputs(1.0, 50, 50, UnitStream{34, static_cast<std::uint64_t>(k)})));
    nb += static_cast<double>(b.beta.size());
    ne += static_cast<double>(b.east_entries.size());
    nn += static_cast<double>(b.north_exits.size());
  }
  CHECK(std::abs(nb / reps - 2500.0) < 4.0 * 50.0 / std::sqrt(reps));
  CHECK(std::abs(ne / reps - 50.0) < 4.0 * std::sqrt(50.0 / reps));
  CHECK(std::abs(nn / reps - 50.0) < 4.0 * std::sqrt(50.0 / reps));
}

TEST_CASE("time reversal examples") {
  const auto a = evolve(make_inputs(1, 1, {0.3}, {}, {}));
  const auto ra = rotated_inputs(a);
  CHECK(ra.sources.size() == 1);
  CHECK(ra.sources[0] == doctest::Approx(0.7));
  CHECK(time_reverse_check(a));

  const auto b = evolve(make_inputs(1, 1, {}, {0.5}, {{0.5, 0.2}}));
  const auto rb = rotated_inputs(b);
  CHECK(rb.alphas == Points2D{{0.5, 0.5}});
  REQUIRE(rb.sinks.size() == 1);
  CHECK(rb.sinks[0] == doctest::Approx(0.8));
  const auto bb = extract_boundary(evolve(rb));
  REQUIRE(bb.beta.size() == 1);
  CHECK(bb.beta[0].x == doctest::Approx(0.5));
  CHECK(bb.beta[0].t == doctest::Approx(0.8));
  CHECK(time_reverse_check(b));

  // A sink that finds no particle leaves no trace in the rotated run.
  CHECK(time_reverse_check(evolve(make_inputs(1, 1, {}, {0.4}, {{0.6, 0.5}}))));
}

TEST_CASE("streaming drive equals evolve") {
  const UnitStream s{35, 0};
  const auto in = sample_stationary_inputs(1.0, 30, 30, s);
  const auto log = evolve(in);
  ParticleState st(in.sources);
  PoissonPlaneStream alphas(in.box(), 1.0, s.child(2));
  std::vector<Event> events;
  drive(st, in.sinks, alphas, [&](const Event& e) { events.push_back(e); });
  REQUIRE(events.size() == log.events.size());
  for (std::size_t i = 0; i < events.size(); ++i) REQUIRE(same_event(events[i], log.events[i]));
  CHECK(st.config().positions == log.final_config.positions);
}

TEST_CASE("particle store compaction keeps the configuration") {
  ParticleState st;
  for (int i = 0; i < 20000; ++i) {
    st.apply_alpha(1.0 + i, i);
    if (i % 2 == 1) st.apply_sink(i + 0.5);
  }
  CHECK(st.size() == 10000);
  CHECK(st.positions()[0] == 10001.0);
  CHECK(st.count_upto(10010.0) == 10);
}
