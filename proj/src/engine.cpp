#include "hammersley/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hammersley/errors.hpp"

namespace hammersley {

namespace {

bool same_coord(double a, double b) noexcept {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

bool same_event(const Event& a, const Event& b) noexcept {
  return a.time == b.time && a.kind == b.kind && same_coord(a.from, b.from) &&
         same_coord(a.to, b.to);
}

void SimInputs::validate() const {
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw InvalidInput("box lengths must be >= 0");
  if (!is_valid_points1d(sources, Interval(0.0, t1)))
    throw InvalidInput("sources must be strictly increasing within [0, t1]");
  if (!is_valid_points1d(sinks, Interval(0.0, t2)))
    throw DuplicateEventTime("sinks must be strictly increasing within [0, t2]");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto& a = alphas[i];
    if (!box().contains(a.x, a.t)) throw InvalidInput("alpha point outside the box");
    if (i > 0) {
      if (alphas[i - 1].t == a.t)
        throw DuplicateEventTime("two alpha points share time " + std::to_string(a.t));
      if (alphas[i - 1].t > a.t) throw InvalidInput("alpha points must be sorted by time");
    }
  }
  // Sinks and alphas are both sorted; a linear merge finds shared times.
  std::size_t i = 0, j = 0;
  while (i < sinks.size() && j < alphas.size()) {
    if (sinks[i] == alphas[j].t)
      throw DuplicateEventTime("sink and alpha share time " + std::to_string(sinks[i]));
    (sinks[i] < alphas[j].t) ? ++i : ++j;
  }
}

SimInputs sample_stationary_inputs(double lambda, double t1, double t2, const UnitStream& stream) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  SimInputs in;
  in.t1 = t1;
  in.t2 = t2;
  in.lambda_meta = lambda;
  in.sources = sample_poisson_1d(Interval(0.0, t1), lambda, stream.child(0));
  in.sinks = sample_poisson_1d(Interval(0.0, t2), 1.0 / lambda, stream.child(1));
  in.alphas = sample_poisson_2d({Interval(0.0, t1), Interval(0.0, t2)}, 1.0, stream.child(2));
  return in;
}

SimInputs sample_empty_start_inputs(double t1, double t2, const UnitStream& stream) {
  SimInputs in;
  in.t1 = t1;
  in.t2 = t2;
  in.alphas = sample_poisson_2d({Interval(0.0, t1), Interval(0.0, t2)}, 1.0, stream.child(2));
  return in;
}

// --- ParticleState ---------------------------------------------------------

ParticleState::ParticleState(std::span<const double> initial)
    : buf_(initial.begin(), initial.end()) {}

Event ParticleState::apply_alpha(double at, double time) {
  const auto first = buf_.begin() + static_cast<std::ptrdiff_t>(head_);
  const auto it = std::lower_bound(first, buf_.end(), at);
  if (it == buf_.end()) {
    buf_.push_back(at);
    return Event::alpha_create(time, at);
  }
  const double from = *it;
  *it = at;
  return Event::alpha_jump(time, from, at);
}

Event ParticleState::apply_sink(double time) {
  if (head_ == buf_.size()) return Event::sink_void(time);
  const double from = buf_[head_++];
  if (head_ > 4096 && head_ * 2 > buf_.size()) {
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
  return Event::sink_consume(time, from);
}

std::size_t ParticleState::count_upto(double x) const {
  const auto p = positions();
  return static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), x) - p.begin());
}

// --- pure operators ----------------------------------------------------------

std::pair<ParticleConfig, Event> apply_alpha(const ParticleConfig& c, double at, double time,
                                             double t1) {
  if (!(at >= 0.0 && at <= t1)) throw InvalidInput("alpha position outside [0, t1]");
  ParticleState s(c.positions);
  Event e = s.apply_alpha(at, time);
  return {s.config(), e};
}

std::pair<ParticleConfig, Event> apply_sink(const ParticleConfig& c, double time) {
  ParticleState s(c.positions);
  Event e = s.apply_sink(time);
  return {s.config(), e};
}

// --- runs ------------------------------------------------------------------

EventLog evolve(const SimInputs& inp) {
  inp.validate();
  EventLog log;
  log.inputs = inp;
  log.events.reserve(inp.alphas.size() + inp.sinks.size());
  ParticleState state(inp.sources);
  PointsCursor cursor(inp.alphas);
  drive(state, inp.sinks, cursor, [&](const Event& e) { log.events.push_back(e); });
  log.final_config = state.config();
  return log;
}

ParticleConfig config_at(const EventLog& log, double t) {
  if (!(t >= 0.0 && t <= log.inputs.t2)) throw InvalidInput("config_at: time outside [0, t2]");
  ParticleState state(log.inputs.sources);
  for (const auto& e : log.events) {
    if (e.time > t) break;
    if (e.is_alpha())
      state.apply_alpha(e.to, e.time);
    else
      state.apply_sink(e.time);
  }
  return state.config();
}

BoundaryTally extract_boundary(const EventLog& log) {
  BoundaryTally b;
  for (const auto& e : log.events) {
    switch (e.kind) {
      case EventKind::AlphaJump:
        b.beta.push_back({e.from, e.time});
        break;
      case EventKind::AlphaCreate:
        b.east_entries.push_back(e.time);
        break;
      case EventKind::SinkConsume:
        b.beta.push_back({e.from, e.time});
        b.consumed_sink_times.push_back(e.time);
        break;
      case EventKind::SinkVoid:
        break;
    }
  }
  b.north_exits = log.final_config.positions;
  return b;
}

std::size_t path_count_box(const EventLog& log, double x, double t) {
  if (!(x >= 0.0 && x <= log.inputs.t1) || !(t >= 0.0 && t <= log.inputs.t2))
    throw InvalidInput("path_count_box: corner outside the box");
  std::size_t exited = 0;
  for (const auto& e : log.events) {
    if (e.time > t) break;
    // A void sink takes a particle from beyond the east edge, whose path
    // still crosses the box.
    if (!e.is_alpha()) ++exited;
  }
  const auto c = config_at(log, t).positions;
  const auto lo = std::upper_bound(c.begin(), c.end(), 0.0);
  const auto hi = std::upper_bound(c.begin(), c.end(), x);
  return exited + static_cast<std::size_t>(hi - lo);
}

namespace {

Points1D reflect_sorted(std::span<const double> p, double length) {
  Points1D out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(length - *it);
  return out;
}

}  // namespace

SimInputs rotated_inputs(const EventLog& log) {
  const auto b = extract_boundary(log);
  SimInputs r;
  r.t1 = log.inputs.t1;
  r.t2 = log.inputs.t2;
  r.lambda_meta = log.inputs.lambda_meta;
  r.sources = reflect_sorted(b.north_exits, r.t1);
  r.sinks = reflect_sorted(b.east_entries, r.t2);
  r.alphas = rotate180(b.beta, log.inputs.box());
  return r;
}

bool time_reverse_check(const EventLog& log) {
  const SimInputs rin = rotated_inputs(log);
  EventLog rlog;
  try {
    rlog = evolve(rin);
  } catch (const InvalidInput&) {
    return false;
  }
  const auto rb = extract_boundary(rlog);
  const auto& in = log.inputs;
  const auto orig = extract_boundary(log);
  return rb.beta == rotate180(in.alphas, in.box()) &&
         rb.east_entries == reflect_sorted(orig.consumed_sink_times, in.t2) &&
         rb.north_exits == reflect_sorted(in.sources, in.t1);
}

}  // namespace hammersley
