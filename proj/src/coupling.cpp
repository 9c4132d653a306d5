#include "hammersley/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "hammersley/errors.hpp"

namespace hammersley {

double Trajectory::at(double t) const {
  auto it = std::upper_bound(jumps.begin(), jumps.end(), t,
                             [](double v, const Jump& j) { return v < j.time; });
  return it == jumps.begin() ? 0.0 : std::prev(it)->pos;
}

// --- isolated second-class particle ------------------------------------------

void SecondClassTracker::on_event(const Event& e) {
  if (!traj_.complete()) return;
  switch (e.kind) {
    case EventKind::AlphaJump:
      if (e.to <= x_ && e.from > x_) {
        x_ = e.from;
        traj_.push(e.time, x_);
      }
      break;
    case EventKind::SinkConsume:
      if (e.from > x_) {
        x_ = e.from;
        traj_.push(e.time, x_);
      }
      break;
    case EventKind::AlphaCreate:
      // The pulled particle came from beyond the east edge; its previous
      // position is unknown.
      if (e.to <= x_) traj_.valid_until = e.time;
      break;
    case EventKind::SinkVoid:
      // Likewise the sink took a particle from beyond the east edge.
      traj_.valid_until = e.time;
      break;
  }
}

Trajectory isolated_second_class(const EventLog& log) {
  SecondClassTracker tracker;
  for (const auto& e : log.events) tracker.on_event(e);
  return tracker.take();
}

SimInputs transpose_inputs(const SimInputs& inp) {
  SimInputs out;
  out.t1 = inp.t2;
  out.t2 = inp.t1;
  out.sources = inp.sinks;
  out.sinks = inp.sources;
  out.alphas = transpose_points(inp.alphas);
  out.lambda_meta = inp.lambda_meta > 0.0 ? 1.0 / inp.lambda_meta : 0.0;
  return out;
}

Trajectory second_class_lr(const SimInputs& inp) {
  return isolated_second_class(evolve(transpose_inputs(inp)));
}

// --- coupled pairs ------------------------------------------------------------

void CouplingSpec::validate() const {
  if (!(gamma > 0.0) || !(delta > 0.0)) throw InvalidParameter("gamma and delta must be > 0");
  if (mode == CouplingMode::ThickenSources && delta < gamma)
    throw InvalidParameter("thickening requires delta >= gamma");
  if (mode == CouplingMode::ThinSources && delta > gamma)
    throw InvalidParameter("thinning requires delta <= gamma");
}

CoupledPair make_coupled_pair(const SimInputs& base, const CouplingSpec& spec,
                              const UnitStream& stream) {
  spec.validate();
  CoupledPair pair;
  pair.mode = spec.mode;
  pair.eta = base;
  pair.sigma = base;
  if (spec.mode == CouplingMode::ThickenSources) {
    pair.added_sources =
        sample_poisson_1d(Interval(0.0, base.t1), spec.delta - spec.gamma, stream.child(10));
    auto th = thin(base.sinks, spec.gamma / spec.delta, stream.child(11));
    pair.removed_sinks = std::move(th.removed);
    pair.sigma.sinks = std::move(th.kept);
    pair.sigma.sources = superpose(base.sources, pair.added_sources);
    pair.sigma.lambda_meta = spec.delta;
  } else {
    pair.added_sinks = sample_poisson_1d(Interval(0.0, base.t2),
                                         1.0 / spec.delta - 1.0 / spec.gamma, stream.child(10));
    auto th = thin(base.sources, spec.delta / spec.gamma, stream.child(11));
    pair.removed_sources = std::move(th.removed);
    pair.sigma.sources = std::move(th.kept);
    pair.sigma.sinks = superpose(base.sinks, pair.added_sinks);
    pair.sigma.lambda_meta = spec.delta;
  }
  return pair;
}

CoupledPair transpose_pair(const CoupledPair& pair) {
  CoupledPair t;
  t.eta = transpose_inputs(pair.eta);
  t.sigma = transpose_inputs(pair.sigma);
  t.mode = pair.mode == CouplingMode::ThickenSources ? CouplingMode::ThinSources
                                                      : CouplingMode::ThickenSources;
  t.removed_sinks = pair.removed_sources;
  t.added_sources = pair.added_sinks;
  t.removed_sources = pair.removed_sinks;
  t.added_sinks = pair.added_sources;
  return t;
}

namespace {

struct Snapshot {
  ParticleConfig config;
  long exits = 0;
};

Snapshot snapshot_at(const EventLog& log, double t) {
  Snapshot s;
  s.config = config_at(log, t);
  for (const auto& e : log.events) {
    if (e.time > t) break;
    if (e.kind == EventKind::SinkConsume) ++s.exits;
  }
  return s;
}

long count_in(const ParticleConfig& c, double x, bool closed) {
  const auto& p = c.positions;
  const auto lo = std::upper_bound(p.begin(), p.end(), 0.0);
  const auto hi = closed ? std::upper_bound(p.begin(), p.end(), x)
                         : std::lower_bound(p.begin(), p.end(), x);
  return hi > lo ? static_cast<long>(hi - lo) : 0;
}

void check_pair_logs(const EventLog& eta_log, const EventLog& sigma_log) {
  if (eta_log.inputs.t1 != sigma_log.inputs.t1 || eta_log.inputs.t2 != sigma_log.inputs.t2 ||
      eta_log.inputs.alphas != sigma_log.inputs.alphas)
    throw InvalidInput("logs do not come from a coupled pair");
}

// Visits the events of two logs time by time; `fn(const Event*, const Event*)`
// receives null for a log without an event at that time.
template <class Fn>
void walk_pair(const EventLog& a, const EventLog& b, Fn&& fn) {
  std::size_t i = 0, j = 0;
  while (i < a.events.size() || j < b.events.size()) {
    const double ta = i < a.events.size() ? a.events[i].time : INFINITY;
    const double tb = j < b.events.size() ? b.events[j].time : INFINITY;
    const Event* ea = ta <= tb ? &a.events[i] : nullptr;
    const Event* eb = tb <= ta ? &b.events[j] : nullptr;
    if (ea) ++i;
    if (eb) ++j;
    fn(ea, eb);
  }
}

}  // namespace

long flux(const EventLog& eta_log, const EventLog& sigma_log, double x, double t) {
  check_pair_logs(eta_log, sigma_log);
  const auto se = snapshot_at(eta_log, t);
  const auto ss = snapshot_at(sigma_log, t);
  return (count_in(ss.config, x, true) + ss.exits) - (count_in(se.config, x, true) + se.exits);
}

std::pair<long, long> flux_around(const EventLog& eta_log, const EventLog& sigma_log, double z,
                                  double t) {
  check_pair_logs(eta_log, sigma_log);
  const auto se = snapshot_at(eta_log, t);
  const auto ss = snapshot_at(sigma_log, t);
  const long left = (count_in(ss.config, z, false) + ss.exits) - (count_in(se.config, z, false) + se.exits);
  const long right = (count_in(ss.config, z, true) + ss.exits) - (count_in(se.config, z, true) + se.exits);
  return {left, right};
}

// --- discrepancy tracking ------------------------------------------------------

XiTracker::XiTracker(std::span<const double> added_sources)
    : pos_(added_sources.begin(), added_sources.end()) {}

std::optional<double> XiTracker::z_position() const {
  if (!z_rank_) return std::nullopt;
  return pos_[*z_rank_];
}

std::size_t XiTracker::rank_of(double p) const {
  const auto it = std::lower_bound(pos_.begin(), pos_.end(), p);
  if (it == pos_.end() || *it != p)
    throw InvalidInput("coupled runs disagree: expected a discrepancy particle");
  return static_cast<std::size_t>(it - pos_.begin());
}

void XiTracker::record_z(double time) {
  if (!z_rank_) return;
  const double p = pos_[*z_rank_];
  if (z_.jumps.empty() || z_.jumps.back().pos != p) z_.push(time, p);
}

void XiTracker::move(double from, double to, double time) {
  const std::size_t j = rank_of(from);
  const std::size_t m =
      static_cast<std::size_t>(std::lower_bound(pos_.begin(), pos_.end(), to) - pos_.begin()) - 1;
  for (std::size_t r = j; r < m; ++r) pos_[r] = pos_[r + 1];
  pos_[m] = to;
  if (z_rank_ && *z_rank_ >= j && *z_rank_ <= m) record_z(time);
}

void XiTracker::exit_east(double from, double time) {
  const std::size_t j = rank_of(from);
  const std::size_t last = pos_.size() - 1;
  pos_.erase(pos_.begin() + static_cast<std::ptrdiff_t>(j));
  if (!z_rank_) return;
  if (*z_rank_ == last) {
    z_rank_.reset();
    z_.valid_until = std::min(z_.valid_until, time);
  } else if (*z_rank_ >= j) {
    record_z(time);
  }
}

// A discrepancy born at a removed sink enters from the origin, so it takes
// the leftmost identity and every other identity shifts one place right.
void XiTracker::create(double at, double time) {
  pos_.insert(std::lower_bound(pos_.begin(), pos_.end(), at), at);
  if (z_rank_) {
    ++*z_rank_;
    record_z(time);
  } else if (z_.jumps.empty() && z_.complete()) {
    z_rank_ = 0;
    record_z(time);
  }
}

// A removed sink that finds eta empty in the box takes a particle from beyond
// the east edge; the new discrepancy is born out there. Identities still
// shift right, and the last one inside the box leaves it.
void XiTracker::create_beyond(double time) {
  if (!z_rank_) {
    if (!(z_.jumps.empty() && z_.complete())) return;
    if (pos_.empty()) {
      z_.valid_until = time;
      return;
    }
    z_rank_ = 0;
    record_z(time);
    return;
  }
  if (++*z_rank_ == pos_.size()) {
    z_rank_.reset();
    z_.valid_until = std::min(z_.valid_until, time);
  } else {
    record_z(time);
  }
}

void XiTracker::step(const Event* eta, const Event* sigma) {
  if (!eta && !sigma) return;
  if (!eta) throw InvalidInput("sigma has an event that eta lacks");
  const double time = eta->time;
  if (!sigma) {
    // Sink removed from sigma: eta's leftmost particle becomes a discrepancy.
    if (eta->kind == EventKind::SinkConsume)
      create(eta->from, time);
    else
      create_beyond(time);
    return;
  }
  if (eta->is_alpha() != sigma->is_alpha() || eta->time != sigma->time)
    throw InvalidInput("coupled runs are out of step");
  const bool sigma_moved =
      sigma->kind == EventKind::AlphaJump || sigma->kind == EventKind::SinkConsume;
  if (!sigma_moved) return;
  const bool eta_moved = eta->kind == EventKind::AlphaJump || eta->kind == EventKind::SinkConsume;
  if (eta_moved && eta->from == sigma->from) return;
  // Otherwise eta took its particle from beyond the east edge (a creation or
  // a void sink): the discrepancy moves out of the box.
  if (eta_moved)
    move(sigma->from, eta->from, time);
  else
    exit_east(sigma->from, time);
}

ZTrack track_z(const CoupledPair& pair, const EventLog& eta_log, const EventLog& sigma_log) {
  if (pair.mode != CouplingMode::ThickenSources)
    throw InvalidInput("track_z needs a ThickenSources pair; transpose the pair first");
  check_pair_logs(eta_log, sigma_log);
  XiTracker xi(pair.added_sources);
  walk_pair(eta_log, sigma_log, [&](const Event* a, const Event* b) { xi.step(a, b); });
  return {xi.z(), !xi.z().jumps.empty()};
}

bool verify_domination(const EventLog& eta_log, const EventLog& sigma_log) {
  check_pair_logs(eta_log, sigma_log);
  ParticleState eta(eta_log.inputs.sources);
  ParticleState sigma(sigma_log.inputs.sources);
  auto dominated = [&] {
    const auto e = eta.positions();
    const auto s = sigma.positions();
    if (s.size() < e.size()) return false;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (s[k] > e[k]) return false;
    return true;
  };
  bool ok = dominated();
  walk_pair(eta_log, sigma_log, [&](const Event* a, const Event* b) {
    if (!ok) return;
    if (a) a->is_alpha() ? (void)eta.apply_alpha(a->to, a->time) : (void)eta.apply_sink(a->time);
    if (b) b->is_alpha() ? (void)sigma.apply_alpha(b->to, b->time) : (void)sigma.apply_sink(b->time);
    ok = dominated();
  });
  return ok;
}

bool verify_z_below_x(const Trajectory& z, const Trajectory& x) {
  auto check = [&](double t) {
    return !(z.valid_at(t) && x.valid_at(t)) || z.at(t) <= x.at(t);
  };
  for (const auto& j : z.jumps)
    if (!check(j.time)) return false;
  for (const auto& j : x.jumps)
    if (!check(j.time)) return false;
  return true;
}

bool verify_sinks_irrelevant(const EventLog& log_full, const EventLog& log_nosinks, const Trajectory& traj) {
  const auto& a = log_full.inputs;
  const auto& b = log_nosinks.inputs;
  if (!b.sinks.empty() || a.sources != b.sources || a.alphas != b.alphas || a.t1 != b.t1 ||
      a.t2 != b.t2)
    throw InvalidInput("verify_sinks_irrelevant: logs must share sources and alpha points, without sinks");

  ParticleState full(a.sources);
  ParticleState bare(b.sources);
  bool ok = true;
  walk_pair(log_full, log_nosinks, [&](const Event* ef, const Event* eb) {
    if (!ok) return;
    const double time = ef ? ef->time : eb->time;
    if (ef) ef->is_alpha() ? (void)full.apply_alpha(ef->to, time) : (void)full.apply_sink(time);
    if (eb) bare.apply_alpha(eb->to, time);
    if (!traj.valid_at(time)) return;
    const double x = traj.at(time);
    if (ef && eb && ef->to > x && !same_event(*ef, *eb)) ok = false;
    const auto pf = full.positions();
    const auto pb = bare.positions();
    const auto tf = std::upper_bound(pf.begin(), pf.end(), x);
    const auto tb = std::upper_bound(pb.begin(), pb.end(), x);
    if (!std::equal(tf, pf.end(), tb, pb.end())) ok = false;
  });
  return ok;
}

bool verify_ordering(const Trajectory& x_traj, const Trajectory& xprime_traj) {
  auto holds = [&](double x) {
    if (!xprime_traj.valid_at(x)) return true;
    const double s = xprime_traj.at(x);
    if (!x_traj.valid_at(s)) return true;
    return x_traj.at(s) <= x;
  };
  if (!holds(0.0)) return false;
  for (const auto& j : xprime_traj.jumps)
    if (!holds(j.time)) return false;
  for (const auto& j : x_traj.jumps)
    if (!holds(j.pos)) return false;
  return true;
}

// --- streaming -------------------------------------------------------------------

Trajectory stream_second_class(double lambda, double t1, double t2, const UnitStream& stream) {
  if (!(lambda > 0.0)) throw InvalidParameter("lambda must be > 0");
  const auto sources = sample_poisson_1d(Interval(0.0, t1), lambda, stream.child(0));
  const auto sinks = sample_poisson_1d(Interval(0.0, t2), 1.0 / lambda, stream.child(1));
  PoissonPlaneStream alphas({Interval(0.0, t1), Interval(0.0, t2)}, 1.0, stream.child(2));
  ParticleState state(sources);
  SecondClassTracker tracker;
  drive(state, sinks, alphas, [&](const Event& e) { tracker.on_event(e); });
  return tracker.take();
}

CoupledStreamResult run_coupled_stream(const CoupledStreamParams& p, const UnitStream& stream) {
  SimInputs base;
  base.t1 = p.t1;
  base.t2 = p.t2;
  base.lambda_meta = p.gamma;
  base.sources = sample_poisson_1d(Interval(0.0, p.t1), p.gamma, stream.child(0));
  base.sinks = sample_poisson_1d(Interval(0.0, p.t2), 1.0 / p.gamma, stream.child(1));
  const auto pair =
      make_coupled_pair(base, {p.gamma, p.delta, CouplingMode::ThickenSources}, stream.child(3));

  CoupledStreamResult out;
  out.removed_sinks = pair.removed_sinks.size();
  out.added_sources = pair.added_sources.size();

  ParticleState eta(pair.eta.sources);
  ParticleState sigma(pair.sigma.sources);
  SecondClassTracker xtrack;
  XiTracker xi(pair.added_sources);
  long eta_exits = 0, sigma_exits = 0;

  PoissonPlaneStream alphas(base.box(), 1.0, stream.child(2));
  const auto& sinks = pair.eta.sinks;
  const auto& kept = pair.sigma.sinks;
  std::size_t si = 0, ki = 0;
  while (!alphas.done() || si < sinks.size()) {
    if (si < sinks.size() && (alphas.done() || sinks[si] < alphas.current().t)) {
      const double time = sinks[si++];
      const Event ee = eta.apply_sink(time);
      if (ee.kind == EventKind::SinkConsume) ++eta_exits;
      xtrack.on_event(ee);
      if (ki < kept.size() && kept[ki] == time) {
        ++ki;
        const Event se = sigma.apply_sink(time);
        if (se.kind == EventKind::SinkConsume) ++sigma_exits;
        xi.step(&ee, &se);
      } else {
        xi.step(&ee, nullptr);
      }
    } else {
      const Point2 a = alphas.current();
      alphas.advance();
      const Event ee = eta.apply_alpha(a.x, a.t);
      const Event se = sigma.apply_alpha(a.x, a.t);
      xtrack.on_event(ee);
      xi.step(&ee, &se);
    }
  }
  out.x = xtrack.take();
  out.z = xi.z();
  out.z_started = !out.z.jumps.empty();
  for (double x : p.flux_positions)
    out.flux.push_back((static_cast<long>(sigma.count_upto(x)) + sigma_exits) -
                       (static_cast<long>(eta.count_upto(x)) + eta_exits));
  return out;
}

}  // namespace hammersley
