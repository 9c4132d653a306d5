#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hammersley/point_process.hpp"

namespace hammersley {

/// Finite particle configuration on [0, T1], nondecreasing. The empty vector
/// is the empty configuration.
struct ParticleConfig {
  std::vector<double> positions;

  std::size_t size() const noexcept { return positions.size(); }
  bool empty() const noexcept { return positions.empty(); }
  friend bool operator==(const ParticleConfig&, const ParticleConfig&) = default;
};

enum class EventKind { AlphaJump, AlphaCreate, SinkConsume, SinkVoid };

/// One state change. `from` is set for AlphaJump and SinkConsume, `to` for
/// AlphaJump and AlphaCreate; unused fields hold NaN.
struct Event {
  static constexpr double none = std::numeric_limits<double>::quiet_NaN();

  double time = 0.0;
  EventKind kind = EventKind::SinkVoid;
  double from = none;
  double to = none;

  static Event alpha_jump(double time, double from, double to) {
    return {time, EventKind::AlphaJump, from, to};
  }
  static Event alpha_create(double time, double at) {
    return {time, EventKind::AlphaCreate, none, at};
  }
  static Event sink_consume(double time, double from) {
    return {time, EventKind::SinkConsume, from, none};
  }
  static Event sink_void(double time) { return {time, EventKind::SinkVoid, none, none}; }

  bool is_alpha() const noexcept {
    return kind == EventKind::AlphaJump || kind == EventKind::AlphaCreate;
  }
};

bool same_event(const Event& a, const Event& b) noexcept;

struct SimInputs {
  double t1 = 0.0;
  double t2 = 0.0;
  Points1D sources;  ///< on [0, t1]
  Points1D sinks;    ///< times on [0, t2]
  Points2D alphas;   ///< in [0, t1] x [0, t2], time-sorted
  double lambda_meta = 0.0;

  Rect box() const { return {Interval(0.0, t1), Interval(0.0, t2)}; }

  /// Throws InvalidInput (or DuplicateEventTime) on any violated invariant.
  void validate() const;
};

/// Stationary inputs: Poisson(lambda) sources, Poisson(1/lambda) sinks and
/// rate-1 alpha points, each drawn from its own child of `stream`.
SimInputs sample_stationary_inputs(double lambda, double t1, double t2, const UnitStream& stream);
/// Empty axes, rate-1 alpha points.
SimInputs sample_empty_start_inputs(double t1, double t2, const UnitStream& stream);

struct EventLog {
  SimInputs inputs;
  std::vector<Event> events;
  ParticleConfig final_config;
};

struct BoundaryTally {
  Points1D east_entries;         ///< AlphaCreate times
  Points1D north_exits;          ///< final positions
  Points1D consumed_sink_times;  ///< SinkConsume times
  Points2D beta;                 ///< (from, time) of AlphaJump and SinkConsume
};

/// Mutable configuration store used by the simulators: a sorted array with a
/// moving head. An alpha event replaces its successor in place (the sorted
/// rank does not change), creation appends, and a sink advances the head, so
/// every event costs at most one binary search.
class ParticleState {
 public:
  ParticleState() = default;
  explicit ParticleState(std::span<const double> initial);

  Event apply_alpha(double at, double time);
  Event apply_sink(double time);

  std::span<const double> positions() const noexcept {
    return {buf_.data() + head_, buf_.size() - head_};
  }
  std::size_t size() const noexcept { return buf_.size() - head_; }
  /// Number of particles in (0, x].
  std::size_t count_upto(double x) const;
  ParticleConfig config() const { return {{buf_.begin() + static_cast<std::ptrdiff_t>(head_), buf_.end()}}; }

 private:
  std::vector<double> buf_;
  std::size_t head_ = 0;
};

/// Applies the insertion operator at `at`; throws InvalidInput unless
/// 0 <= at <= t1.
std::pair<ParticleConfig, Event> apply_alpha(const ParticleConfig& c, double at, double time,
                                             double t1);
/// Applies the exit-to-the-left operator.
std::pair<ParticleConfig, Event> apply_sink(const ParticleConfig& c, double time);

/// Drives `state` through the alpha source and sink times in time order,
/// calling `observer(const Event&)` after each event. `Alphas` provides
/// done()/current()/advance() like PoissonPlaneStream. Times are assumed
/// distinct.
template <class Alphas, class Observer>
void drive(ParticleState& state, std::span<const double> sinks, Alphas& alphas,
           Observer&& observer) {
  std::size_t si = 0;
  while (!alphas.done() || si < sinks.size()) {
    const bool take_sink =
        si < sinks.size() && (alphas.done() || sinks[si] < alphas.current().t);
    if (take_sink) {
      observer(state.apply_sink(sinks[si]));
      ++si;
    } else {
      const Point2 a = alphas.current();
      observer(state.apply_alpha(a.x, a.t));
      alphas.advance();
    }
  }
}

/// Alpha source over a materialized, time-sorted point set.
class PointsCursor {
 public:
  explicit PointsCursor(std::span<const Point2> p) : p_(p) {}
  bool done() const noexcept { return i_ >= p_.size(); }
  const Point2& current() const noexcept { return p_[i_]; }
  void advance() noexcept { ++i_; }

 private:
  std::span<const Point2> p_;
  std::size_t i_ = 0;
};

EventLog evolve(const SimInputs& inp);

/// Configuration right after all events with time <= t.
ParticleConfig config_at(const EventLog& log, double t);

BoundaryTally extract_boundary(const EventLog& log);

/// Space-time paths meeting [0, x] x [0, t]: sink events up to t plus
/// particles of config_at(t) in (0, x]. Void sinks count too: without the
/// east edge they would take a particle from beyond it.
std::size_t path_count_box(const EventLog& log, double x, double t);

/// Inputs of the run rotated by 180 degrees: sources from the north exits,
/// sinks from the east entries and alpha points from the beta points.
SimInputs rotated_inputs(const EventLog& log);

/// Re-runs the rotated inputs and checks that the rotated run's beta points,
/// east entries and north exits are exactly the rotated alpha points,
/// consumed sink times and sources of the original run.
bool time_reverse_check(const EventLog& log);

}  // namespace hammersley
