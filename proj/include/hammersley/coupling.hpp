#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hammersley/engine.hpp"

namespace hammersley {

struct Jump {
  double time;
  double pos;
};

/// Nondecreasing right-continuous step path starting at 0 at time 0.
///
/// `valid_until` marks the first time the path could no longer be followed
/// inside the simulated box (the tracked particle would have needed a
/// particle entering from beyond the east edge); the path is exact before
/// that time.
struct Trajectory {
  std::vector<Jump> jumps;
  double valid_until = std::numeric_limits<double>::infinity();

  double at(double t) const;
  bool valid_at(double t) const noexcept { return t < valid_until; }
  bool complete() const noexcept { return valid_until == std::numeric_limits<double>::infinity(); }
  void push(double time, double pos) { jumps.push_back({time, pos}); }
};

/// Follows the isolated second-class particle through a stream of events.
///
/// A particle jumping from `from` > X to `to` <= X drags X to `from`; a sink
/// counts as a jump to the origin, so the first consumed particle starts X.
class SecondClassTracker {
 public:
  void on_event(const Event& e);
  double position() const noexcept { return x_; }
  const Trajectory& trajectory() const noexcept { return traj_; }
  Trajectory take() { return std::move(traj_); }

 private:
  double x_ = 0.0;
  Trajectory traj_;
};

Trajectory isolated_second_class(const EventLog& log);

/// Mirror image in the diagonal: alpha points transposed, sources and sinks
/// exchanged, t1 and t2 exchanged.
SimInputs transpose_inputs(const SimInputs& inp);

/// Second-class particle of the left-to-right process: the trajectory maps
/// x to X'_x.
Trajectory second_class_lr(const SimInputs& inp);

enum class CouplingMode { ThickenSources, ThinSources };

struct CouplingSpec {
  double gamma = 1.0;
  double delta = 1.0;
  CouplingMode mode = CouplingMode::ThickenSources;

  /// Throws InvalidParameter for nonpositive intensities or a mode that
  /// disagrees with the ordering of gamma and delta.
  void validate() const;
};

/// eta and sigma share their alpha points. In ThickenSources mode sigma has
/// extra Poisson(delta - gamma) sources and keeps each eta sink with
/// probability gamma/delta. ThinSources is the diagonal mirror: sigma keeps
/// each source with probability delta/gamma and gains Poisson(1/delta -
/// 1/gamma) sinks.
struct CoupledPair {
  SimInputs eta;
  SimInputs sigma;
  CouplingMode mode = CouplingMode::ThickenSources;
  Points1D removed_sinks;
  Points1D added_sources;
  Points1D removed_sources;
  Points1D added_sinks;
};

CoupledPair make_coupled_pair(const SimInputs& base, const CouplingSpec& spec,
                              const UnitStream& stream);

/// Mirrors a pair in the diagonal; a ThinSources pair becomes a
/// ThickenSources pair of the left-to-right process.
CoupledPair transpose_pair(const CoupledPair& pair);

/// F(x, t) = sigma_t[0, x] - eta_t[0, x], where exited particles count as
/// located at zero.
long flux(const EventLog& eta_log, const EventLog& sigma_log, double x, double t);

/// Tracks the discrepancy particles of sigma with respect to eta and the
/// path of the one created at the first removed sink (Z).
///
/// Discrepancies keep their left-to-right order: when one is pushed past
/// others, each shifts to the next discrepancy position.
class XiTracker {
 public:
  explicit XiTracker(std::span<const double> added_sources);

  /// Feeds the events of both processes at one time; either may be null
  /// when that process has no event at this time (sigma is null at a
  /// removed sink).
  void step(const Event* eta, const Event* sigma);

  std::span<const double> positions() const noexcept { return pos_; }
  bool z_started() const noexcept { return z_rank_.has_value(); }
  std::optional<double> z_position() const;
  const Trajectory& z() const noexcept { return z_; }

 private:
  void move(double from, double to, double time);
  void exit_east(double from, double time);
  void create(double at, double time);
  void create_beyond(double time);
  std::size_t rank_of(double p) const;
  void record_z(double time);

  std::vector<double> pos_;
  std::optional<std::size_t> z_rank_;
  Trajectory z_;
};

struct ZTrack {
  Trajectory z;
  /// False when there was no removed sink, or when Z was born beyond the
  /// east edge; Z then stays at 0 (with `valid_until` set in the second
  /// case).
  bool started = false;
};

ZTrack track_z(const CoupledPair& pair, const EventLog& eta_log, const EventLog& sigma_log);

/// eta_t(0, x] <= sigma_t(0, x] for every x, checked after every event.
bool verify_domination(const EventLog& eta_log, const EventLog& sigma_log);

/// Z_t <= X_t at every jump time of either path inside both valid ranges.
bool verify_z_below_x(const Trajectory& z, const Trajectory& x);

/// F(., t) just left of z and at z: {F(z-), F(z)}.
std::pair<long, long> flux_around(const EventLog& eta_log, const EventLog& sigma_log,
                                  double z, double t);

/// Checks that the run with sinks and the run without sinks have the same
/// particles strictly to the right of the second-class particle at every
/// event time, and the same alpha events there. Throws InvalidInput if the
/// logs do not share sources and alpha points or if `log_nosinks` has sinks.
bool verify_sinks_irrelevant(const EventLog& log_full, const EventLog& log_nosinks, const Trajectory& traj);

/// X(X'(x)) <= x at every jump abscissa of X' (and at 0), restricted to where
/// both paths are valid.
bool verify_ordering(const Trajectory& x_traj, const Trajectory& xprime_traj);

// --- streaming runs for large boxes ----------------------------------------

struct CoupledStreamParams {
  double gamma = 1.0;
  double delta = 1.5;
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<double> flux_positions;  ///< x values where F(x, t2) is reported
};

struct CoupledStreamResult {
  Trajectory x;  ///< isolated second-class particle of eta
  Trajectory z;
  bool z_started = false;
  std::vector<long> flux;
  std::size_t removed_sinks = 0;
  std::size_t added_sources = 0;
};

/// Runs eta (stationary gamma) and its thickened sigma on [0,t1]x[0,t2]
/// with alpha points generated on the fly.
CoupledStreamResult run_coupled_stream(const CoupledStreamParams& p, const UnitStream& stream);

/// Isolated second-class particle of a stationary lambda run on
/// [0,t1]x[0,t2], without materializing the event log.
Trajectory stream_second_class(double lambda, double t1, double t2, const UnitStream& stream);

}  // namespace hammersley
