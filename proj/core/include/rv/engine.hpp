#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rv/schedule.hpp"
#include "rv/strategy.hpp"

namespace rv {

struct WorldConfig {
  std::vector<double> positions;  // sorted left to right; robot ids follow this order
  double growth = 1.28;
  int max_rounds = 60;
  double epsilon = 1e-9;  // co-location tolerance
  bool record_waypoints = false;

  int n() const { return static_cast<int>(positions.size()); }
  double span() const { return positions.empty() ? 0.0 : positions.back() - positions.front(); }
  void validate() const;  // throws std::invalid_argument
};

enum class EventKind {
  SingleSingle,     // two searching robots pair up
  Stick,            // a single joins a passing boundary robot
  CollectInternal,  // a boundary robot scoops a parked stack
  BoundaryFresh,    // boundary pair meets on a new side: both park internally
  BoundaryRepeat,   // boundary pair meets again: split up or declare rendezvous
};
const char* to_string(EventKind k);

struct MeetingEvent {
  double time = 0.0;
  double position = 0.0;
  int round = 0;
  Phase phase = Phase::One;
  EventKind kind = EventKind::SingleSingle;
  int left_agent = -1;
  int right_agent = -1;
  std::vector<int> participants;  // every robot in both groups, ascending
};

struct RobotTotals {
  double start_position = 0.0;
  double final_position = 0.0;
  double distance = 0.0;
  double waiting = 0.0;
  int coin_flips = 0;
  Mode final_mode = Mode::Single;
};

struct Trace {
  bool achieved = false;
  double rendezvous_time = 0.0;
  double rendezvous_position = 0.0;
  int rendezvous_round = -1;
  int rounds_used = 0;
  // Simulated clock when the run stopped: the rendezvous instant, or the end
  // of the last round before the cap.
  double end_time = 0.0;
  std::vector<RobotTotals> robots;
  std::vector<MeetingEvent> events;
  // Per robot, (time, position) vertices; motion is linear in between. Only
  // filled when WorldConfig::record_waypoints is set.
  std::vector<std::vector<std::pair<double, double>>> waypoints;
  // Worst |distance + waiting - phase_duration| seen over completed robot-phases.
  double max_conservation_error = 0.0;

  double max_distance() const;
  double total_time() const { return end_time; }
  double distance_ratio(double span) const { return max_distance() / (0.5 * span); }
  double time_ratio(double span) const { return end_time / (0.5 * span); }
};

/// One group's motion for the remainder of a phase: linear at `velocity` until
/// knee_time, parked afterwards.
struct LinearMotion {
  double start_time = 0.0;
  double start_pos = 0.0;
  double velocity = 0.0;
  double knee_time = 0.0;
};

struct ContactHit {
  double time = 0.0;
  int left_index = 0;  // index into the adjacent-ordered input
};

/// Earliest time in [start, horizon] at which two neighbouring trajectories
/// close to within eps. Trajectories must be given left to right; only
/// adjacent pairs can touch because walkers never cross.
std::optional<ContactHit> detect_next_meeting(std::span<const LinearMotion> trajectories,
                                              double horizon, double eps);

/// Event-driven executor. Advances one phase at a time, resolving meetings in
/// time order (ties leftmost first) and enforcing the walk invariants: robots
/// never swap order, interact only with neighbours, and every leg fits its
/// phase. Violations throw std::logic_error.
class Simulation {
 public:
  Simulation(WorldConfig config, CoinSource& coins);
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  bool finished() const;
  void step_phase();

  double time() const;
  int round() const;
  Phase phase() const;
  std::vector<double> positions() const;      // per robot, current
  const StrategyState& state(int robot) const;

  Trace take_trace();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs a world to rendezvous or to the round cap. The cap is additionally
/// clamped to the script length when coins is a ScriptCoins.
Trace run(const WorldConfig& config, CoinSource& coins);

}  // namespace rv
