#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rv/schedule.hpp"

namespace rv {

enum class Direction : int { Left = -1, Right = 1 };

constexpr Direction opposite(Direction d) {
  return d == Direction::Left ? Direction::Right : Direction::Left;
}
constexpr double direction_sign(Direction d) { return static_cast<double>(static_cast<int>(d)); }
constexpr int side_index(Direction d) { return d == Direction::Left ? 0 : 1; }
const char* to_string(Direction d);

/// Behavioural role of a robot.
///  - Single: still searching alone, flips a coin every round.
///  - Boundary: has met someone; patrols a fixed direction each round and
///    ferries whoever it picks up. Two boundary robots frame each cluster.
///  - Internal: parked between two boundary robots, waits to be collected.
enum class Mode { Single, Boundary, Internal };
const char* to_string(Mode m);

/// Round-level randomness feed. flip(robot, round) must be a pure function of
/// its arguments so replays and parallel sweeps agree.
class CoinSource {
 public:
  virtual ~CoinSource() = default;
  virtual Direction flip(int robot, int round) = 0;
};

class SeededCoins final : public CoinSource {
 public:
  explicit SeededCoins(std::uint64_t seed) : seed_(seed) {}
  Direction flip(int robot, int round) override;

 private:
  std::uint64_t seed_;
};

/// Scripted flips: one row of 'R'/'L' per robot, one column per round.
class ScriptCoins final : public CoinSource {
 public:
  explicit ScriptCoins(std::vector<std::string> rows);
  static ScriptCoins parse(const std::string& text);

  int robots() const { return static_cast<int>(rows_.size()); }
  int rounds() const { return rows_.empty() ? 0 : static_cast<int>(rows_[0].size()); }
  const std::vector<std::string>& rows() const { return rows_; }

  Direction flip(int robot, int round) override;

 private:
  std::vector<std::string> rows_;
};

struct StrategyState {
  int robot_id = 0;
  int n = 0;  // population size, known to every robot
  Mode mode = Mode::Single;
  int round = 0;
  double origin = 0.0;  // start position; all leg targets are anchored here
  Direction dir1 = Direction::Right;        // first-phase direction of the current round
  std::optional<Direction> expand_dir;      // fixed patrol direction once Boundary
  std::array<bool, 2> directions_met{false, false};  // indexed by side_index()
  std::optional<int> stuck_to;              // carrier agent id while being ferried
};

enum class MeetingAction {
  WaitUntilPhaseEnd,        // park here, resume own itinerary next phase
  StickToOther,             // join the partner's group and ride along
  CollectOtherAndContinue,  // absorb the partner's group, keep walking
  BecomeInternalAndWait,    // park permanently until collected
  BreakAndWait,             // repeat encounter: part ways again next round
  DeclareRendezvous,        // everyone is here
};

struct MeetingOutcome {
  Mode new_mode = Mode::Single;
  MeetingAction action = MeetingAction::WaitUntilPhaseEnd;
  std::optional<Direction> new_expand_dir;
  bool mark_direction_met = false;
};

/// Direction for the round's first phase. Single robots flip a coin (exactly
/// one draw per round), boundary robots reuse their patrol direction, internal
/// robots stay put. Only group leaders are asked; carried robots never flip.
std::optional<Direction> choose_round_direction(const StrategyState& state, CoinSource& coins,
                                                int round);

/// Reaction table for a meeting. meet_dir is the side the partner arrived on;
/// combined_size counts every robot present across both groups. Throws
/// std::logic_error for pairings the walk order makes impossible.
MeetingOutcome react_to_meeting(const StrategyState& self, Mode other_mode, Direction meet_dir,
                                Phase phase, int combined_size);

struct LegPlan {
  double target_offset = 0.0;  // nominal waypoint relative to the robot's origin
  Direction move_dir = Direction::Right;
};

/// Nominal waypoint for (state.round, phase). Phase one walks dir1 out to the
/// even radius; phase two crosses to the odd radius on the far side.
LegPlan plan_leg(const StrategyState& state, const ExpansionSchedule& schedule, Phase phase);

}  // namespace rv
