#include "rv/strategy.hpp"

#include <stdexcept>
#include <utility>

#include "rv/rng.hpp"

namespace rv {

const char* to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Single: return "single";
    case Mode::Boundary: return "boundary";
    case Mode::Internal: return "internal";
  }
  return "?";
}

Direction SeededCoins::flip(int robot, int round) {
  const std::uint64_t h =
      hash_mix(hash_mix(seed_, static_cast<std::uint64_t>(robot)), static_cast<std::uint64_t>(round));
  return (h >> 63) ? Direction::Left : Direction::Right;
}

ScriptCoins::ScriptCoins(std::vector<std::string> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("ScriptCoins: no rows");
  for (const auto& row : rows_) {
    if (row.empty()) throw std::invalid_argument("ScriptCoins: empty row");
    if (row.size() != rows_[0].size())
      throw std::invalid_argument("ScriptCoins: rows differ in length");
    for (char c : row)
      if (c != 'R' && c != 'L') throw std::invalid_argument("ScriptCoins: rows must be 'R'/'L'");
  }
}

ScriptCoins ScriptCoins::parse(const std::string& text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty()) rows.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) rows.push_back(std::move(cur));
  return ScriptCoins(std::move(rows));
}

Direction ScriptCoins::flip(int robot, int round) {
  if (robot < 0 || robot >= robots())
    throw std::out_of_range("ScriptCoins::flip: robot outside script");
  if (round < 0 || round >= rounds())
    throw std::out_of_range("ScriptCoins::flip: round outside script");
  return rows_[static_cast<std::size_t>(robot)][static_cast<std::size_t>(round)] == 'R'
             ? Direction::Right
             : Direction::Left;
}

std::optional<Direction> choose_round_direction(const StrategyState& state, CoinSource& coins,
                                                int round) {
  switch (state.mode) {
    case Mode::Single:
      return coins.flip(state.robot_id, round);
    case Mode::Boundary:
      if (!state.expand_dir)
        throw std::logic_error("choose_round_direction: boundary robot without patrol direction");
      return *state.expand_dir;
    case Mode::Internal:
      return std::nullopt;
  }
  throw std::logic_error("choose_round_direction: unknown mode");
}

MeetingOutcome react_to_meeting(const StrategyState& self, Mode other_mode, Direction meet_dir,
                                Phase /*phase*/, int combined_size) {
  switch (self.mode) {
    case Mode::Single:
      if (other_mode == Mode::Single) {
        // Both turn boundary; each patrols away from the partner from now on.
        return {Mode::Boundary, MeetingAction::WaitUntilPhaseEnd, opposite(meet_dir), true};
      }
      if (other_mode == Mode::Boundary) {
        return {Mode::Single, MeetingAction::StickToOther, std::nullopt, true};
      }
      throw std::logic_error("react_to_meeting: single robot reached an internal robot");

    case Mode::Boundary:
      if (other_mode != Mode::Boundary) {
        // Scoops up a carried single or a parked internal stack in passing.
        return {Mode::Boundary, MeetingAction::CollectOtherAndContinue, self.expand_dir, false};
      }
      if (!self.directions_met[side_index(meet_dir)]) {
        return {Mode::Internal, MeetingAction::BecomeInternalAndWait, self.expand_dir, true};
      }
      if (combined_size == self.n) {
        return {Mode::Boundary, MeetingAction::DeclareRendezvous, self.expand_dir, false};
      }
      return {Mode::Boundary, MeetingAction::BreakAndWait, self.expand_dir, false};

    case Mode::Internal:
      if (other_mode == Mode::Boundary) {
        return {Mode::Internal, MeetingAction::StickToOther, self.expand_dir, false};
      }
      throw std::logic_error("react_to_meeting: internal robot met a non-collector");
  }
  throw std::logic_error("react_to_meeting: unknown mode");
}

LegPlan plan_leg(const StrategyState& state, const ExpansionSchedule& schedule, Phase phase) {
  const int i = state.round;
  if (phase == Phase::One) {
    return {direction_sign(state.dir1) * schedule.radius(2 * i), state.dir1};
  }
  return {-direction_sign(state.dir1) * schedule.radius(2 * i + 1), opposite(state.dir1)};
}

}  // namespace rv
