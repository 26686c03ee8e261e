#include "doctest.h"

#include <stdexcept>

#include "rv/schedule.hpp"
#include "rv/strategy.hpp"

using namespace rv;

namespace {

class CountingCoins : public CoinSource {
 public:
  int calls = 0;
  Direction flip(int, int) override {
    ++calls;
    return Direction::Right;
  }
};

StrategyState single_state(int n = 3) {
  StrategyState st;
  st.robot_id = 0;
  st.n = n;
  st.mode = Mode::Single;
  return st;
}

}  // namespace

TEST_CASE("script coins parse and replay") {
  ScriptCoins sc = ScriptCoins::parse("RRL\nLLR\n RL R \n");
  CHECK(sc.robots() == 3);
  CHECK(sc.rounds() == 3);
  CHECK(sc.flip(0, 0) == Direction::Right);
  CHECK(sc.flip(0, 2) == Direction::Left);
  CHECK(sc.flip(1, 0) == Direction::Left);
  CHECK(sc.flip(2, 1) == Direction::Left);
  CHECK(sc.flip(2, 2) == Direction::Right);
  CHECK_THROWS_AS(sc.flip(0, 3), std::out_of_range);
  CHECK_THROWS_AS(sc.flip(3, 0), std::out_of_range);
  CHECK_THROWS_AS(sc.flip(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(ScriptCoins::parse("RR\nR\n"), std::invalid_argument);
  CHECK_THROWS_AS(ScriptCoins::parse("RX\nRR\n"), std::invalid_argument);
  CHECK_THROWS_AS(ScriptCoins::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(ScriptCoins::parse("\n\n"), std::invalid_argument);
}

TEST_CASE("seeded coins depend only on seed, robot and round") {
  SeededCoins a(42), b(42), c(43);
  int disagreements = 0;
  for (int robot = 0; robot < 8; ++robot) {
    for (int round = 0; round < 64; ++round) {
      CHECK(a.flip(robot, round) == b.flip(robot, round));
      if (a.flip(robot, round) != c.flip(robot, round)) ++disagreements;
    }
  }
  CHECK(disagreements > 100);
  CHECK(disagreements < 412);
  SeededCoins d(42);
  CHECK(d.flip(7, 63) == a.flip(7, 63));
  CHECK(d.flip(0, 0) == a.flip(0, 0));
}

TEST_CASE("round direction choice consumes coins only while single") {
  CountingCoins coins;
  StrategyState st = single_state();
  auto d1 = choose_round_direction(st, coins, 0);
  REQUIRE(d1.has_value());
  CHECK(*d1 == Direction::Right);
  CHECK(coins.calls == 1);

  st.mode = Mode::Boundary;
  st.expand_dir = Direction::Left;
  auto d2 = choose_round_direction(st, coins, 1);
  REQUIRE(d2.has_value());
  CHECK(*d2 == Direction::Left);
  CHECK(coins.calls == 1);

  st.mode = Mode::Internal;
  CHECK_FALSE(choose_round_direction(st, coins, 2).has_value());
  CHECK(coins.calls == 1);

  st.mode = Mode::Boundary;
  st.expand_dir.reset();
  CHECK_THROWS_AS(choose_round_direction(st, coins, 3), std::logic_error);
}

TEST_CASE("meeting reactions: two singles pair up and guard opposite sides") {
  StrategyState st = single_state(4);
  for (Direction md : {Direction::Left, Direction::Right}) {
    MeetingOutcome out = react_to_meeting(st, Mode::Single, md, Phase::One, 2);
    CHECK(out.new_mode == Mode::Boundary);
    CHECK(out.action == MeetingAction::WaitUntilPhaseEnd);
    REQUIRE(out.new_expand_dir.has_value());
    CHECK(*out.new_expand_dir == opposite(md));
    CHECK(out.mark_direction_met);
  }
}

TEST_CASE("meeting reactions: a single sticks to a patrolling group") {
  StrategyState st = single_state(5);
  MeetingOutcome out = react_to_meeting(st, Mode::Boundary, Direction::Right, Phase::Two, 3);
  CHECK(out.new_mode == Mode::Single);
  CHECK(out.action == MeetingAction::StickToOther);
  CHECK(out.mark_direction_met);
  CHECK_FALSE(out.new_expand_dir.has_value());
  CHECK_THROWS_AS(react_to_meeting(st, Mode::Internal, Direction::Left, Phase::One, 2),
                  std::logic_error);
}

TEST_CASE("meeting reactions: patrol collects, parks or breaks") {
  StrategyState b;
  b.robot_id = 1;
  b.n = 4;
  b.mode = Mode::Boundary;
  b.expand_dir = Direction::Left;
  b.directions_met[side_index(Direction::Right)] = true;

  MeetingOutcome collect_single =
      react_to_meeting(b, Mode::Single, Direction::Left, Phase::Two, 2);
  CHECK(collect_single.new_mode == Mode::Boundary);
  CHECK(collect_single.action == MeetingAction::CollectOtherAndContinue);
  CHECK_FALSE(collect_single.mark_direction_met);
  REQUIRE(collect_single.new_expand_dir.has_value());
  CHECK(*collect_single.new_expand_dir == Direction::Left);

  MeetingOutcome collect_parked =
      react_to_meeting(b, Mode::Internal, Direction::Left, Phase::One, 3);
  CHECK(collect_parked.action == MeetingAction::CollectOtherAndContinue);
  CHECK(collect_parked.new_mode == Mode::Boundary);

  MeetingOutcome fresh = react_to_meeting(b, Mode::Boundary, Direction::Left, Phase::Two, 3);
  CHECK(fresh.new_mode == Mode::Internal);
  CHECK(fresh.action == MeetingAction::BecomeInternalAndWait);
  CHECK(fresh.mark_direction_met);

  MeetingOutcome again = react_to_meeting(b, Mode::Boundary, Direction::Right, Phase::Two, 3);
  CHECK(again.new_mode == Mode::Boundary);
  CHECK(again.action == MeetingAction::BreakAndWait);
  CHECK_FALSE(again.mark_direction_met);

  MeetingOutcome done = react_to_meeting(b, Mode::Boundary, Direction::Right, Phase::Two, 4);
  CHECK(done.action == MeetingAction::DeclareRendezvous);
}

TEST_CASE("meeting reactions: parked robots only ever join a patrol") {
  StrategyState in;
  in.robot_id = 2;
  in.n = 4;
  in.mode = Mode::Internal;
  MeetingOutcome out = react_to_meeting(in, Mode::Boundary, Direction::Right, Phase::Two, 3);
  CHECK(out.new_mode == Mode::Internal);
  CHECK(out.action == MeetingAction::StickToOther);
  CHECK_THROWS_AS(react_to_meeting(in, Mode::Single, Direction::Left, Phase::One, 2),
                  std::logic_error);
  CHECK_THROWS_AS(react_to_meeting(in, Mode::Internal, Direction::Left, Phase::One, 2),
                  std::logic_error);
}

TEST_CASE("leg plans anchor at the origin and alternate sides") {
  ExpansionSchedule s(1.28);
  StrategyState st = single_state();
  st.round = 0;
  st.dir1 = Direction::Right;
  st.origin = 3.0;

  LegPlan p1 = plan_leg(st, s, Phase::One);
  CHECK(p1.target_offset == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p1.move_dir == Direction::Right);

  LegPlan p2 = plan_leg(st, s, Phase::Two);
  CHECK(p2.target_offset == doctest::Approx(-1.28).epsilon(1e-15));
  CHECK(p2.move_dir == Direction::Left);

  st.round = 1;
  st.dir1 = Direction::Left;
  CHECK(plan_leg(st, s, Phase::One).target_offset == doctest::Approx(-1.6384).epsilon(1e-14));
  CHECK(plan_leg(st, s, Phase::One).move_dir == Direction::Left);
  CHECK(plan_leg(st, s, Phase::Two).target_offset == doctest::Approx(2.097152).epsilon(1e-14));
  CHECK(plan_leg(st, s, Phase::Two).move_dir == Direction::Right);
}

TEST_CASE("direction helpers") {
  CHECK(opposite(Direction::Left) == Direction::Right);
  CHECK(opposite(Direction::Right) == Direction::Left);
  CHECK(direction_sign(Direction::Left) == -1.0);
  CHECK(direction_sign(Direction::Right) == 1.0);
  CHECK(side_index(Direction::Left) == 0);
  CHECK(side_index(Direction::Right) == 1);
  CHECK(to_string(Direction::Left) == std::string("left"));
  CHECK(to_string(Mode::Boundary) == std::string("boundary"));
}
