#pragma once

#include <vector>

namespace rv {

enum class Phase : int { One = 1, Two = 2 };

/// Shared timetable of the expanding search. Round i consists of two phases;
/// the reach of round i is radius(2i) in the first-phase direction and
/// radius(2i + 1) in the opposite direction. All robots run the same clock, so
/// phase boundaries are global synchronization points.
///
/// Powers of the growth factor come from one cached multiplication chain; pow()
/// can round differently across libm builds and would break bit-for-bit
/// reproducibility.
class ExpansionSchedule {
 public:
  explicit ExpansionSchedule(double growth, int horizon_rounds = 64);

  double growth() const { return growth_; }

  /// radius(-1) is the degenerate pre-round reach, defined as 0.
  double radius(int index) const;

  /// Wall-clock length of the given phase. Identical for every robot: movers
  /// spend it walking, early arrivals wait out the remainder.
  double phase_duration(int round, Phase phase) const;

  /// Ground a free robot covers inside the phase. In phase one this depends on
  /// whether the robot kept the previous round's first direction (it then backs
  /// out of the old reach before extending) or reversed (short hop only).
  double leg_distance(int round, Phase phase, bool direction_repeated) const;

  double round_start_time(int round) const;
  double phase_end_time(int round, Phase phase) const;

  /// True when the round's second-phase reach spans the whole initial spread,
  /// i.e. radius(2*round + 1) >= span + radius(2*round - 1). From such a round
  /// on, any two neighbours that walked towards each other must have met.
  bool covers_span(int round, double span) const;

 private:
  double growth_;
  std::vector<double> powers_;
  std::vector<double> round_end_times_;
};

}  // namespace rv
