#include "rv/schedule.hpp"

#include <cstddef>
#include <stdexcept>

namespace rv {

ExpansionSchedule::ExpansionSchedule(double growth, int horizon_rounds) : growth_(growth) {
  if (!(growth > 1.0)) throw std::domain_error("ExpansionSchedule: growth factor must exceed 1");
  if (horizon_rounds < 1) horizon_rounds = 1;

  powers_.resize(static_cast<std::size_t>(2 * horizon_rounds + 2));
  powers_[0] = 1.0;
  for (std::size_t i = 1; i < powers_.size(); ++i) powers_[i] = powers_[i - 1] * growth;

  round_end_times_.resize(static_cast<std::size_t>(horizon_rounds));
  double t = 0.0;
  for (int m = 0; m < horizon_rounds; ++m) {
    t += radius(2 * m) + radius(2 * m - 1);  // phase one
    t += radius(2 * m) + radius(2 * m + 1);  // phase two
    round_end_times_[static_cast<std::size_t>(m)] = t;
  }
}

double ExpansionSchedule::radius(int index) const {
  if (index < -1) throw std::domain_error("ExpansionSchedule::radius: index below -1");
  if (index == -1) return 0.0;
  const auto i = static_cast<std::size_t>(index);
  if (i < powers_.size()) return powers_[i];
  double v = powers_.back();
  for (std::size_t j = powers_.size() - 1; j < i; ++j) v *= growth_;
  return v;
}

double ExpansionSchedule::phase_duration(int round, Phase phase) const {
  if (round < 0) throw std::domain_error("ExpansionSchedule::phase_duration: negative round");
  if (phase == Phase::One) return radius(2 * round) + radius(2 * round - 1);
  return radius(2 * round) + radius(2 * round + 1);
}

double ExpansionSchedule::leg_distance(int round, Phase phase, bool direction_repeated) const {
  if (round < 0) throw std::domain_error("ExpansionSchedule::leg_distance: negative round");
  if (phase == Phase::Two) return radius(2 * round) + radius(2 * round + 1);
  if (direction_repeated) return radius(2 * round) + radius(2 * round - 1);
  return radius(2 * round) - radius(2 * round - 1);
}

double ExpansionSchedule::round_start_time(int round) const {
  if (round < 0) throw std::domain_error("ExpansionSchedule::round_start_time: negative round");
  if (round == 0) return 0.0;
  const auto m = static_cast<std::size_t>(round - 1);
  if (m < round_end_times_.size()) return round_end_times_[m];
  double t = round_end_times_.back();
  for (std::size_t j = round_end_times_.size(); j <= m; ++j) {
    const int rr = static_cast<int>(j);
    t += phase_duration(rr, Phase::One) + phase_duration(rr, Phase::Two);
  }
  return t;
}

double ExpansionSchedule::phase_end_time(int round, Phase phase) const {
  const double start = round_start_time(round);
  if (phase == Phase::One) return start + phase_duration(round, Phase::One);
  return start + phase_duration(round, Phase::One) + phase_duration(round, Phase::Two);
}

bool ExpansionSchedule::covers_span(int round, double span) const {
  if (round < 0) throw std::domain_error("ExpansionSchedule::covers_span: negative round");
  if (!(span > 0.0)) throw std::domain_error("ExpansionSchedule::covers_span: span must be positive");
  return radius(2 * round + 1) >= span + radius(2 * round - 1) - 1e-12;
}

}  // namespace rv
