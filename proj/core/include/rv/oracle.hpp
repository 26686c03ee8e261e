#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rv/engine.hpp"

namespace rv {

/// Exhaustive truth source: simulates every coin script of length `horizon`
/// for all n robots (2^(n * horizon) runs) and aggregates exact statistics.
/// Doubles as a machine checker for the forced-rendezvous guarantee: once a
/// round's reach covers the initial spread, a single/single meeting in that
/// round must lead to rendezvous by the end of the next round, under every
/// continuation of the coin flips.
struct EnumerationSpec {
  WorldConfig config;
  int horizon = 4;
  std::uint64_t budget = std::uint64_t{1} << 24;  // refuse larger enumerations
  int workers = 1;
};

struct ExactReport {
  int n = 0;
  int horizon = 0;
  std::uint64_t script_count = 0;

  std::vector<std::uint64_t> rendezvous_count_by_round;  // exact integer counts
  std::uint64_t censored_count = 0;
  std::vector<double> rendezvous_probability_by_round;
  double rendezvous_probability = 0.0;

  /// Mean of the worst robot's travel, conditional on rendezvous within the
  /// horizon (censored scripts carry no final distance).
  double expected_max_distance = 0.0;

  /// Scripts with at least one single/single meeting in round i.
  std::vector<std::uint64_t> pair_meeting_count_by_round;

  /// Forced-rendezvous guarantee accounting. Meetings in the last simulated
  /// round are not checkable (their deadline lies beyond the horizon).
  std::uint64_t guarantee_checked = 0;
  std::vector<std::string> guarantee_violations;  // offending scripts, capped

  std::uint64_t config_fingerprint = 0;
};

std::uint64_t fingerprint(const EnumerationSpec& spec);

/// Script row text ('R'/'L', one line per robot) for an enumeration index.
std::string script_for_index(std::uint64_t index, int n, int horizon);

ExactReport enumerate_scripts(const EnumerationSpec& spec);

struct MonteCarloComparison {
  std::uint64_t trials = 0;
  std::uint64_t achieved = 0;
  double mc_probability = 0.0;
  double mc_mean_max_distance = 0.0;
  double mc_se = 0.0;
  double exact_mean_max_distance = 0.0;
  double deviation = 0.0;
  bool within_3_se = false;
};

/// Monte Carlo cross-check of an exact report. `spec` must describe the same
/// world the report was computed from (verified via fingerprint).
MonteCarloComparison compare_monte_carlo(const EnumerationSpec& spec, const ExactReport& report,
                                         std::uint64_t trials, std::uint64_t seed);

}  // namespace rv
