#pragma once

#include <vector>

namespace rv {

/// Closed-form analysis of the strategy's expected worst-robot travel, written
/// against an initial spread d = r^(k + delta) with integer k >= 0 and
/// delta in (0, 1]. All distances scale linearly with d, so ratios are
/// reported against half the spread.

/// Round offset such that from round alpha(k, r) = k/2 + i_star(r) on, a
/// round's second-phase reach is guaranteed to cover the whole spread and
/// every inward coin flip of a neighbouring pair produces a meeting.
int i_star(double r);

double alpha(int k, double r);

/// Chance that at least one adjacent pair of n independent coin flippers picks
/// facing directions in a round: 1 - 2/2^n.
double p_meet(int n);

/// Chance that round `round` still starts without any prior pairing, given
/// pairings only start counting from round alpha_value on.
double p_active(double round, double alpha_value, int n);

/// Expected distance spent before pairings can be charged (rounds < alpha),
/// divided by the d = r^k scale at delta = 0.
double stage1_bound(double r, int k);

/// Expected distance of the pairing-and-collection tail, summed over the
/// geometric series of late-pairing probabilities. Converges for r^2 * 2/2^n < 1.
double stage2_bound(double r, int k, int n);

/// Same quantity for n = 3, collapsed to a single closed form. Used as an
/// independent cross-check of the series.
double stage2_bound_closed3(double r, int k);

/// Worst-case (delta -> 0) expected max-travel over half the spread.
double competitive_ratio(double r, int n);

/// Large-n limit: the pairing tail vanishes, only stage 1 remains.
double asymptotic_ratio(double r);

struct BoundsInput {
  double r = 1.28;
  int n = 3;
  int k = 0;
  double delta = 1.0;
};

struct BoundsReport {
  double r = 0.0;
  int n = 0;
  int k = 0;
  double delta = 0.0;
  double d = 0.0;  // r^(k + delta)
  int i_star = 0;
  double alpha = 0.0;
  double p_meet = 0.0;
  double stage1 = 0.0;
  double stage2 = 0.0;
  double expected_distance = 0.0;  // stage1 + stage2, in absolute units
  double ratio_at_delta = 0.0;     // 2 * expected / d
  double worst_ratio = 0.0;        // delta -> 0 supremum
  double asymptotic = 0.0;
};

BoundsReport evaluate_bounds(const BoundsInput& input);

struct GridPoint {
  double r = 0.0;
  double value = 0.0;
  int i_star = 0;
};

struct OptimizeResult {
  bool asymptotic = false;
  int n = 0;
  GridPoint best;
  std::vector<GridPoint> grid;
  std::vector<GridPoint> local_minima;
  // First grid point of each new i_star plateau. The objective jumps there,
  // which is why it has several local minima.
  std::vector<double> i_star_steps;
};

/// Grid scan of the ratio over growth factors in (1, 2). Ties resolve to the
/// smaller r. Degenerate lo == hi grids return that single point.
OptimizeResult optimize_growth(double lo, double hi, double step, int n, bool asymptotic = false);

}  // namespace rv
