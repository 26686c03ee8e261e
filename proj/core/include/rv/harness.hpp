#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rv/engine.hpp"

namespace rv {

enum class Placement { UniformRandom, Equidistant };
const char* to_string(Placement p);

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> d_values;
  std::vector<double> r_values{1.28};
  Placement placement = Placement::UniformRandom;
  int trials = 100;
  std::uint64_t base_seed = 0;
  int max_rounds = 60;
  double epsilon = 1e-9;
};

/// Aggregates over the uncensored trials of one (n, d, r, placement) cell.
/// Censored trials are counted, never averaged in.
struct CellStats {
  int n = 0;
  double d = 0.0;
  double r = 0.0;
  Placement placement = Placement::UniformRandom;
  int trials = 0;
  int censored = 0;
  double mean_dist_ratio = 0.0;
  double max_dist_ratio = 0.0;
  double sd_dist_ratio = 0.0;
  double mean_time_ratio = 0.0;
  double mean_rounds = 0.0;
  double mean_total_time = 0.0;
  double mean_max_distance = 0.0;
};

/// Seed for one trial, derived from the cell coordinates so every trial is
/// reproducible in isolation and independent of execution order.
std::uint64_t trial_seed(std::uint64_t base, int n, double d, double r, Placement placement,
                         int trial);

/// Starting positions spanning exactly [0, d]. UniformRandom pins the two
/// extremes and draws the interior robots iid uniform, then sorts.
std::vector<double> place_robots(Placement placement, int n, double d, std::uint64_t seed);

/// Full grid run, cells ordered n (outer) x d x r (inner). Trials may execute
/// on any number of workers; aggregation order is fixed, so results are
/// byte-identical regardless.
std::vector<CellStats> run_sweep(const SweepSpec& spec, int workers = 1);

std::string sweep_csv(const std::vector<CellStats>& table);
std::string sweep_json(const std::vector<CellStats>& table);

struct FigurePoint {
  int n = 0;
  double value = 0.0;
};

struct FigureSeries {
  std::string label;  // one line per (d, r, placement) combination
  std::vector<FigurePoint> points;
};

struct FigureDataset {
  std::string family;  // which per-cell metric is plotted against n
  std::vector<FigureSeries> series;
};

struct SweepSummary {
  std::string csv;
  std::vector<FigureDataset> datasets;
};

///// Plot-ready view of a sweep table: one dataset per metric family
/// (distance_ratio, time_ratio, rounds, total_time, max_distance), each with
/// value-vs-n series grouped by (d, r, placement). Empty tables are an error.
SweepSummary summarize(const std::vector<CellStats>& table);

}  // namespace rv
