#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "rv/harness.hpp"
#include "rv/trace_io.hpp"

using namespace rv;

TEST_CASE("placements span exactly the requested segment") {
  auto eq = place_robots(Placement::Equidistant, 5, 2.0, 0);
  REQUIRE(eq.size() == 5);
  CHECK(eq.front() == 0.0);
  CHECK(eq.back() == 2.0);
  CHECK(eq[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eq[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eq[3] == doctest::Approx(1.5).epsilon(1e-15));

  auto u1 = place_robots(Placement::UniformRandom, 8, 10.0, 42);
  auto u2 = place_robots(Placement::UniformRandom, 8, 10.0, 42);
  auto u3 = place_robots(Placement::UniformRandom, 8, 10.0, 43);
  CHECK(u1 == u2);
  CHECK(u1 != u3);
  REQUIRE(u1.size() == 8);
  CHECK(u1.front() == 0.0);
  CHECK(u1.back() == 10.0);
  CHECK(std::is_sorted(u1.begin(), u1.end()));
  for (double x : u1) {
    CHECK(x >= 0.0);
    CHECK(x <= 10.0);
  }
  CHECK_THROWS_AS(place_robots(Placement::Equidistant, 2, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(place_robots(Placement::Equidistant, 5, 0.0, 0), std::invalid_argument);
}

TEST_CASE("trial seeds separate every grid cell") {
  std::set<std::uint64_t> seen;
  for (int n : {3, 4}) {
    for (double d : {1.0, 2.0}) {
      for (int t : {0, 1, 2}) {
        seen.insert(trial_seed(9, n, d, 1.28, Placement::Equidistant, t));
      }
    }
  }
  seen.insert(trial_seed(9, 3, 1.0, 1.28, Placement::UniformRandom, 0));
  seen.insert(trial_seed(9, 3, 1.0, 1.3, Placement::Equidistant, 0));
  seen.insert(trial_seed(10, 3, 1.0, 1.28, Placement::Equidistant, 0));
  CHECK(seen.size() == 15);
}

TEST_CASE("sweep results are reproducible across runs and worker counts") {
  SweepSpec spec;
  spec.n_values = {3, 4};
  spec.d_values = {1.0, 3.0};
  spec.trials = 16;
  spec.base_seed = 5;
  auto t1 = run_sweep(spec, 1);
  auto t2 = run_sweep(spec, 1);
  auto t3 = run_sweep(spec, 4);
  CHECK(sweep_csv(t1) == sweep_csv(t2));
  CHECK(sweep_csv(t1) == sweep_csv(t3));
  CHECK(sweep_json(t1) == sweep_json(t3));

  REQUIRE(t1.size() == 4);
  CHECK(t1[0].n == 3);
  CHECK(t1[0].d == 1.0);
  CHECK(t1[1].d == 3.0);
  CHECK(t1[2].n == 4);
  for (const CellStats& c : t1) {
    CHECK(c.trials == 16);
    CHECK(c.censored == 0);
    CHECK(c.r == 1.28);
    CHECK(c.mean_dist_ratio > 1.0);
    CHECK(c.max_dist_ratio >= c.mean_dist_ratio);
    CHECK(c.mean_time_ratio >= c.mean_dist_ratio);
    CHECK(c.sd_dist_ratio >= 0.0);
    CHECK(c.mean_rounds >= 1.0);
    CHECK(c.mean_total_time > 0.0);
    CHECK(c.mean_max_distance > 0.0);
  }
}

TEST_CASE("hopeless round cap censors every trial") {
  SweepSpec spec;
  spec.n_values = {3};
  spec.d_values = {50.0};
  spec.trials = 8;
  spec.max_rounds = 2;
  auto t = run_sweep(spec, 2);
  REQUIRE(t.size() == 1);
  CHECK(t[0].censored == 8);
  CHECK(t[0].mean_dist_ratio == 0.0);
  CHECK(t[0].max_dist_ratio == 0.0);
  CHECK(t[0].mean_rounds == 0.0);
}

TEST_CASE("csv schema is pinned") {
  SweepSpec spec;
  spec.n_values = {3};
  spec.d_values = {1.0};
  spec.trials = 2;
  auto t = run_sweep(spec, 1);
  const std::string csv = sweep_csv(t);
  const std::string header =
      "n,d,r,placement,trials,censored,mean_dist_ratio,max_dist_ratio,sd_dist_ratio,"
      "mean_time_ratio,mean_rounds,mean_total_time,mean_max_distance\n";
  CHECK(csv.rfind(header, 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("uniform_random") != std::string::npos);
}

TEST_CASE("summaries group series by figure family") {
  SweepSpec spec;
  spec.n_values = {3, 4, 5};
  spec.d_values = {1.0, 2.0};
  spec.trials = 4;
  auto table = run_sweep(spec, 2);
  SweepSummary sum = summarize(table);
  REQUIRE(sum.datasets.size() == 5);
  CHECK(sum.datasets[0].family == "distance_ratio");
  CHECK(sum.datasets[1].family == "time_ratio");
  CHECK(sum.datasets[2].family == "rounds");
  CHECK(sum.datasets[3].family == "total_time");
  CHECK(sum.datasets[4].family == "max_distance");
  for (const FigureDataset& ds : sum.datasets) {
    REQUIRE(ds.series.size() == 2);
    for (const auto& s : ds.series) {
      CHECK(!s.label.empty());
      REQUIRE(s.points.size() == 3);
      CHECK(s.points[0].n == 3);
      CHECK(s.points[1].n == 4);
      CHECK(s.points[2].n == 5);
    }
  }
  CHECK(sum.csv == sweep_csv(table));
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("sweep input validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
  spec.n_values = {3};
  spec.d_values = {};
  CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
  spec.d_values = {1.0};
  spec.r_values = {};
  CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
  spec.r_values = {1.28};
  spec.trials = 0;
  CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
  spec.trials = 1;
  spec.n_values = {2};
  CHECK_THROWS_AS(run_sweep(spec, 1), std::invalid_argument);
}
