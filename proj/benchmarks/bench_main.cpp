#include <benchmark/benchmark.h>

#include <cstdint>

#include "rv/bounds.hpp"
#include "rv/engine.hpp"
#include "rv/harness.hpp"
#include "rv/oracle.hpp"
#include "rv/strategy.hpp"

namespace {

void BM_RunTight(benchmark::State& state) {
  rv::WorldConfig cfg;
  cfg.positions = {0.0, 0.5, 1.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    rv::SeededCoins coins(seed++);
    rv::Trace tr = rv::run(cfg, coins);
    benchmark::DoNotOptimize(tr.rendezvous_time);
  }
}
BENCHMARK(BM_RunTight);

void BM_RunWide(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rv::WorldConfig cfg;
  cfg.positions = rv::place_robots(rv::Placement::Equidistant, n, 100.0, 0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    rv::SeededCoins coins(seed++);
    rv::Trace tr = rv::run(cfg, coins);
    benchmark::DoNotOptimize(tr.rendezvous_time);
  }
}
BENCHMARK(BM_RunWide)->Arg(8)->Arg(32)->Arg(64);

void BM_CompetitiveRatio(benchmark::State& state) {
  double r = 1.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rv::competitive_ratio(r, 3));
    r += 1e-6;
    if (r > 1.95) r = 1.05;
  }
}
BENCHMARK(BM_CompetitiveRatio);

void BM_Enumerate(benchmark::State& state) {
  rv::EnumerationSpec spec;
  spec.config.positions = {0.0, 0.5, 1.0};
  spec.horizon = 3;
  for (auto _ : state) {
    rv::ExactReport rep = rv::enumerate_scripts(spec);
    benchmark::DoNotOptimize(rep.rendezvous_probability);
  }
}
BENCHMARK(BM_Enumerate);

}  // namespace

BENCHMARK_MAIN();
