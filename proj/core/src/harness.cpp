#include "rv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "rv/rng.hpp"
#include "rv/stats.hpp"

namespace rv {

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct TrialOut {
  double dist_ratio = 0.0;
  double time_ratio = 0.0;
  double rounds = 0.0;
  double total_time = 0.0;
  double max_distance = 0.0;
  bool censored = false;
};

}  // namespace

const char* to_string(Placement p) {
  return p == Placement::UniformRandom ? "uniform_random" : "equidistant";
}

std::uint64_t trial_seed(std::uint64_t base, int n, double d, double r, Placement placement,
                         int trial) {
  std::uint64_t h = hash_mix(base, static_cast<std::uint64_t>(n));
  h = hash_mix(h, d);
  h = hash_mix(h, r);
  h = hash_mix(h, static_cast<std::uint64_t>(placement));
  return hash_mix(h, static_cast<std::uint64_t>(trial));
}

std::vector<double> place_robots(Placement placement, int n, double d, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("place_robots: need at least 3 robots");
  if (!(d > 0.0)) throw std::invalid_argument("place_robots: spread must be positive");
  std::vector<double> xs(static_cast<std::size_t>(n));
  xs.front() = 0.0;
  xs.back() = d;
  if (placement == Placement::Equidistant) {
    for (int j = 1; j + 1 < n; ++j)
      xs[static_cast<std::size_t>(j)] = d * static_cast<double>(j) / static_cast<double>(n - 1);
  } else {
    SplitMix64 gen(seed);
    for (int j = 1; j + 1 < n; ++j) xs[static_cast<std::size_t>(j)] = d * gen.uniform01();
    std::sort(xs.begin(), xs.end());
  }
  return xs;
}

std::vector<CellStats> run_sweep(const SweepSpec& spec, int workers) {
  if (spec.n_values.empty() || spec.d_values.empty() || spec.r_values.empty())
    throw std::invalid_argument("run_sweep: empty grid axis");
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: need at least one trial");
  for (int n : spec.n_values)
    if (n < 3) throw std::invalid_argument("run_sweep: need at least 3 robots");
  for (double d : spec.d_values)
    if (!(d > 0.0)) throw std::invalid_argument("run_sweep: spreads must be positive");
  for (double r : spec.r_values)
    if (!(r > 1.0)) throw std::invalid_argument("run_sweep: growth factors must exceed 1");

  struct Cell {
    int n;
    double d, r;
  };
  std::vector<Cell> cells;
  for (int n : spec.n_values)
    for (double d : spec.d_values)
      for (double r : spec.r_values) cells.push_back({n, d, r});

  const std::size_t trials = static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<TrialOut>> results(cells.size(), std::vector<TrialOut>(trials));
  const std::size_t jobs = cells.size() * trials;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  const auto worker = [&]() {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs || failed.load()) break;
      const Cell& cell = cells[j / trials];
      const int t = static_cast<int>(j % trials);
      try {
        const std::uint64_t seed =
            trial_seed(spec.base_seed, cell.n, cell.d, cell.r, spec.placement, t);
        WorldConfig cfg;
        cfg.positions = place_robots(spec.placement, cell.n, cell.d, hash_mix(seed, std::uint64_t{1}));
        cfg.growth = cell.r;
        cfg.max_rounds = spec.max_rounds;
        cfg.epsilon = spec.epsilon;
        SeededCoins coins(hash_mix(seed, std::uint64_t{2}));
        const Trace tr = run(cfg, coins);
        TrialOut& out = results[j / trials][j % trials];
        out.censored = !tr.achieved;
        if (tr.achieved) {
          out.dist_ratio = tr.distance_ratio(cell.d);
          out.time_ratio = tr.time_ratio(cell.d);
          out.rounds = static_cast<double>(tr.rounds_used);
          out.total_time = tr.rendezvous_time;
          out.max_distance = tr.max_distance();
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        break;
      }
    }
  };

  const int nworkers = std::max(1, workers);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(failure);

  std::vector<CellStats> table;
  table.reserve(cells.size());
  std::vector<double> dist, timer, rounds, total, maxd;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellStats cs;
    cs.n = cells[c].n;
    cs.d = cells[c].d;
    cs.r = cells[c].r;
    cs.placement = spec.placement;
    cs.trials = spec.trials;
    dist.clear();
    timer.clear();
    rounds.clear();
    total.clear();
    maxd.clear();
    for (const TrialOut& out : results[c]) {
      if (out.censored) {
        ++cs.censored;
        continue;
      }
      dist.push_back(out.dist_ratio);
      timer.push_back(out.time_ratio);
      rounds.push_back(out.rounds);
      total.push_back(out.total_time);
      maxd.push_back(out.max_distance);
    }
    if (!dist.empty()) {
      cs.mean_dist_ratio = mean(dist);
      cs.max_dist_ratio = *std::max_element(dist.begin(), dist.end());
      cs.sd_dist_ratio = sample_sd(dist);
      cs.mean_time_ratio = mean(timer);
      cs.mean_rounds = mean(rounds);
      cs.mean_total_time = mean(total);
      cs.mean_max_distance = mean(maxd);
    }
    table.push_back(cs);
  }
  return table;
}

std::string sweep_csv(const std::vector<CellStats>& table) {
  std::string out =
      "n,d,r,placement,trials,censored,mean_dist_ratio,max_dist_ratio,sd_dist_ratio,"
      "mean_time_ratio,mean_rounds,mean_total_time,mean_max_distance\n";
  for (const CellStats& c : table) {
    out += std::to_string(c.n);
    out += ',';
    out += fmt(c.d);
    out += ',';
    out += fmt(c.r);
    out += ',';
    out += to_string(c.placement);
    out += ',';
    out += std::to_string(c.trials);
    out += ',';
    out += std::to_string(c.censored);
    out += ',';
    out += fmt(c.mean_dist_ratio);
    out += ',';
    out += fmt(c.max_dist_ratio);
    out += ',';
    out += fmt(c.sd_dist_ratio);
    out += ',';
    out += fmt(c.mean_time_ratio);
    out += ',';
    out += fmt(c.mean_rounds);
    out += ',';
    out += fmt(c.mean_total_time);
    out += ',';
    out += fmt(c.mean_max_distance);
    out += '\n';
  }
  return out;
}

SweepSummary summarize(const std::vector<CellStats>& table) {
  if (table.empty()) throw std::invalid_argument("summarize: empty sweep table");

  SweepSummary summary;
  summary.csv = sweep_csv(table);

  const std::pair<const char*, double CellStats::*> families[] = {
      {"distance_ratio", &CellStats::mean_dist_ratio},
      {"time_ratio", &CellStats::mean_time_ratio},
      {"rounds", &CellStats::mean_rounds},
      {"total_time", &CellStats::mean_total_time},
      {"max_distance", &CellStats::mean_max_distance},
  };
  for (const auto& [family, member] : families) {
    FigureDataset ds;
    ds.family = family;
    std::map<std::tuple<double, double, int>, std::size_t> index;
    for (const CellStats& c : table) {
      const auto key = std::make_tuple(c.d, c.r, static_cast<int>(c.placement));
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, ds.series.size()).first;
        ds.series.push_back(
            {"d=" + fmt(c.d) + " r=" + fmt(c.r) + " " + to_string(c.placement), {}});
      }
      ds.series[it->second].points.push_back({c.n, c.*member});
    }
    for (auto& s : ds.series)
      std::sort(s.points.begin(), s.points.end(),
                [](const FigurePoint& a, const FigurePoint& b) { return a.n < b.n; });
    summary.datasets.push_back(std::move(ds));
  }
  return summary;
}

}  // namespace rv
