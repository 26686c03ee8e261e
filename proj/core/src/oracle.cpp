#include "rv/oracle.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rv/rng.hpp"

namespace rv {

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr std::size_t kViolationCap = 1000;

// Flips packed into the enumeration index: bit (robot * horizon + round),
// set = Left. Bit 0 therefore is robot 0, round 0, and index 0 is all-Right.
class BitCoins final : public CoinSource {
 public:
  BitCoins(std::uint64_t bits, int horizon) : bits_(bits), horizon_(horizon) {}
  Direction flip(int robot, int round) override {
    if (round >= horizon_) throw std::logic_error("BitCoins: round beyond horizon");
    const int bit = robot * horizon_ + round;
    return ((bits_ >> bit) & 1u) ? Direction::Left : Direction::Right;
  }

 private:
  std::uint64_t bits_;
  int horizon_;
};

struct Partial {
  std::vector<std::uint64_t> by_round;
  std::uint64_t censored = 0;
  double dist_sum = 0.0;
  std::vector<std::uint64_t> pair_meet;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
};

WorldConfig world_for(const EnumerationSpec& spec) {
  WorldConfig cfg = spec.config;
  cfg.max_rounds = spec.horizon;
  cfg.record_waypoints = false;
  return cfg;
}

}  // namespace

std::uint64_t fingerprint(const EnumerationSpec& spec) {
  std::uint64_t h = hash_mix(0x6f7261636c65ULL, static_cast<std::uint64_t>(spec.config.n()));
  for (double p : spec.config.positions) h = hash_mix(h, p);
  h = hash_mix(h, spec.config.growth);
  h = hash_mix(h, spec.config.epsilon);
  h = hash_mix(h, static_cast<std::uint64_t>(spec.horizon));
  return h;
}

std::string script_for_index(std::uint64_t index, int n, int horizon) {
  std::string out;
  for (int j = 0; j < n; ++j) {
    if (j > 0) out.push_back('\n');
    for (int i = 0; i < horizon; ++i)
      out.push_back(((index >> (j * horizon + i)) & 1u) ? 'L' : 'R');
  }
  return out;
}

ExactReport enumerate_scripts(const EnumerationSpec& spec) {
  WorldConfig cfg = world_for(spec);
  cfg.validate();
  if (spec.horizon < 1) throw std::invalid_argument("enumerate_scripts: horizon must be positive");
  const int n = cfg.n();
  const int bits = n * spec.horizon;
  if (bits >= 63) throw std::invalid_argument("enumerate_scripts: script space exceeds 2^62");
  const std::uint64_t count = std::uint64_t{1} << bits;
  if (count > spec.budget)
    throw std::invalid_argument("enumerate_scripts: script space exceeds the budget");

  const ExpansionSchedule sched(cfg.growth, spec.horizon + 2);
  const double span = cfg.span();
  std::vector<char> feasible(static_cast<std::size_t>(spec.horizon), 0);
  std::vector<double> round_end(static_cast<std::size_t>(spec.horizon), 0.0);
  for (int i = 0; i < spec.horizon; ++i) {
    feasible[static_cast<std::size_t>(i)] = sched.covers_span(i, span) ? 1 : 0;
    round_end[static_cast<std::size_t>(i)] = sched.phase_end_time(i, Phase::Two);
  }

  const std::uint64_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<Partial> partials(static_cast<std::size_t>(nchunks));
  std::atomic<std::uint64_t> next{0};

  const auto worker = [&]() {
    std::vector<char> ss_seen(static_cast<std::size_t>(spec.horizon));
    while (true) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      Partial& p = partials[static_cast<std::size_t>(c)];
      p.by_round.assign(static_cast<std::size_t>(spec.horizon), 0);
      p.pair_meet.assign(static_cast<std::size_t>(spec.horizon), 0);
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min(count, lo + kChunk);
      for (std::uint64_t s = lo; s < hi; ++s) {
        BitCoins coins(s, spec.horizon);
        const Trace tr = run(cfg, coins);
        if (tr.achieved) {
          p.by_round[static_cast<std::size_t>(tr.rendezvous_round)] += 1;
          p.dist_sum += tr.max_distance();
        } else {
          p.censored += 1;
        }
        std::fill(ss_seen.begin(), ss_seen.end(), 0);
        for (const auto& ev : tr.events)
          if (ev.kind == EventKind::SingleSingle) ss_seen[static_cast<std::size_t>(ev.round)] = 1;
        for (int i = 0; i < spec.horizon; ++i) {
          if (!ss_seen[static_cast<std::size_t>(i)]) continue;
          p.pair_meet[static_cast<std::size_t>(i)] += 1;
          if (i > spec.horizon - 2 || !feasible[static_cast<std::size_t>(i)]) continue;
          p.checked += 1;
          const bool ok =
              tr.achieved && tr.rendezvous_time <= round_end[static_cast<std::size_t>(i + 1)] + 1e-9;
          if (!ok && p.violations.size() < kViolationCap)
            p.violations.push_back(script_for_index(s, n, spec.horizon));
        }
      }
    }
  };

  const int workers = std::max(1, spec.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExactReport rep;
  rep.n = n;
  rep.horizon = spec.horizon;
  rep.script_count = count;
  rep.rendezvous_count_by_round.assign(static_cast<std::size_t>(spec.horizon), 0);
  rep.pair_meeting_count_by_round.assign(static_cast<std::size_t>(spec.horizon), 0);
  double dist_sum = 0.0;
  for (const Partial& p : partials) {
    for (int i = 0; i < spec.horizon; ++i) {
      rep.rendezvous_count_by_round[static_cast<std::size_t>(i)] += p.by_round[static_cast<std::size_t>(i)];
      rep.pair_meeting_count_by_round[static_cast<std::size_t>(i)] += p.pair_meet[static_cast<std::size_t>(i)];
    }
    rep.censored_count += p.censored;
    dist_sum += p.dist_sum;
    rep.guarantee_checked += p.checked;
    for (const auto& v : p.violations)
      if (rep.guarantee_violations.size() < kViolationCap) rep.guarantee_violations.push_back(v);
  }

  std::uint64_t achieved = 0;
  rep.rendezvous_probability_by_round.assign(static_cast<std::size_t>(spec.horizon), 0.0);
  for (int i = 0; i < spec.horizon; ++i) {
    const std::uint64_t c = rep.rendezvous_count_by_round[static_cast<std::size_t>(i)];
    achieved += c;
    rep.rendezvous_probability_by_round[static_cast<std::size_t>(i)] =
        static_cast<double>(c) / static_cast<double>(count);
  }
  if (achieved + rep.censored_count != count)
    throw std::logic_error("enumerate_scripts: counts do not partition the script space");
  rep.rendezvous_probability = static_cast<double>(achieved) / static_cast<double>(count);
  rep.expected_max_distance = achieved ? dist_sum / static_cast<double>(achieved) : 0.0;
  rep.config_fingerprint = fingerprint(spec);
  return rep;
}

MonteCarloComparison compare_monte_carlo(const EnumerationSpec& spec, const ExactReport& report,
                                         std::uint64_t trials, std::uint64_t seed) {
  if (fingerprint(spec) != report.config_fingerprint)
    throw std::invalid_argument("compare_monte_carlo: spec does not match the report");

  MonteCarloComparison cmp;
  cmp.trials = trials;
  cmp.exact_mean_max_distance = report.expected_max_distance;
  if (trials == 0) {
    cmp.within_3_se = true;
    return cmp;
  }

  const WorldConfig cfg = world_for(spec);
  const std::uint64_t nchunks = (trials + kChunk - 1) / kChunk;
  struct McPartial {
    std::uint64_t achieved = 0;
    double sum = 0.0;
    double sumsq = 0.0;
  };
  std::vector<McPartial> partials(static_cast<std::size_t>(nchunks));
  std::atomic<std::uint64_t> next{0};

  const auto worker = [&]() {
    while (true) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      McPartial& p = partials[static_cast<std::size_t>(c)];
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min(trials, lo + kChunk);
      for (std::uint64_t t = lo; t < hi; ++t) {
        SeededCoins coins(hash_mix(seed, t));
        const Trace tr = run(cfg, coins);
        if (tr.achieved) {
          const double d = tr.max_distance();
          p.achieved += 1;
          p.sum += d;
          p.sumsq += d * d;
        }
      }
    }
  };

  const int workers = std::max(1, spec.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : partials) {
    cmp.achieved += p.achieved;
    sum += p.sum;
    sumsq += p.sumsq;
  }
  cmp.mc_probability = static_cast<double>(cmp.achieved) / static_cast<double>(trials);
  if (cmp.achieved > 0) {
    const double a = static_cast<double>(cmp.achieved);
    cmp.mc_mean_max_distance = sum / a;
    if (cmp.achieved > 1) {
      const double var = std::max(0.0, (sumsq - sum * sum / a) / (a - 1.0));
      cmp.mc_se = std::sqrt(var / a);
    }
  }
  cmp.deviation = std::abs(cmp.mc_mean_max_distance - cmp.exact_mean_max_distance);
  cmp.within_3_se = cmp.deviation <= 3.0 * cmp.mc_se + 1e-12;
  return cmp;
}

}  // namespace rv
