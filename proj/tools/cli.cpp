#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rv/bounds.hpp"
#include "rv/engine.hpp"
#include "rv/harness.hpp"
#include "rv/oracle.hpp"
#include "rv/rng.hpp"
#include "rv/trace_io.hpp"

namespace rv {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

Placement parse_placement(const std::string& name) {
  if (name == "uniform_random") return Placement::UniformRandom;
  if (name == "equidistant") return Placement::Equidistant;
  throw std::invalid_argument("unknown placement: " + name);
}

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct RunArgs {
  int n = 0;
  double d = 0.0;
  std::vector<double> positions;
  std::string placement = "equidistant";
  double r = 1.28;
  std::uint64_t seed = 0;
  std::string script_path;
  int max_rounds = 60;
  double epsilon = 1e-9;
  std::string config_path;
  std::string json_path;
  std::string csv_path;
};

struct RunFlags {
  bool n = false, d = false, positions = false, placement = false, r = false, seed = false,
       script = false, max_rounds = false, epsilon = false;
};

void overlay_config(RunArgs& args, const RunFlags& given) {
  const nlohmann::json j = nlohmann::json::parse(read_file(args.config_path));
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> allowed = {"n",      "d",        "positions", "placement",
                                                "r",      "seed",     "script",    "max_rounds",
                                                "epsilon"};
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument("unknown config key: " + item.key());
  // Command line wins over the file.
  if (!given.n && j.contains("n")) args.n = j.at("n").get<int>();
  if (!given.d && j.contains("d")) args.d = j.at("d").get<double>();
  if (!given.positions && j.contains("positions"))
    args.positions = j.at("positions").get<std::vector<double>>();
  if (!given.placement && j.contains("placement"))
    args.placement = j.at("placement").get<std::string>();
  if (!given.r && j.contains("r")) args.r = j.at("r").get<double>();
  if (!given.seed && j.contains("seed")) args.seed = j.at("seed").get<std::uint64_t>();
  if (!given.script && j.contains("script")) args.script_path = j.at("script").get<std::string>();
  if (!given.max_rounds && j.contains("max_rounds"))
    args.max_rounds = j.at("max_rounds").get<int>();
  if (!given.epsilon && j.contains("epsilon")) args.epsilon = j.at("epsilon").get<double>();
}

int do_run(RunArgs args, const RunFlags& given) {
  if (!args.config_path.empty()) overlay_config(args, given);

  const bool has_n = given.n || args.n > 0;
  const bool has_d = given.d || args.d > 0.0;
  WorldConfig cfg;
  cfg.growth = args.r;
  cfg.max_rounds = args.max_rounds;
  cfg.epsilon = args.epsilon;
  cfg.record_waypoints = !args.json_path.empty();

  if (!args.positions.empty()) {
    cfg.positions = args.positions;
    std::sort(cfg.positions.begin(), cfg.positions.end());
    if (has_n && args.n != cfg.n())
      throw std::invalid_argument("--n contradicts the number of --positions");
    if (has_d && std::abs(cfg.span() - args.d) > 1e-9 * std::max(1.0, args.d))
      throw std::invalid_argument("--d contradicts the span of --positions");
  } else {
    if (!has_n || !has_d)
      throw std::invalid_argument("need --positions, or --n together with --d");
    cfg.positions = place_robots(parse_placement(args.placement), args.n, args.d,
                                 hash_mix(args.seed, std::uint64_t{1}));
  }
  cfg.validate();

  std::unique_ptr<CoinSource> coins;
  if (!args.script_path.empty()) {
    auto script = std::make_unique<ScriptCoins>(ScriptCoins::parse(read_file(args.script_path)));
    if (script->robots() != cfg.n())
      throw std::invalid_argument("script rows do not match the robot count");
    coins = std::move(script);
  } else {
    coins = std::make_unique<SeededCoins>(hash_mix(args.seed, std::uint64_t{2}));
  }

  const Trace trace = run(cfg, *coins);
  if (trace.achieved) {
    std::printf("rendezvous time=%.12g position=%.12g round=%d rounds_used=%d\n",
                trace.rendezvous_time, trace.rendezvous_position, trace.rendezvous_round,
                trace.rounds_used);
    std::printf("max_distance=%.12g distance_ratio=%.12g time_ratio=%.12g events=%zu\n",
                trace.max_distance(), trace.distance_ratio(cfg.span()),
                trace.time_ratio(cfg.span()), trace.events.size());
  } else {
    std::printf("censored after %d rounds, events=%zu\n", trace.rounds_used, trace.events.size());
  }
  if (!args.json_path.empty()) write_file(args.json_path, trace_json(trace, cfg));
  if (!args.csv_path.empty()) write_file(args.csv_path, trace_csv(trace));
  return trace.achieved ? 0 : 2;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"simulator and analysis toolkit for multi-robot rendezvous search on a line"};
  app.require_subcommand(1);

  // --- run ---
  RunArgs run_args;
  auto* cmd_run = app.add_subcommand("run", "simulate one world");
  auto* opt_n = cmd_run->add_option("--n", run_args.n, "robot count");
  auto* opt_d = cmd_run->add_option("--d", run_args.d, "initial spread");
  auto* opt_pos =
      cmd_run->add_option("--positions", run_args.positions, "explicit start positions")
          ->delimiter(',');
  auto* opt_pl = cmd_run->add_option("--placement", run_args.placement,
                                     "start layout: equidistant|uniform_random");
  auto* opt_r = cmd_run->add_option("--r", run_args.r, "growth factor (> 1)");
  auto* opt_seed = cmd_run->add_option("--seed", run_args.seed, "seed for placement and coins");
  auto* opt_script =
      cmd_run->add_option("--script", run_args.script_path, "coin script file, one R/L row per robot");
  auto* opt_maxr = cmd_run->add_option("--max-rounds", run_args.max_rounds, "round cap");
  auto* opt_eps = cmd_run->add_option("--epsilon", run_args.epsilon, "co-location tolerance");
  cmd_run->add_option("--config", run_args.config_path, "JSON config file; flags override it");
  cmd_run->add_option("--json", run_args.json_path, "write the trace as JSON (with waypoints)");
  cmd_run->add_option("--csv", run_args.csv_path, "write per-robot totals as CSV");

  // --- sweep ---
  SweepSpec sweep_spec;
  std::string sweep_placement = "uniform_random";
  int sweep_workers = 0;
  std::string sweep_csv_path, sweep_json_path;
  auto* cmd_sweep = app.add_subcommand("sweep", "run a (n, d, r) grid of seeded trials");
  cmd_sweep->add_option("--n", sweep_spec.n_values, "robot counts")->delimiter(',')->required();
  cmd_sweep->add_option("--d", sweep_spec.d_values, "initial spreads")->delimiter(',')->required();
  cmd_sweep->add_option("--r", sweep_spec.r_values, "growth factors")->delimiter(',');
  cmd_sweep->add_option("--placement", sweep_placement, "equidistant|uniform_random");
  cmd_sweep->add_option("--trials", sweep_spec.trials, "trials per cell");
  cmd_sweep->add_option("--seed", sweep_spec.base_seed, "base seed");
  cmd_sweep->add_option("--max-rounds", sweep_spec.max_rounds, "round cap per trial");
  cmd_sweep->add_option("--workers", sweep_workers, "worker threads (0 = hardware)");
  cmd_sweep->add_option("--csv", sweep_csv_path, "write the table as CSV");
  cmd_sweep->add_option("--json", sweep_json_path, "write the table as JSON");

  // --- bounds ---
  BoundsInput bounds_input;
  std::string bounds_format = "text";
  std::string bounds_out;
  auto* cmd_bounds = app.add_subcommand("bounds", "closed-form expected-distance analysis");
  cmd_bounds->add_option("--r", bounds_input.r, "growth factor");
  cmd_bounds->add_option("--n", bounds_input.n, "robot count");
  cmd_bounds->add_option("--k", bounds_input.k, "integer spread exponent (d = r^(k+delta))");
  cmd_bounds->add_option("--delta", bounds_input.delta, "fractional spread exponent in (0, 1]");
  cmd_bounds->add_option("--format", bounds_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_bounds->add_option("--out", bounds_out, "also write the JSON report to a file");

  // --- optimize ---
  double opt_lo = 1.05, opt_hi = 1.95, opt_step = 0.005;
  int opt_nrobots = 3;
  bool opt_asym = false;
  std::string opt_format = "text", opt_out;
  auto* cmd_opt = app.add_subcommand("optimize", "scan growth factors for the best ratio");
  cmd_opt->add_option("--lo", opt_lo, "grid start");
  cmd_opt->add_option("--hi", opt_hi, "grid end");
  cmd_opt->add_option("--step", opt_step, "grid step");
  cmd_opt->add_option("--n", opt_nrobots, "robot count");
  cmd_opt->add_flag("--asymptotic", opt_asym, "optimize the large-n objective");
  cmd_opt->add_option("--format", opt_format, "text|json")->check(CLI::IsMember({"text", "json"}));
  cmd_opt->add_option("--out", opt_out, "also write the JSON result to a file");

  // --- oracle ---
  int oracle_n = 0;
  double oracle_d = 0.0;
  std::vector<double> oracle_positions;
  EnumerationSpec oracle_spec;
  std::uint64_t mc_trials = 0, mc_seed = 1;
  std::string oracle_json_path, violations_path;
  int oracle_workers = 0;
  auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive coin-script enumeration");
  auto* oopt_n = cmd_oracle->add_option("--n", oracle_n, "robot count (equidistant start)");
  auto* oopt_d = cmd_oracle->add_option("--d", oracle_d, "initial spread");
  cmd_oracle->add_option("--positions", oracle_positions, "explicit start positions")
      ->delimiter(',');
  cmd_oracle->add_option("--r", oracle_spec.config.growth, "growth factor");
  cmd_oracle->add_option("--horizon", oracle_spec.horizon, "script length in rounds");
  cmd_oracle->add_option("--budget", oracle_spec.budget, "maximum number of scripts");
  cmd_oracle->add_option("--workers", oracle_workers, "worker threads (0 = hardware)");
  cmd_oracle->add_option("--mc-trials", mc_trials, "Monte Carlo cross-check trials");
  cmd_oracle->add_option("--mc-seed", mc_seed, "Monte Carlo seed");
  cmd_oracle->add_option("--json", oracle_json_path, "write the report to a file");
  cmd_oracle->add_option("--dump-violations", violations_path,
                         "write offending scripts, one block per script");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) {
      RunFlags flags;
      flags.n = opt_n->count() > 0;
      flags.d = opt_d->count() > 0;
      flags.positions = opt_pos->count() > 0;
      flags.placement = opt_pl->count() > 0;
      flags.r = opt_r->count() > 0;
      flags.seed = opt_seed->count() > 0;
      flags.script = opt_script->count() > 0;
      flags.max_rounds = opt_maxr->count() > 0;
      flags.epsilon = opt_eps->count() > 0;
      return do_run(run_args, flags);
    }

    if (cmd_sweep->parsed()) {
      sweep_spec.placement = parse_placement(sweep_placement);
      const auto table = run_sweep(sweep_spec, effective_workers(sweep_workers));
      const std::string csv = sweep_csv(table);
      std::fputs(csv.c_str(), stdout);
      if (!sweep_csv_path.empty()) write_file(sweep_csv_path, csv);
      if (!sweep_json_path.empty()) write_file(sweep_json_path, sweep_json(table));
      return 0;
    }

    if (cmd_bounds->parsed()) {
      const BoundsReport report = evaluate_bounds(bounds_input);
      std::fputs((bounds_format == "json" ? bounds_json(report) : bounds_text(report)).c_str(),
                 stdout);
      if (!bounds_out.empty()) write_file(bounds_out, bounds_json(report));
      return 0;
    }

    if (cmd_opt->parsed()) {
      const OptimizeResult result =
          optimize_growth(opt_lo, opt_hi, opt_step, opt_nrobots, opt_asym);
      std::fputs((opt_format == "json" ? optimize_json(result) : optimize_text(result)).c_str(),
                 stdout);
      if (!opt_out.empty()) write_file(opt_out, optimize_json(result));
      return 0;
    }

    if (cmd_oracle->parsed()) {
      if (!oracle_positions.empty()) {
        oracle_spec.config.positions = oracle_positions;
        std::sort(oracle_spec.config.positions.begin(), oracle_spec.config.positions.end());
      } else {
        if (oopt_n->count() == 0 || oopt_d->count() == 0)
          throw std::invalid_argument("need --positions, or --n together with --d");
        oracle_spec.config.positions =
            place_robots(Placement::Equidistant, oracle_n, oracle_d, 0);
      }
      oracle_spec.workers = effective_workers(oracle_workers);
      const ExactReport report = enumerate_scripts(oracle_spec);
      nlohmann::ordered_json out = nlohmann::ordered_json::parse(exact_report_json(report));
      if (mc_trials > 0) {
        const MonteCarloComparison cmp =
            compare_monte_carlo(oracle_spec, report, mc_trials, mc_seed);
        out["monte_carlo"] = nlohmann::ordered_json::parse(mc_comparison_json(cmp));
      }
      const std::string payload = out.dump(2) + "\n";
      std::fputs(payload.c_str(), stdout);
      if (!oracle_json_path.empty()) write_file(oracle_json_path, payload);
      if (!violations_path.empty()) {
        std::string dump;
        for (const auto& v : report.guarantee_violations) {
          dump += v;
          dump += "\n\n";
        }
        write_file(violations_path, dump);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace rv
