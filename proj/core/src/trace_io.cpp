#include "rv/trace_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace rv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string text_line(const char* key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-18s %.12g\n", key, value);
  return buf;
}

std::string text_line(const char* key, const std::string& value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-18s %s\n", key, value.c_str());
  return buf;
}

ordered_json cell_json(const CellStats& c) {
  ordered_json j;
  j["n"] = c.n;
  j["d"] = c.d;
  j["r"] = c.r;
  j["placement"] = to_string(c.placement);
  j["trials"] = c.trials;
  j["censored"] = c.censored;
  j["mean_dist_ratio"] = c.mean_dist_ratio;
  j["max_dist_ratio"] = c.max_dist_ratio;
  j["sd_dist_ratio"] = c.sd_dist_ratio;
  j["mean_time_ratio"] = c.mean_time_ratio;
  j["mean_rounds"] = c.mean_rounds;
  j["mean_total_time"] = c.mean_total_time;
  j["mean_max_distance"] = c.mean_max_distance;
  return j;
}

}  // namespace

std::string trace_json(const Trace& trace, const WorldConfig& config) {
  ordered_json j;
  j["config"]["n"] = config.n();
  j["config"]["positions"] = config.positions;
  j["config"]["growth"] = config.growth;
  j["config"]["max_rounds"] = config.max_rounds;
  j["config"]["epsilon"] = config.epsilon;
  j["achieved"] = trace.achieved;
  if (trace.achieved) {
    j["rendezvous"]["time"] = trace.rendezvous_time;
    j["rendezvous"]["position"] = trace.rendezvous_position;
    j["rendezvous"]["round"] = trace.rendezvous_round;
  }
  j["rounds_used"] = trace.rounds_used;
  j["end_time"] = trace.end_time;
  j["max_conservation_error"] = trace.max_conservation_error;

  j["robots"] = ordered_json::array();
  for (std::size_t i = 0; i < trace.robots.size(); ++i) {
    const RobotTotals& r = trace.robots[i];
    ordered_json jr;
    jr["id"] = i;
    jr["start"] = r.start_position;
    jr["final"] = r.final_position;
    jr["distance"] = r.distance;
    jr["waiting"] = r.waiting;
    jr["coin_flips"] = r.coin_flips;
    jr["mode"] = to_string(r.final_mode);
    j["robots"].push_back(std::move(jr));
  }

  j["events"] = ordered_json::array();
  for (const MeetingEvent& e : trace.events) {
    ordered_json je;
    je["time"] = e.time;
    je["position"] = e.position;
    je["round"] = e.round;
    je["phase"] = static_cast<int>(e.phase);
    je["kind"] = to_string(e.kind);
    je["left_agent"] = e.left_agent;
    je["right_agent"] = e.right_agent;
    je["participants"] = e.participants;
    j["events"].push_back(std::move(je));
  }

  if (!trace.waypoints.empty()) {
    j["waypoints"] = ordered_json::array();
    for (const auto& robot_points : trace.waypoints) {
      ordered_json jw = ordered_json::array();
      for (const auto& [t, x] : robot_points) jw.push_back(ordered_json::array({t, x}));
      j["waypoints"].push_back(std::move(jw));
    }
  }
  return j.dump(2) + "\n";
}

std::string trace_csv(const Trace& trace) {
  std::string out = "robot,start,final,distance,waiting,coin_flips,mode\n";
  char buf[192];
  for (std::size_t i = 0; i < trace.robots.size(); ++i) {
    const RobotTotals& r = trace.robots[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%d,%s\n", i, r.start_position,
                  r.final_position, r.distance, r.waiting, r.coin_flips, to_string(r.final_mode));
    out += buf;
  }
  return out;
}

std::string bounds_json(const BoundsReport& r) {
  ordered_json j;
  j["r"] = r.r;
  j["n"] = r.n;
  j["k"] = r.k;
  j["delta"] = r.delta;
  j["d"] = r.d;
  j["i_star"] = r.i_star;
  j["alpha"] = r.alpha;
  j["p_meet"] = r.p_meet;
  j["stage1"] = r.stage1;
  j["stage2"] = r.stage2;
  j["expected_distance"] = r.expected_distance;
  j["ratio_at_delta"] = r.ratio_at_delta;
  j["worst_ratio"] = r.worst_ratio;
  j["asymptotic"] = r.asymptotic;
  return j.dump(2) + "\n";
}

std::string bounds_text(const BoundsReport& r) {
  std::string out;
  out += text_line("r", r.r);
  out += text_line("n", static_cast<double>(r.n));
  out += text_line("k", static_cast<double>(r.k));
  out += text_line("delta", r.delta);
  out += text_line("d", r.d);
  out += text_line("i_star", static_cast<double>(r.i_star));
  out += text_line("alpha", r.alpha);
  out += text_line("p_meet", r.p_meet);
  out += text_line("stage1", r.stage1);
  out += text_line("stage2", r.stage2);
  out += text_line("expected_distance", r.expected_distance);
  out += text_line("ratio_at_delta", r.ratio_at_delta);
  out += text_line("worst_ratio", r.worst_ratio);
  out += text_line("asymptotic", r.asymptotic);
  return out;
}

std::string optimize_json(const OptimizeResult& result) {
  ordered_json j;
  j["objective"] = result.asymptotic ? "asymptotic_ratio" : "competitive_ratio";
  j["n"] = result.n;
  const auto point = [](const GridPoint& g) {
    ordered_json p;
    p["r"] = g.r;
    p["value"] = g.value;
    p["i_star"] = g.i_star;
    return p;
  };
  j["best"] = point(result.best);
  j["local_minima"] = ordered_json::array();
  for (const GridPoint& g : result.local_minima) j["local_minima"].push_back(point(g));
  j["i_star_steps"] = result.i_star_steps;
  j["grid"] = ordered_json::array();
  for (const GridPoint& g : result.grid) j["grid"].push_back(point(g));
  return j.dump(2) + "\n";
}

std::string optimize_text(const OptimizeResult& result) {
  std::string out;
  out += text_line("objective",
                   std::string(result.asymptotic ? "asymptotic_ratio" : "competitive_ratio"));
  out += text_line("n", static_cast<double>(result.n));
  out += text_line("grid_points", static_cast<double>(result.grid.size()));
  out += text_line("best_r", result.best.r);
  out += text_line("best_value", result.best.value);
  out += text_line("best_i_star", static_cast<double>(result.best.i_star));
  out += "local minima (r, value, i_star):\n";
  char buf[96];
  for (const GridPoint& g : result.local_minima) {
    std::snprintf(buf, sizeof buf, "  %.6g  %.12g  %d\n", g.r, g.value, g.i_star);
    out += buf;
  }
  out += "i_star steps at r:";
  for (double r : result.i_star_steps) {
    std::snprintf(buf, sizeof buf, " %.6g", r);
    out += buf;
  }
  out += "\n";
  return out;
}

std::string exact_report_json(const ExactReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["horizon"] = r.horizon;
  j["script_count"] = r.script_count;
  j["rendezvous_count_by_round"] = r.rendezvous_count_by_round;
  j["censored_count"] = r.censored_count;
  j["rendezvous_probability_by_round"] = r.rendezvous_probability_by_round;
  j["rendezvous_probability"] = r.rendezvous_probability;
  j["expected_max_distance"] = r.expected_max_distance;
  j["pair_meeting_count_by_round"] = r.pair_meeting_count_by_round;
  j["guarantee_checked"] = r.guarantee_checked;
  j["guarantee_violations"] = r.guarantee_violations;
  j["config_fingerprint"] = r.config_fingerprint;
  return j.dump(2) + "\n";
}

std::string mc_comparison_json(const MonteCarloComparison& c) {
  ordered_json j;
  j["trials"] = c.trials;
  j["achieved"] = c.achieved;
  j["mc_probability"] = c.mc_probability;
  j["mc_mean_max_distance"] = c.mc_mean_max_distance;
  j["mc_se"] = c.mc_se;
  j["exact_mean_max_distance"] = c.exact_mean_max_distance;
  j["deviation"] = c.deviation;
  j["within_3_se"] = c.within_3_se;
  return j.dump(2) + "\n";
}

std::string sweep_json(const std::vector<CellStats>& table) {
  ordered_json j = ordered_json::array();
  for (const CellStats& c : table) j.push_back(cell_json(c));
  return j.dump(2) + "\n";
}

}  // namespace rv
