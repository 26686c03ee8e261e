#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rv/bounds.hpp"
#include "rv/engine.hpp"
#include "rv/strategy.hpp"
#include "rv/trace_io.hpp"

using namespace rv;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("trace json carries the whole run") {
  WorldConfig cfg;
  cfg.positions = {0.0, 0.5, 1.0};
  cfg.record_waypoints = true;
  ScriptCoins coins({"R", "L", "L"});
  Trace tr = run(cfg, coins);

  const std::string payload = trace_json(tr, cfg);
  CHECK(payload.back() == '\n');
  auto j = nlohmann::json::parse(payload);
  CHECK(j["achieved"] == true);
  CHECK(j["config"]["n"] == 3);
  CHECK(j["config"]["growth"] == 1.28);
  CHECK(j["robots"].size() == 3);
  CHECK(j["events"].size() == 2);
  CHECK(j["events"][0]["kind"] == "single_single");
  CHECK(j["events"][1]["kind"] == "stick");
  CHECK(j["rendezvous"]["round"] == 0);
  CHECK(std::abs(j["rendezvous"]["time"].get<double>() - 0.75) <= 1e-9);
  CHECK(j["waypoints"].size() == 3);
  CHECK(j["robots"][2]["mode"] == "single");
  CHECK(j["robots"][2]["coin_flips"] == 1);

  const std::string csv = trace_csv(tr);
  CHECK(csv.rfind("robot,start,final,distance,waiting,coin_flips,mode\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("report serializers are loadable json") {
  BoundsReport rep = evaluate_bounds({});
  auto j = nlohmann::json::parse(bounds_json(rep));
  CHECK(std::abs(j["worst_ratio"].get<double>() - 54.7312) <= 1e-3);
  CHECK(j["n"] == 3);
  const std::string text = bounds_text(rep);
  CHECK(text.find("worst_ratio") != std::string::npos);

  OptimizeResult opt = optimize_growth(1.2, 1.4, 0.01, 3);
  auto oj = nlohmann::json::parse(optimize_json(opt));
  CHECK(oj["grid"].size() == opt.grid.size());
  CHECK(std::abs(oj["best"]["r"].get<double>() - opt.best.r) <= 1e-15);
  CHECK(optimize_text(opt).find("best") != std::string::npos);
}

#ifdef RV_CLI_BIN

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& args) {
  CmdResult r;
  const std::string cmd = std::string(RV_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

}  // namespace

TEST_CASE("cli run: exit 0 on rendezvous, writes the same json as the library") {
  const std::string script = temp_file("rv_test_script.txt", "R\nL\nL\n");
  const std::string out_json =
      (std::filesystem::temp_directory_path() / "rv_test_trace.json").string();
  CmdResult r = run_cmd("run --positions 0,0.5,1 --script " + script + " --json " + out_json);
  CHECK(r.status == 0);
  CHECK(r.out.rfind("rendezvous", 0) == 0);

  WorldConfig cfg;
  cfg.positions = {0.0, 0.5, 1.0};
  cfg.record_waypoints = true;
  ScriptCoins coins({"R", "L", "L"});
  Trace tr = rv::run(cfg, coins);
  CHECK(slurp(out_json) == trace_json(tr, cfg));
  std::filesystem::remove(out_json);
}

TEST_CASE("cli run: exit 2 when the cap is hit") {
  const std::string script = temp_file("rv_test_script_allr.txt", "RRR\nRRR\nRRR\n");
  CmdResult r = run_cmd("run --positions 0,0.5,1 --script " + script);
  CHECK(r.status == 2);
  CHECK(r.out.rfind("censored", 0) == 0);
}

TEST_CASE("cli run: config file with flag overrides") {
  const std::string cfg_path = temp_file(
      "rv_test_cfg.json", "{\"n\": 3, \"d\": 1.0, \"placement\": \"equidistant\", \"seed\": 11}");
  CmdResult a = run_cmd("run --config " + cfg_path);
  CmdResult b = run_cmd("run --config " + cfg_path);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CmdResult c = run_cmd("run --config " + cfg_path + " --seed 12");
  CHECK(c.status == 0);
  CHECK(c.out != a.out);

  const std::string bad = temp_file("rv_test_cfg_bad.json", "{\"robots\": 3, \"d\": 1.0}");
  CHECK(run_cmd("run --config " + bad).status == 1);
}

TEST_CASE("cli rejects malformed invocations with exit 1") {
  CHECK(run_cmd("run --n 3").status == 1);
  CHECK(run_cmd("run --positions 0,0.5,1 --n 4").status == 1);
  CHECK(run_cmd("frobnicate").status == 1);
  CHECK(run_cmd("bounds --r 0.9").status == 1);
  CHECK(run_cmd("run --n 3 --d 1 --placement diagonal").status == 1);
  CHECK(run_cmd("run --n 3 --d 1 --epsilon 0.5").status == 1);
}

TEST_CASE("cli bounds and optimize emit stable json") {
  CmdResult a = run_cmd("bounds --r 1.28 --n 3 --format json");
  CmdResult b = run_cmd("bounds --r 1.28 --n 3 --format json");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(std::abs(j["worst_ratio"].get<double>() - 54.7312) <= 1e-3);

  CmdResult o = run_cmd("optimize --lo 1.2 --hi 1.4 --step 0.01 --n 3 --format json");
  CHECK(o.status == 0);
  auto oj = nlohmann::json::parse(o.out);
  CHECK(std::abs(oj["best"]["r"].get<double>() - 1.28) <= 1e-9);

  CmdResult t = run_cmd("bounds --r 1.28 --n 3 --format text");
  CHECK(t.status == 0);
  CHECK(t.out.find("worst_ratio") != std::string::npos);
}

TEST_CASE("cli sweep prints the csv and honours workers") {
  CmdResult a = run_cmd("sweep --n 3 --d 1 --trials 4 --seed 3 --workers 2");
  CmdResult b = run_cmd("sweep --n 3 --d 1 --trials 4 --seed 3 --workers 1");
  CHECK(a.status == 0);
  CHECK(a.out.rfind("n,d,r,placement", 0) == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli oracle reports the exact census") {
  CmdResult r = run_cmd("oracle --n 3 --d 1 --horizon 1");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["script_count"] == 8);
  CHECK(j["rendezvous_probability"] == 0.5);
  CHECK(j["pair_meeting_count_by_round"][0] == 6);
  CHECK(j["guarantee_violations"].empty());

  CmdResult m = run_cmd("oracle --n 3 --d 1 --horizon 3 --mc-trials 2000 --mc-seed 5");
  CHECK(m.status == 0);
  auto mj = nlohmann::json::parse(m.out);
  CHECK(mj["monte_carlo"]["within_3_se"] == true);
}

#endif  // RV_CLI_BIN
