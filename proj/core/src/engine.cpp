#include "rv/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace rv {

namespace {

// Meeting snaps can park a group up to epsilon off its exact locus, so a later
// leg may overhang its phase by a couple of epsilon; anything larger is a bug.
double slack_for(double t, double epsilon) {
  return 1e-9 + 4.0 * epsilon + 1e-12 * std::abs(t);
}

double motion_pos(const LinearMotion& m, double t) {
  double tt = std::min(t, m.knee_time);
  if (tt < m.start_time) tt = m.start_time;
  return m.start_pos + m.velocity * (tt - m.start_time);
}

// Earliest t in [from, to] with gap(t) = pos(b) - pos(a) <= eps. When
// `suppressed` is set the pair starts inside an already-handled contact and
// only counts again after the gap first exceeds eps.
std::optional<double> earliest_contact(const LinearMotion& a, const LinearMotion& b, double from,
                                       double to, double eps, bool suppressed) {
  if (to < from) return std::nullopt;
  const auto gap = [&](double t) { return motion_pos(b, t) - motion_pos(a, t); };

  double cuts[4];
  int nc = 0;
  cuts[nc++] = from;
  if (a.knee_time > from && a.knee_time < to) cuts[nc++] = a.knee_time;
  if (b.knee_time > from && b.knee_time < to) cuts[nc++] = b.knee_time;
  cuts[nc++] = to;
  std::sort(cuts, cuts + nc);

  bool sup = suppressed;
  for (int i = 0; i + 1 < nc; ++i) {
    const double s = cuts[i];
    const double e = cuts[i + 1];
    const double gs = gap(s);
    const double va = (s < a.knee_time) ? a.velocity : 0.0;
    const double vb = (s < b.knee_time) ? b.velocity : 0.0;
    const double vrel = vb - va;
    if (sup) {
      if (gs > eps) {
        sup = false;
      } else {
        // Still inside the handled contact; see whether the gap opens here.
        if (vrel > 0.0 && s + (eps - gs) / vrel < e) sup = false;
        continue;
      }
    }
    if (gs <= eps) return s;
    if (vrel < 0.0) {
      const double hit = s + (gs - eps) / (-vrel);
      if (hit <= e) return hit;
    }
  }
  if (!sup) {
    // Closed interval: a contact exactly at `to` still counts.
    if (gap(to) <= eps) return to;
  }
  return std::nullopt;
}

struct Group {
  int agent = -1;
  std::vector<int> members;
  double pos = 0.0;
  double target = 0.0;
  double velocity = 0.0;
  double knee = 0.0;  // absolute time the current leg ends
  bool waiting = false;
  bool alive = true;
};

}  // namespace

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::SingleSingle: return "single_single";
    case EventKind::Stick: return "stick";
    case EventKind::CollectInternal: return "collect_internal";
    case EventKind::BoundaryFresh: return "boundary_fresh";
    case EventKind::BoundaryRepeat: return "boundary_repeat";
  }
  return "?";
}

void WorldConfig::validate() const {
  if (n() < 3) throw std::invalid_argument("WorldConfig: need at least 3 robots");
  for (std::size_t i = 1; i < positions.size(); ++i)
    if (positions[i] < positions[i - 1])
      throw std::invalid_argument("WorldConfig: positions must be sorted ascending");
  if (!(span() > 0.0)) throw std::invalid_argument("WorldConfig: initial spread must be positive");
  if (!(growth > 1.0)) throw std::invalid_argument("WorldConfig: growth factor must exceed 1");
  if (max_rounds < 1 || max_rounds > 10000)
    throw std::invalid_argument("WorldConfig: max_rounds out of range");
  if (!(epsilon > 0.0) || epsilon > 1e-3)
    throw std::invalid_argument("WorldConfig: epsilon out of range");
}

double Trace::max_distance() const {
  double best = 0.0;
  for (const auto& r : robots) best = std::max(best, r.distance);
  return best;
}

struct Simulation::Impl {
  WorldConfig cfg;
  CoinSource* coins;
  ExpansionSchedule sched;

  std::vector<StrategyState> states;
  std::vector<Group> groups;
  std::vector<int> order;        // alive group ids, left to right
  std::vector<int> robot_group;  // robot id -> group id
  std::set<std::pair<int, int>> suppressed;

  std::vector<double> distance, waiting_time, dist_phase, wait_phase;
  std::vector<int> flips;

  double now = 0.0;
  int round = 0;
  Phase phase = Phase::One;
  bool done = false;

  Trace trace;

  Impl(WorldConfig config, CoinSource& source)
      : cfg(std::move(config)), coins(&source), sched(cfg.growth, cfg.max_rounds + 2) {
    cfg.validate();
    const int n = cfg.n();
    states.resize(n);
    groups.resize(n);
    robot_group.resize(n);
    distance.assign(n, 0.0);
    waiting_time.assign(n, 0.0);
    dist_phase.assign(n, 0.0);
    wait_phase.assign(n, 0.0);
    flips.assign(n, 0);
    if (cfg.record_waypoints) trace.waypoints.resize(n);
    for (int j = 0; j < n; ++j) {
      states[j].robot_id = j;
      states[j].n = n;
      states[j].origin = cfg.positions[j];
      Group& g = groups[j];
      g.agent = j;
      g.members = {j};
      g.pos = cfg.positions[j];
      g.target = g.pos;
      g.knee = 0.0;
      order.push_back(j);
      robot_group[j] = j;
      waypoint(j, 0.0, g.pos);
    }
    initial_contacts();
  }

  // --- small helpers -----------------------------------------------------

  void waypoint(int robot, double t, double x) {
    if (!cfg.record_waypoints) return;
    auto& pts = trace.waypoints[robot];
    if (!pts.empty() && pts.back().first == t && pts.back().second == x) return;
    pts.emplace_back(t, x);
  }

  void waypoint_group(const Group& g, double t, double x) {
    for (int m : g.members) waypoint(m, t, x);
  }

  bool is_suppressed(int ga, int gb) const {
    return suppressed.count({std::min(ga, gb), std::max(ga, gb)}) != 0;
  }

  void park(Group& g, bool waiting) {
    g.velocity = 0.0;
    g.knee = now;
    g.target = g.pos;
    g.waiting = waiting;
  }

  LinearMotion motion_of(const Group& g) const { return {now, g.pos, g.velocity, g.knee}; }

  double phase_end() const { return sched.phase_end_time(round, phase); }

  void refresh_suppressed() {
    for (auto it = suppressed.begin(); it != suppressed.end();) {
      const auto [ga, gb] = *it;
      if (!groups[ga].alive || !groups[gb].alive) {
        it = suppressed.erase(it);
        continue;
      }
      if (std::abs(groups[gb].pos - groups[ga].pos) > cfg.epsilon) {
        it = suppressed.erase(it);
        continue;
      }
      ++it;
    }
  }

  void check_order() const {
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
      if (groups[order[k + 1]].pos < groups[order[k]].pos - 4.0 * cfg.epsilon)
        throw std::logic_error("engine: walk order violated");
  }

  // --- phase machinery ----------------------------------------------------

  void begin_phase() {
    const double t_end = phase_end();
    if (phase == Phase::One) {
      for (int gid : order) {
        Group& g = groups[gid];
        StrategyState& st = states[g.agent];
        st.round = round;
        if (st.mode == Mode::Single) ++flips[g.agent];
        if (const auto dir = choose_round_direction(st, *coins, round)) st.dir1 = *dir;
      }
    }
    for (int gid : order) {
      Group& g = groups[gid];
      StrategyState& st = states[g.agent];
      g.waiting = false;
      if (st.mode == Mode::Internal) {
        park(g, false);
        continue;
      }
      const LegPlan plan = plan_leg(st, sched, phase);
      g.target = st.origin + plan.target_offset;
      const double delta = g.target - g.pos;
      if (delta == 0.0) {
        park(g, false);
      } else {
        if ((delta > 0.0) != (plan.move_dir == Direction::Right) && std::abs(delta) > cfg.epsilon)
          throw std::logic_error("engine: leg direction contradicts the plan");
        g.velocity = delta > 0.0 ? 1.0 : -1.0;
        g.knee = now + std::abs(delta);
        if (g.knee > t_end + slack_for(t_end, cfg.epsilon))
          throw std::logic_error("engine: leg does not fit its phase");
        g.knee = std::min(g.knee, t_end);
      }
      waypoint_group(g, now, g.pos);
    }
  }

  void advance_to(double t2) {
    if (t2 <= now) return;
    const double dt = t2 - now;
    for (int gid : order) {
      Group& g = groups[gid];
      double moving = 0.0;
      if (g.velocity != 0.0 && g.knee > now) moving = std::min(t2, g.knee) - now;
      const double waiting = dt - moving;
      if (moving > 0.0) {
        const double np = g.pos + g.velocity * moving;
        for (int m : g.members) {
          distance[m] += moving;
          dist_phase[m] += moving;
        }
        g.pos = np;
        if (g.knee < t2) waypoint_group(g, g.knee, np);
      }
      if (waiting > 0.0) {
        for (int m : g.members) {
          waiting_time[m] += waiting;
          wait_phase[m] += waiting;
        }
      }
      if (g.knee <= t2) g.velocity = 0.0;
    }
    now = t2;
  }

  void fix_knee(Group& g, double t_end) {
    if (g.velocity == 0.0) return;
    g.knee = now + std::abs(g.target - g.pos);
    if (g.knee > t_end + slack_for(t_end, cfg.epsilon)) throw std::logic_error("engine: leg does not fit its phase");
    g.knee = std::min(g.knee, t_end);
    if (g.knee <= now) g.velocity = 0.0;
  }

  void absorb(int host_gid, int food_gid) {
    Group& host = groups[host_gid];
    Group& food = groups[food_gid];
    for (int m : food.members) {
      states[m].stuck_to = host.agent;
      robot_group[m] = host_gid;
    }
    host.members.insert(host.members.end(), food.members.begin(), food.members.end());
    std::sort(host.members.begin(), host.members.end());
    if (host.members.back() - host.members.front() + 1 != static_cast<int>(host.members.size()))
      throw std::logic_error("engine: group members are not position-adjacent");
    food.alive = false;
    food.members.clear();
    order.erase(std::find(order.begin(), order.end(), food_gid));
  }

  void check_rendezvous(double at) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int gid : order) {
      lo = std::min(lo, groups[gid].pos);
      hi = std::max(hi, groups[gid].pos);
    }
    if (hi - lo <= cfg.epsilon) {
      trace.achieved = true;
      trace.rendezvous_time = now;
      trace.rendezvous_position = at;
      trace.rendezvous_round = round;
      trace.rounds_used = round + 1;
      done = true;
      finalize();
    }
  }

  void process_contact(std::size_t k, double t_end) {
    const int ga = order[k];
    const int gb = order[k + 1];
    Group& A = groups[ga];
    Group& B = groups[gb];

    StrategyState& sa = states[A.agent];
    StrategyState& sb = states[B.agent];
    const Mode ma = sa.mode;
    const Mode mb = sb.mode;
    const int combined = static_cast<int>(A.members.size() + B.members.size());

    const MeetingOutcome oa = react_to_meeting(sa, mb, Direction::Right, phase, combined);
    const MeetingOutcome ob = react_to_meeting(sb, ma, Direction::Left, phase, combined);

    // Snap at the collector's position so a mid-leg host is never pushed off
    // its exact trajectory; when both sides stop anyway, meet in the middle.
    double at = 0.5 * (A.pos + B.pos);
    if (oa.action == MeetingAction::CollectOtherAndContinue) at = A.pos;
    else if (ob.action == MeetingAction::CollectOtherAndContinue) at = B.pos;
    A.pos = B.pos = at;
    fix_knee(A, t_end);
    fix_knee(B, t_end);

    if (oa.mark_direction_met) sa.directions_met[side_index(Direction::Right)] = true;
    if (ob.mark_direction_met) sb.directions_met[side_index(Direction::Left)] = true;
    sa.mode = oa.new_mode;
    sb.mode = ob.new_mode;
    sa.expand_dir = oa.new_expand_dir;
    sb.expand_dir = ob.new_expand_dir;

    EventKind kind;
    if (ma == Mode::Single && mb == Mode::Single) kind = EventKind::SingleSingle;
    else if (ma == Mode::Internal || mb == Mode::Internal) kind = EventKind::CollectInternal;
    else if (ma == Mode::Single || mb == Mode::Single) kind = EventKind::Stick;
    else if (oa.action == MeetingAction::BecomeInternalAndWait) kind = EventKind::BoundaryFresh;
    else kind = EventKind::BoundaryRepeat;

    MeetingEvent ev;
    ev.time = now;
    ev.position = at;
    ev.round = round;
    ev.phase = phase;
    ev.kind = kind;
    ev.left_agent = A.agent;
    ev.right_agent = B.agent;
    ev.participants = A.members;
    ev.participants.insert(ev.participants.end(), B.members.begin(), B.members.end());
    std::sort(ev.participants.begin(), ev.participants.end());
    trace.events.push_back(std::move(ev));

    const auto aa = oa.action;
    const auto ab = ob.action;
    bool merged = false;
    if (aa == MeetingAction::WaitUntilPhaseEnd && ab == MeetingAction::WaitUntilPhaseEnd) {
      park(A, true);
      park(B, true);
    } else if (aa == MeetingAction::CollectOtherAndContinue && ab == MeetingAction::StickToOther) {
      absorb(ga, gb);
      merged = true;
    } else if (aa == MeetingAction::StickToOther && ab == MeetingAction::CollectOtherAndContinue) {
      absorb(gb, ga);
      merged = true;
    } else if (aa == MeetingAction::BecomeInternalAndWait && ab == MeetingAction::BecomeInternalAndWait) {
      park(A, true);
      park(B, true);
    } else if (aa == MeetingAction::BreakAndWait && ab == MeetingAction::BreakAndWait) {
      park(A, true);
      park(B, true);
    } else if (aa == MeetingAction::DeclareRendezvous && ab == MeetingAction::DeclareRendezvous) {
      park(A, true);
      park(B, true);
    } else {
      throw std::logic_error("engine: inconsistent meeting outcome pair");
    }

    if (cfg.record_waypoints) {
      if (!merged) {
        waypoint_group(A, now, at);
        waypoint_group(B, now, at);
      } else {
        waypoint_group(groups[A.alive ? ga : gb], now, at);
      }
    }
    if (!merged) suppressed.insert({std::min(ga, gb), std::max(ga, gb)});
    check_rendezvous(at);
  }

  void initial_contacts() {
    // Robots that share a starting point pair up before the first round; each
    // coincident pair resolves left to right, no coins spent.
    const double t_end = sched.phase_end_time(0, Phase::One);
    int guard = 0;
    while (!done) {
      if (++guard > 4 * cfg.n() * cfg.n() + 16)
        throw std::logic_error("engine: start coincidence cascade does not settle");
      refresh_suppressed();
      bool found = false;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const int ga = order[k];
        const int gb = order[k + 1];
        if (is_suppressed(ga, gb)) continue;
        if (groups[gb].pos - groups[ga].pos <= cfg.epsilon) {
          process_contact(k, t_end);
          found = true;
          break;
        }
      }
      if (!found) break;
    }
  }

  void event_loop() {
    const double t_end = phase_end();
    const int guard_max = 1000 + 200 * cfg.n() * cfg.n();
    int guard = 0;
    while (!done) {
      if (++guard > guard_max) throw std::logic_error("engine: event storm in one phase");
      refresh_suppressed();
      double best_t = 0.0;
      int best_k = -1;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const Group& A = groups[order[k]];
        const Group& B = groups[order[k + 1]];
        const auto c = earliest_contact(motion_of(A), motion_of(B), now, t_end, cfg.epsilon,
                                        is_suppressed(order[k], order[k + 1]));
        if (c && (best_k < 0 || *c < best_t)) {
          best_t = *c;
          best_k = static_cast<int>(k);
        }
      }
      if (best_k < 0) break;
      advance_to(best_t);
      process_contact(static_cast<std::size_t>(best_k), t_end);
    }
    if (!done) advance_to(t_end);
  }

  void step_phase() {
    if (done) return;
    begin_phase();
    event_loop();
    if (done) return;

    const double duration = sched.phase_duration(round, phase);
    for (int j = 0; j < cfg.n(); ++j) {
      const double err = std::abs(dist_phase[j] + wait_phase[j] - duration);
      trace.max_conservation_error = std::max(trace.max_conservation_error, err);
      dist_phase[j] = 0.0;
      wait_phase[j] = 0.0;
    }
    check_order();

    if (phase == Phase::One) {
      phase = Phase::Two;
    } else {
      phase = Phase::One;
      ++round;
      if (round >= cfg.max_rounds) {
        trace.rounds_used = cfg.max_rounds;
        done = true;
        finalize();
      }
    }
  }

  void finalize() {
    trace.end_time = now;
    trace.robots.resize(cfg.n());
    for (int j = 0; j < cfg.n(); ++j) {
      RobotTotals& t = trace.robots[static_cast<std::size_t>(j)];
      t.start_position = cfg.positions[static_cast<std::size_t>(j)];
      t.final_position = groups[robot_group[j]].pos;
      t.distance = distance[j];
      t.waiting = waiting_time[j];
      t.coin_flips = flips[j];
      t.final_mode = states[j].mode;
      waypoint(j, now, t.final_position);
    }
  }
};

std::optional<ContactHit> detect_next_meeting(std::span<const LinearMotion> trajectories,
                                              double horizon, double eps) {
  std::optional<ContactHit> best;
  for (std::size_t k = 0; k + 1 < trajectories.size(); ++k) {
    const auto& a = trajectories[k];
    const auto& b = trajectories[k + 1];
    const double from = std::max(a.start_time, b.start_time);
    if (horizon < from) continue;
    const auto c = earliest_contact(a, b, from, horizon, eps, false);
    if (c && (!best || *c < best->time)) best = ContactHit{*c, static_cast<int>(k)};
  }
  return best;
}

Simulation::Simulation(WorldConfig config, CoinSource& coins)
    : impl_(std::make_unique<Impl>(std::move(config), coins)) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

bool Simulation::finished() const { return impl_->done; }
void Simulation::step_phase() { impl_->step_phase(); }
double Simulation::time() const { return impl_->now; }
int Simulation::round() const { return impl_->round; }
Phase Simulation::phase() const { return impl_->phase; }

std::vector<double> Simulation::positions() const {
  std::vector<double> out(static_cast<std::size_t>(impl_->cfg.n()));
  for (int j = 0; j < impl_->cfg.n(); ++j) out[static_cast<std::size_t>(j)] = impl_->groups[impl_->robot_group[j]].pos;
  return out;
}

const StrategyState& Simulation::state(int robot) const {
  return impl_->states.at(static_cast<std::size_t>(robot));
}

Trace Simulation::take_trace() {
  if (!impl_->done) throw std::logic_error("Simulation::take_trace: run not finished");
  return std::move(impl_->trace);
}

Trace run(const WorldConfig& config, CoinSource& coins) {
  WorldConfig cfg = config;
  if (const auto* script = dynamic_cast<const ScriptCoins*>(&coins))
    cfg.max_rounds = std::min(cfg.max_rounds, script->rounds());
  Simulation sim(cfg, coins);
  while (!sim.finished()) sim.step_phase();
  return sim.take_trace();
}

}  // namespace rv
