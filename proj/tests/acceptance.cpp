/*
 * Copyright 2026 swarm-recovery contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// End-to-end acceptance drive for the recovery toolkit.  Each criterion
// prints exactly one PASS/FAIL line with the measurements that justify the
// verdict, so the output reads as a checklist.  The binary exits non-zero
// if any criterion fails.
//
// Criterion 2 is expected to fail, and the failure is reported honestly
// rather than glossed over: its second clause asks the start-2 reference
// flight to finish in exactly one move fewer than the start-1 flight, but
// in this model both flights produce identical observation sequences until
// the drones are already located, so their command prefixes cannot differ
// and a shorter start-2 flight does not exist.  The line's detail carries
// the measured numbers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swarm/des/automaton.hpp"
#include "swarm/des/composite.hpp"
#include "swarm/io/trace.hpp"
#include "swarm/mission/models.hpp"
#include "swarm/rbts/game.hpp"
#include "swarm/rbts/oracle.hpp"
#include "swarm/rbts/supervisor.hpp"
#include "swarm/sim/simulator.hpp"

using namespace swarm;
using mission::MissionModel;
using mission::Zone;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

struct Synthesis {
  std::optional<rbts::Rbts> game;               // absent when already unsafe
  std::optional<rbts::RecoverySupervisor> sup;  // present iff recoverable
};

Synthesis synthesize(const MissionModel& m, const std::set<Zone>& zones,
                     const rbts::SynthConfig& cfg = {}) {
  Synthesis s;
  auto y0 = rbts::initial_y(m, m.zone_estimate(zones));
  if (!y0) return s;
  s.game = rbts::build_rbts(m, *y0, cfg);
  if (s.game->recoverable) s.sup = rbts::extract_supervisor(*s.game);
  return s;
}

sim::TrialReport fly(const MissionModel& m, const std::set<Zone>& estimate, Zone start,
                     const rbts::RecoverySupervisor* prebuilt, std::uint64_t seed = 0,
                     sim::LossPolicy loss = {}, std::size_t n_drones = 10,
                     bool record_trace = true) {
  sim::SimConfig cfg;
  cfg.map = m.map();
  cfg.n_drones = n_drones;
  cfg.loss = loss;
  cfg.seed = seed;
  cfg.trial.estimate = estimate;
  cfg.trial.start = start;
  cfg.record_trace = record_trace;
  return sim::run_trial(m, cfg, prebuilt);
}

std::vector<std::string> events_of(const sim::TrialReport& r, std::size_t drone) {
  std::vector<std::string> out;
  for (const io::TraceRecord& t : r.trace)
    if (t.drone == drone) out.push_back(t.event);
  return out;
}

}  // namespace

int main() {
  const MissionModel m = MissionModel::build(mission::default_map());

  const std::set<Zone> est1 = {1, 2};
  const std::set<Zone> est2 = {1, 6, 11};
  const std::set<Zone> est3 = {1, 2, 6, 7};
  const std::set<Zone> est4 = {1, 2, 3, 4, 5};

  // --- criterion 1: verdicts for the four benchmark estimates, and the
  // whole synthesis pass stays under one second.
  std::map<std::string, Synthesis> synths;
  auto t0 = std::chrono::steady_clock::now();
  synths["1,2"] = synthesize(m, est1);
  synths["1,6,11"] = synthesize(m, est2);
  synths["1,2,6,7"] = synthesize(m, est3);
  synths["1,2,3,4,5"] = synthesize(m, est4);
  double synth_s = seconds_since(t0);
  {
    bool verdicts = synths["1,2"].sup && synths["1,6,11"].sup && synths["1,2,6,7"].sup &&
                    !synths["1,2,3,4,5"].sup;
    bool fast = synth_s < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "benchmark verdicts %s (three recoverable, {1,2,3,4,5} not); four "
                  "syntheses took %.3f s (budget 1.0 s)",
                  verdicts ? "match" : "MISMATCH", synth_s);
    report(1, verdicts && fast, buf);
  }

  // --- criterion 2: the trial-1 reference flights.  Start 1 must fly
  // exactly east, east, south, south.  The second clause wants start 2 to
  // finish in exactly one move fewer; measured behaviour shows why that
  // cannot happen (see the header comment).
  {
    const rbts::RecoverySupervisor* sup = &*synths["1,2"].sup;
    sim::TrialReport r1 = fly(m, est1, 1, sup);
    sim::TrialReport r2 = fly(m, est1, 2, sup);
    bool clause1 = r1.completed &&
                   r1.move_sequence == std::vector<std::string>{"m_e", "m_e", "m_s", "m_s"};
    bool clause2 = r2.completed && r2.move_sequence.size() + 1 == r1.move_sequence.size();
    std::ostringstream detail;
    detail << "start-1 flies [" << join(r1.move_sequence) << "] in "
           << r1.primary_recovery_time << " s";
    detail << "; start-2 takes " << r2.move_sequence.size() << " moves ("
           << r2.primary_recovery_time << " s), not " << r1.move_sequence.size() - 1
           << ": both starts see identical observations, so the supervisor cannot "
              "shorten the start-2 flight";
    report(2, clause1 && clause2, detail.str());
  }

  // --- criterion 3: shape of the synthesized game for {1,2}.  The root
  // admits exactly one candidate decision, {s_n} plus the uncontrollables;
  // at ({1,2},{M},{N}) the move decision {m_n} is pruned as unsafe with no
  // successors and the retained strategy is {r}.
  {
    const rbts::Rbts& g = *synths["1,2"].game;
    const des::CompositeModel& c = m.composite();

    auto roots = rbts::candidate_decisions(m, g.y_nodes[g.initial].estimate, {});
    bool root_ok = roots.size() == 1 && c.format_decision(roots[0]) == "{s_n}∪Σ_uc";

    bool pruned_ok = false, strategy_ok = false;
    for (const rbts::YNode& y : g.y_nodes) {
      if (c.format_estimate(y.estimate) != "({1,2},{M},{N})") continue;
      for (std::size_t zi : y.z) {
        const rbts::ZNode& z = g.z_nodes[zi];
        if (c.format_decision(z.decision) == "{m_n}∪Σ_uc")
          pruned_ok = z.status == rbts::ZStatus::PrunedUnsafe && z.successors.empty();
      }
      strategy_ok = y.winning && y.strategy_z &&
                    c.format_decision(g.z_nodes[*y.strategy_z].decision) == "{r}∪Σ_uc";
    }
    std::string detail = std::string("root decision ") +
                         (root_ok ? "is exactly {s_n}∪Σ_uc" : "WRONG") +
                         "; at ({1,2},{M},{N}) the {m_n} decision is " +
                         (pruned_ok ? "pruned unsafe with no successors" : "NOT pruned") +
                         " and the strategy keeps " + (strategy_ok ? "{r}∪Σ_uc" : "SOMETHING ELSE");
    report(3, root_ok && pruned_ok && strategy_ok, detail);
  }

  // --- criterion 4: in trial 3 from start 6, the inner-region beacon is
  // feasible (and fires) immediately after the first southward move; all
  // four starts recover with the true zone inside the estimate throughout
  // (the engine asserts containment every tick and the runs must end
  // completed and safe).  The six-move start-1 flight is a soft target:
  // measured move counts per decision ordering are reported.
  {
    const rbts::RecoverySupervisor* sup = &*synths["1,2,6,7"].sup;
    sim::TrialReport r6 = fly(m, est3, 6, sup);
    std::vector<std::string> ev = events_of(r6, 0);
    bool beacon_ok = false;
    for (std::size_t i = 0; i + 1 < ev.size(); ++i)
      if (ev[i] == "m_s") {
        beacon_ok = ev[i + 1] == "b_13";
        break;
      }

    bool all_safe = true;
    std::vector<std::string> sizes;
    for (Zone start : est3) {
      sim::TrialReport r = fly(m, est3, start, sup);
      if (!r.completed || r.unsafe || r.stalled) all_safe = false;
      sizes.push_back(std::to_string(start) + ":" + std::to_string(r.move_sequence.size()));
    }

    // Soft probe: does any decision ordering reproduce a six-move start-1
    // flight?  Report the counts either way.
    std::vector<std::string> probe;
    bool six = false;
    for (auto [name, order] :
         {std::pair{"prefer-move", rbts::DecisionOrder::PreferMove},
          std::pair{"minimal", rbts::DecisionOrder::Minimal},
          std::pair{"maxperm", rbts::DecisionOrder::MaxPermissive},
          std::pair{"random", rbts::DecisionOrder::Randomized}}) {
      rbts::SynthConfig cfg;
      cfg.decision_order = order;
      Synthesis s = synthesize(m, est3, cfg);
      std::size_t n = s.sup ? fly(m, est3, 1, &*s.sup).move_sequence.size() : 0;
      probe.push_back(std::string(name) + "=" + std::to_string(n));
      if (n == 6) six = true;
    }

    std::ostringstream detail;
    detail << (beacon_ok ? "b_13 fires directly after the first m_s from start 6"
                         : "b_13 does NOT follow the first m_s")
           << "; all starts safe+completed (moves " << join(sizes, ", ") << ")"
           << "; soft six-move target " << (six ? "met" : "not met") << " ("
           << join(probe, ", ") << ")";
    report(4, beacon_ok && all_safe, detail.str());
  }

  // --- criterion 5: an unrecoverable estimate must ground the drone: after
  // the fault it emits no controllable event at all.
  {
    sim::TrialReport r = fly(m, est4, 1, nullptr);
    std::vector<std::string> ev = events_of(r, 0);
    bool grounded = !r.recoverable && r.stalled && !r.completed && r.move_sequence.empty() &&
                    ev == std::vector<std::string>{"desync"};
    std::ostringstream detail;
    detail << "{1,2,3,4,5} is unrecoverable and the drone stalls: post-fault events ["
           << join(ev) << "], " << r.move_sequence.size() << " moves";
    report(5, grounded, detail.str());
  }

  // --- criterion 6: (a) in trial 2 the start-11 flight is strictly the
  // fastest and shortest; (b) a thousand seeded randomized-loss flights per
  // recoverable (estimate, start) pair never reach the no-fly sink; (c) the
  // simulator asserts estimate containment on every tick of those flights
  // (a violation throws and fails the sweep).
  {
    const rbts::RecoverySupervisor* sup2 = &*synths["1,6,11"].sup;
    sim::TrialReport ra = fly(m, est2, 1, sup2);
    sim::TrialReport rb = fly(m, est2, 6, sup2);
    sim::TrialReport rc = fly(m, est2, 11, sup2);
    bool minimal = rc.completed && rc.primary_recovery_time < ra.primary_recovery_time &&
                   rc.primary_recovery_time < rb.primary_recovery_time &&
                   rc.move_sequence.size() < ra.move_sequence.size() &&
                   rc.move_sequence.size() < rb.move_sequence.size();

    struct Pair {
      const std::set<Zone>* estimate;
      const char* key;
      Zone start;
    };
    std::vector<Pair> pairs;
    for (Zone z : est1) pairs.push_back({&est1, "1,2", z});
    for (Zone z : est2) pairs.push_back({&est2, "1,6,11", z});
    for (Zone z : est3) pairs.push_back({&est3, "1,2,6,7", z});

    const int kSeeds = 1000;
    std::size_t flights = 0, unsafe = 0, violations = 0, incomplete = 0;
    for (const Pair& p : pairs) {
      const rbts::RecoverySupervisor* sup = &*synths[p.key].sup;
      for (int seed = 0; seed < kSeeds; ++seed) {
        try {
          sim::TrialReport r =
              fly(m, *p.estimate, p.start, sup, static_cast<std::uint64_t>(seed),
                  {sim::LossPolicy::Probability, 0.5}, /*n_drones=*/1,
                  /*record_trace=*/false);
          ++flights;
          if (r.unsafe) ++unsafe;
          if (!r.completed) ++incomplete;
        } catch (const des::ContractViolation&) {
          ++flights;
          ++violations;
        }
      }
    }
    std::ostringstream detail;
    detail << "start-11 flight is strictly minimal (" << rc.move_sequence.size()
           << " moves, " << rc.primary_recovery_time << " s vs "
           << ra.primary_recovery_time << "/" << rb.primary_recovery_time << " s); "
           << flights << " randomized-loss flights: " << unsafe << " no-fly entries, "
           << violations << " containment violations, " << incomplete << " incomplete";
    report(6, minimal && flights == pairs.size() * kSeeds && unsafe == 0 &&
                  violations == 0 && incomplete == 0,
           detail.str());
  }

  // --- criterion 7: the game engine and the brute-force oracle agree on
  // every estimate of at most two zones on the default map, and on every
  // possible estimate of a 3x3 map, all inside five minutes.
  {
    auto t7 = std::chrono::steady_clock::now();
    auto agree = [](const MissionModel& model, const std::set<Zone>& zones) {
      bool engine = false;
      if (auto y0 = rbts::initial_y(model, model.zone_estimate(zones))) {
        engine = rbts::build_rbts(model, *y0, {}).recoverable;
      }
      rbts::OracleVerdict v = rbts::oracle_recoverable(model, model.zone_estimate(zones),
                                                       1'000'000);
      if (v == rbts::OracleVerdict::Inconclusive) return false;
      return engine == (v == rbts::OracleVerdict::Recoverable);
    };

    std::size_t checked = 0, mismatched = 0;
    for (Zone a = 1; a <= 25; ++a)
      for (Zone b = a; b <= 25; ++b) {
        std::set<Zone> zones = {a, b};  // collapses to a singleton when a == b
        ++checked;
        if (!agree(m, zones)) ++mismatched;
      }
    std::size_t checked_5x5 = checked;

    MissionModel small =
        MissionModel::build(mission::build_grid_map(3, 3, 5, {3, 7}, mission::SubZone::A));
    std::size_t checked_3x3 = 0;
    for (unsigned mask = 1; mask < (1u << 9); ++mask) {
      std::set<Zone> zones;
      for (unsigned bit = 0; bit < 9; ++bit)
        if (mask & (1u << bit)) zones.insert(static_cast<Zone>(bit + 1));
      ++checked_3x3;
      if (!agree(small, zones)) ++mismatched;
    }
    double elapsed = seconds_since(t7);

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "engine and oracle agree on %zu estimates (5x5, up to two zones) and "
                  "all %zu estimates of a 3x3 map with %zu mismatches, in %.1f s "
                  "(budget 300 s)",
                  checked_5x5, checked_3x3, mismatched, elapsed);
    report(7, mismatched == 0 && elapsed < 300.0, buf);
  }

  // --- criterion 8: a full ten-drone mission around trial 1 walks the mode
  // cycle exactly once and replays byte-for-byte under a fixed seed.
  {
    const rbts::RecoverySupervisor* sup = &*synths["1,2"].sup;
    sim::TrialReport first = fly(m, est1, 1, sup, 2026, {sim::LossPolicy::Probability, 0.5});
    sim::TrialReport second = fly(m, est1, 1, sup, 2026, {sim::LossPolicy::Probability, 0.5});
    bool trajectory = first.mode_trajectory ==
                      std::vector<std::string>{"NOM", "REC1", "REC2", "NOM"};
    bool identical = io::format_trace(first.trace) == io::format_trace(second.trace) &&
                     !first.trace.empty();
    std::ostringstream detail;
    detail << "mode trajectory [" << join(first.mode_trajectory)
           << "]; two seeded reruns produced byte-identical traces of "
           << first.trace.size() << " records";
    report(8, trajectory && identical && first.completed, detail.str());
  }

  // --- criterion 9: the nominal patrol loop and its mode-switched
  // extension are nonblocking (every reachable state can still reach a
  // marked state).
  {
    const des::Automaton nominal[] = {m.inner(), m.nominal_supervisor()};
    des::TrimResult t_nom = des::trim_nonblocking(des::sync_product(nominal, "nominal_loop"));
    const des::Automaton switched[] = {m.mode_switcher(), m.inner(), m.nominal_supervisor()};
    des::TrimResult t_sw =
        des::trim_nonblocking(des::sync_product(switched, "mode_switched_loop"));
    std::ostringstream detail;
    detail << "nominal loop nonblocking=" << (t_nom.nonblocking ? "true" : "false")
           << ", mode-switched loop nonblocking=" << (t_sw.nonblocking ? "true" : "false");
    report(9, t_nom.nonblocking && t_sw.nonblocking, detail.str());
  }

  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
