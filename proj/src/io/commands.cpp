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

#include "swarm/io/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "swarm/io/dot.hpp"
#include "swarm/io/model_format.hpp"
#include "swarm/io/trace.hpp"
#include "swarm/rbts/oracle.hpp"
#include "swarm/sim/simulator.hpp"

namespace swarm::io {

using des::UsageError;
using mission::MissionModel;
using mission::Zone;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_artifact(const std::string& path, std::ostream& fallback,
                    const std::string& content) {
  if (path.empty() || path == "-") {
    fallback << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file '" + path + "'");
  out << content;
  if (!out.flush()) throw UsageError("failed writing file '" + path + "'");
}

MissionModel load_model(const Options& o) {
  if (o.map_file.empty()) return MissionModel::build(mission::default_map());
  return parse_model(read_file(o.map_file));
}

std::set<Zone> parse_zone_list(const std::string& text) {
  if (text.empty()) throw UsageError("an estimate is required (e.g. --estimate 1,2)");
  std::set<Zone> zones;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(tok, &used);
      if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
      zones.insert(static_cast<Zone>(v));
    } catch (const std::exception&) {
      throw UsageError("bad zone '" + tok + "' in estimate list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return zones;
}

rbts::SynthConfig synth_config(const Options& o) {
  rbts::SynthConfig cfg;
  if (o.order == "prefer-move") cfg.decision_order = rbts::DecisionOrder::PreferMove;
  else if (o.order == "minimal") cfg.decision_order = rbts::DecisionOrder::Minimal;
  else if (o.order == "random") cfg.decision_order = rbts::DecisionOrder::Randomized;
  else if (o.order == "maxperm") cfg.decision_order = rbts::DecisionOrder::MaxPermissive;
  else
    throw UsageError("unknown decision order '" + o.order +
                     "' (expected prefer-move|minimal|random|maxperm)");
  if (o.explore == "dfs") cfg.exploration = rbts::Exploration::DepthFirst;
  else if (o.explore == "bfs") cfg.exploration = rbts::Exploration::BreadthFirst;
  else throw UsageError("unknown exploration '" + o.explore + "' (expected dfs|bfs)");
  cfg.seed = o.seed;
  if (o.budget) {
    cfg.node_budget = *o.budget;
  } else if (const char* env = std::getenv("SWARMREC_BUDGET")) {
    try {
      std::size_t used = 0;
      cfg.node_budget = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad SWARMREC_BUDGET value '") + env + "'");
    }
  }
  return cfg;
}

sim::Durations parse_durations(const std::string& text) {
  sim::Durations d;
  if (text.empty()) return d;
  double v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t comma = text.find(',', pos);
    bool last = i == 3;
    if (last != (comma == std::string::npos))
      throw UsageError("bad durations '" + text + "' (expected search,move,return,inner)");
    std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      v[i] = std::stod(tok, &used);
      if (used != tok.size() || !(v[i] > 0)) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad duration '" + tok + "' in '" + text + "'");
    }
    pos = comma + 1;
  }
  d.search = v[0];
  d.move = v[1];
  d.retreat = v[2];
  d.inner = v[3];
  return d;
}

sim::LossPolicy parse_loss(const std::string& text) {
  if (text.empty() || text == "never") return {sim::LossPolicy::Never, 0.0};
  if (text == "always") return {sim::LossPolicy::Always, 0.0};
  if (text.rfind("p=", 0) == 0) {
    try {
      std::size_t used = 0;
      double p = std::stod(text.substr(2), &used);
      if (used != text.size() - 2 || p < 0.0 || p > 1.0) throw std::invalid_argument(text);
      return {sim::LossPolicy::Probability, p};
    } catch (const std::exception&) {
      throw UsageError("bad loss policy '" + text + "'");
    }
  }
  throw UsageError("bad loss policy '" + text + "' (expected never|always|p=<prob>)");
}

sim::SimConfig sim_config(const Options& o, const MissionModel& m) {
  sim::SimConfig cfg;
  cfg.map = m.map();
  cfg.n_drones = o.drones;
  cfg.durations = parse_durations(o.durations);
  cfg.loss = parse_loss(o.loss);
  cfg.seed = o.seed;
  cfg.synth = synth_config(o);
  cfg.trial.estimate = parse_zone_list(o.estimate);
  if (!o.start) throw UsageError("a start zone is required (--start)");
  cfg.trial.start = *o.start;
  if (!cfg.trial.estimate.count(cfg.trial.start))
    throw UsageError("start zone " + std::to_string(cfg.trial.start) +
                     " is not in the estimate");
  return cfg;
}

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Commands share one error boundary so the exit-code contract stays in one
// place.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const rbts::BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetAbort;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

struct SynthOutcome {
  std::optional<rbts::Rbts> game;                // absent when already unsafe
  std::optional<rbts::RecoverySupervisor> sup;   // present iff recoverable
};

SynthOutcome run_synthesis(const MissionModel& m, const std::set<Zone>& zones,
                           const rbts::SynthConfig& cfg) {
  SynthOutcome r;
  auto y0 = rbts::initial_y(m, m.zone_estimate(zones));
  if (!y0) return r;
  r.game = rbts::build_rbts(m, *y0, cfg);
  if (r.game->recoverable) r.sup = rbts::extract_supervisor(*r.game);
  return r;
}

}  // namespace

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    MissionModel m = load_model(o);
    std::set<Zone> zones = parse_zone_list(o.estimate);
    SynthOutcome s = run_synthesis(m, zones, synth_config(o));
    if (!s.sup) {
      out << "unrecoverable\n";
      return kUnrecoverable;
    }
    std::string artifact = serialize_supervisor(m.composite(), *s.sup);
    write_artifact(o.out_file, out, artifact);
    std::ostream& stats = (o.out_file.empty() || o.out_file == "-") ? err : out;
    stats << "recoverable: y_nodes=" << s.game->y_nodes.size()
          << " z_nodes=" << s.game->z_nodes.size() << " rules=" << s.sup->strategy.size()
          << "\n";
    if (!o.dot_file.empty())
      write_artifact(o.dot_file, out, export_dot(m.composite(), *s.game));
    return kOk;
  });
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    MissionModel m = load_model(o);
    sim::SimConfig cfg = sim_config(o, m);
    sim::TrialReport r = sim::run_trial(m, cfg);

    write_artifact(o.trace_file, out, format_trace(r.trace) + "\n");

    out << "recoverable: " << (r.recoverable ? "yes" : "no") << "\n";
    out << "completed: " << (r.completed ? "yes" : "no") << "\n";
    if (r.stalled) out << "stalled: yes\n";
    if (r.unsafe) out << "unsafe: yes\n";
    if (r.timeout) out << "timeout: yes\n";
    out << "moves:";
    for (const std::string& mv : r.move_sequence) out << " " << mv;
    out << "\n";
    out << "move_count: " << r.move_sequence.size() << "\n";
    out << "events:";
    for (const TraceRecord& t : r.trace)
      if (t.drone == cfg.trial.drone) out << " " << t.event;
    out << "\n";
    if (r.primary_recovery_time >= 0)
      out << "primary_recovery_s: " << fixed6(r.primary_recovery_time) << "\n";
    if (r.secondary_recovery_time >= 0)
      out << "secondary_recovery_s: " << fixed6(r.secondary_recovery_time) << "\n";
    out << "zones_visited:";
    for (Zone z : r.zones_visited) out << " " << z;
    out << "\n";
    out << "mode_trajectory:";
    for (const std::string& s : r.mode_trajectory) out << " " << s;
    out << "\n";
    out << "ticks: " << r.ticks << "\n";

    if (r.unsafe || r.timeout) return kIoError;
    return r.recoverable ? kOk : kUnrecoverable;
  });
}

int cmd_benchmark(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    struct Row {
      int trial;
      const char* estimate;
      Zone start;  // 0 = no-solution group, synthesis only
      bool expect_recoverable;
    };
    // The embedded expectations carry verdicts only; wall-clock recovery
    // times are environment-dependent and are reported, not compared.
    static const Row kRows[] = {
        {1, "1,2", 1, true},      {1, "1,2", 2, true},      {2, "1,6,11", 1, true},
        {2, "1,6,11", 6, true},   {2, "1,6,11", 11, true},  {3, "1,2,6,7", 1, true},
        {3, "1,2,6,7", 2, true},  {3, "1,2,6,7", 6, true},  {3, "1,2,6,7", 7, true},
        {4, "1,2,3,4,5", 0, false},
    };

    MissionModel m = load_model(o);
    rbts::SynthConfig scfg = synth_config(o);

    // One synthesis per distinct estimate, reused across its starts.
    std::map<std::string, SynthOutcome> synths;
    auto t0 = std::chrono::steady_clock::now();
    for (const Row& row : kRows)
      if (!synths.count(row.estimate))
        synths.emplace(row.estimate, run_synthesis(m, parse_zone_list(row.estimate), scfg));
    double synth_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out << std::left << std::setw(6) << "trial" << std::setw(14) << "estimate"
        << std::setw(7) << "start" << std::setw(14) << "verdict" << std::setw(7)
        << "moves" << std::setw(12) << "primary_s" << "secondary_s\n";

    bool verdicts_ok = true;
    double trial2_min_time = -1;
    Zone trial2_min_start = 0;
    for (const Row& row : kRows) {
      const SynthOutcome& s = synths.at(row.estimate);
      bool recoverable = s.sup.has_value();
      if (recoverable != row.expect_recoverable) verdicts_ok = false;

      std::string est = std::string("{") + row.estimate + "}";
      out << std::left << std::setw(6) << row.trial << std::setw(14) << est;
      if (row.start == 0 || !recoverable) {
        out << std::setw(7) << "-" << (recoverable ? "recoverable" : "No Solution Found")
            << "\n";
        continue;
      }

      sim::SimConfig cfg;
      cfg.map = m.map();
      cfg.durations = parse_durations(o.durations);
      cfg.seed = o.seed;
      cfg.synth = scfg;
      cfg.trial.estimate = parse_zone_list(row.estimate);
      cfg.trial.start = row.start;
      cfg.record_trace = false;
      sim::TrialReport r = sim::run_trial(m, cfg, &*s.sup);

      out << std::setw(7) << row.start << std::setw(14)
          << (r.completed ? "recoverable" : "FAILED") << std::setw(7)
          << r.move_sequence.size() << std::setw(12) << fixed6(r.primary_recovery_time)
          << fixed6(r.secondary_recovery_time) << "\n";
      if (!r.completed) verdicts_ok = false;
      if (row.trial == 2 &&
          (trial2_min_time < 0 || r.primary_recovery_time < trial2_min_time)) {
        trial2_min_time = r.primary_recovery_time;
        trial2_min_start = row.start;
      }
    }

    out << "synthesis_total_s: " << fixed6(synth_seconds) << "\n";
    out << "verdicts: " << (verdicts_ok ? "all match" : "MISMATCH") << "\n";
    bool min_ok = trial2_min_start == 11;
    out << "trial-2 fastest start: " << trial2_min_start << (min_ok ? " (ok)" : " (UNEXPECTED)")
        << "\n";
    return verdicts_ok && min_ok ? kOk : kUnrecoverable;
  });
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    MissionModel m = load_model(o);
    rbts::SynthConfig scfg = synth_config(o);
    bool all_ok = true;
    auto check = [&](const char* name, bool ok) {
      out << "check " << name << ": " << (ok ? "ok" : "FAIL") << "\n";
      if (!ok) all_ok = false;
    };

    // 1. The nominal closed loop and the mode-switched loop never paint
    // themselves into a corner.
    {
      const des::Automaton nominal[] = {m.inner(), m.nominal_supervisor()};
      des::TrimResult t1 = des::trim_nonblocking(des::sync_product(nominal, "nominal_loop"));
      check("nominal loop nonblocking", t1.nonblocking && t1.automaton.has_value());
      const des::Automaton switched[] = {m.mode_switcher(), m.inner(),
                                         m.nominal_supervisor()};
      des::TrimResult t2 =
          des::trim_nonblocking(des::sync_product(switched, "mode_switched_loop"));
      check("mode-switched loop nonblocking", t2.nonblocking && t2.automaton.has_value());
      des::TrimResult t3 = des::trim_nonblocking(m.mode_switcher());
      check("mode switcher nonblocking", t3.nonblocking);
    }

    // 2. Recovery verdicts: the game construction against the independent
    // enumerate-and-iterate oracle, over every single-zone estimate.
    std::size_t recoverable_count = 0, inconclusive = 0;
    {
      bool agree = true;
      for (Zone z = 1; z <= m.map().n_zones(); ++z) {
        if (z == m.map().or_zone) continue;
        auto raw = m.zone_estimate({z});
        auto y0 = rbts::initial_y(m, raw);
        bool engine_rec = false;
        if (y0) {
          rbts::Rbts g = rbts::build_rbts(m, *y0, scfg);
          engine_rec = g.recoverable;
        }
        rbts::OracleVerdict v = rbts::oracle_recoverable(m, raw, scfg.node_budget);
        if (v == rbts::OracleVerdict::Inconclusive) {
          ++inconclusive;
          continue;
        }
        bool oracle_rec = v == rbts::OracleVerdict::Recoverable;
        if (engine_rec != oracle_rec) agree = false;
        if (engine_rec) ++recoverable_count;
      }
      check("engine/oracle verdicts agree (singletons)", agree);
      out << "  recoverable singleton estimates: " << recoverable_count << "\n";
      if (inconclusive)
        out << "  oracle inconclusive (budget): " << inconclusive << "\n";
    }

    // 3. Closed-loop soundness: fly every recoverable singleton and let the
    // simulator's per-tick containment assertion do the judging.
    {
      bool sound = true;
      std::size_t flown = 0;
      for (Zone z = 1; z <= m.map().n_zones(); ++z) {
        if (z == m.map().or_zone) continue;
        sim::SimConfig cfg;
        cfg.map = m.map();
        cfg.seed = o.seed;
        cfg.synth = scfg;
        cfg.trial.estimate = {z};
        cfg.trial.start = z;
        cfg.record_trace = false;
        try {
          sim::TrialReport r = sim::run_trial(m, cfg);
          if (r.recoverable && !r.completed) sound = false;
          if (r.unsafe) sound = false;
          if (r.recoverable) ++flown;
        } catch (const des::ContractViolation&) {
          sound = false;
        }
      }
      check("closed-loop estimate soundness (singleton trials)", sound);
      out << "  trials flown to regroup: " << flown << "\n";
    }

    return all_ok ? kOk : kUnrecoverable;
  });
}

int cmd_export_dot(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    MissionModel m = load_model(o);
    if (!o.automaton.empty()) {
      const des::Automaton* all[] = {&m.navigation(),           &m.exploration(),
                                     &m.scanning(),             &m.inner(),
                                     &m.nominal_supervisor(),   &m.secondary_supervisor(),
                                     &m.mode_switcher()};
      for (const des::Automaton* a : all) {
        if (a->name() == o.automaton) {
          write_artifact(o.out_file, out, export_dot(*a));
          return kOk;
        }
      }
      std::string names;
      for (const des::Automaton* a : all) names += " " + a->name();
      throw UsageError("unknown automaton '" + o.automaton + "' (have:" + names + ")");
    }
    std::set<Zone> zones = parse_zone_list(o.estimate);
    auto y0 = rbts::initial_y(m, m.zone_estimate(zones));
    if (!y0) {
      out << "unrecoverable\n";
      return kUnrecoverable;
    }
    rbts::Rbts g = rbts::build_rbts(m, *y0, synth_config(o));
    write_artifact(o.out_file, out, export_dot(m.composite(), g));
    return kOk;
  });
}

int cmd_dump_model(const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    MissionModel m = load_model(o);
    write_artifact(o.out_file, out, serialize_model(m));
    return kOk;
  });
}

}  // namespace swarm::io
