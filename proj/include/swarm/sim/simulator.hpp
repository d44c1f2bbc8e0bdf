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

#ifndef SWARM_SIM_SIMULATOR_HPP
#define SWARM_SIM_SIMULATOR_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <set>

#include "swarm/io/trace.hpp"
#include "swarm/mission/models.hpp"
#include "swarm/rbts/supervisor.hpp"

namespace swarm::sim {

enum class Mode : std::uint8_t { NOM, REC1, REC2 };

const char* mode_name(Mode m);

// Every event class runs for a fixed wall-clock span; the simulator is a
// timed abstraction, not a physics model.
struct Durations {
  double search = 2.0;   // s_d and the in-region search s_<or>
  double move = 6.0;     // m_d
  double retreat = 2.0;  // r
  double inner = 4.0;    // one sub-zone leg of the nominal patrol
};

// Whether the silent loss event l fires when the lost drone occupies an
// unsafe zone.  Under a correct supervisor the situation never arises; the
// policy exists to let tests hammer exactly that claim.
struct LossPolicy {
  enum Kind : std::uint8_t { Never, Always, Probability } kind = Never;
  double p = 0.0;
};

struct TrialSpec {
  std::set<mission::Zone> estimate;
  mission::Zone start = 0;
  std::size_t drone = 0;  // which drone desynchronizes
};

struct SimConfig {
  mission::GridMap map = mission::default_map();
  std::size_t n_drones = 10;
  double tick_period = 1.0 / 240.0;
  Durations durations;
  LossPolicy loss;
  std::uint64_t seed = 0;
  rbts::SynthConfig synth;
  TrialSpec trial;
  bool record_trace = true;
  std::size_t max_ticks = 5'000'000;
};

struct DroneState {
  std::size_t id = 0;
  Mode mode = Mode::NOM;
  bool stalled = false;

  // Recovery-layer truth (meaningful in REC1).
  des::StateId nav = 0, expl = 0, scan = 0;
  // Sub-zone-layer truth (meaningful in NOM/REC2).
  des::StateId inner = 0;
  des::StateId nominal_sup = 0;
  des::StateId secondary_sup = 0;
  des::StateId switcher = 0;

  double x = 0, y = 0;  // map units; row 1's north edge is y = 0
};

struct TrialReport {
  bool recoverable = false;
  bool stalled = false;
  bool unsafe = false;    // true_zone reached the no-fly sink
  bool timeout = false;   // tick budget ran out
  bool completed = false; // regrouped with the swarm

  std::vector<std::string> move_sequence;  // lost drone's m_d events
  std::multiset<mission::Zone> zones_visited;
  double primary_recovery_time = -1;    // desync -> b_<or>
  double secondary_recovery_time = -1;  // b_<or> -> regroup
  std::vector<std::string> mode_trajectory;  // lost drone, deduplicated
  std::size_t lost_drone_events = 0;         // emitted after fault injection
  std::size_t ticks = 0;

  std::vector<io::TraceRecord> trace;  // empty when record_trace is off
};

// Deterministic discrete-time closed loop: a swarm on the nominal patrol
// plus at most one drone working through recovery.  All randomness flows
// from the config seed, and only the loss policy consumes it.
class Simulation {
public:
  Simulation(const mission::MissionModel& m, SimConfig cfg);

  // Relocates the drone (which must be on nominal patrol, with no other
  // drone already lost), emits desync, and arms the recovery supervisor
  // synthesized for the estimate -- or the prebuilt one, which must have
  // been synthesized for the same estimate.  An unrecoverable estimate
  // leaves the drone stalled.  ContractViolation if true_zone is not in
  // the estimate.
  void inject_fault(std::size_t drone, mission::Zone true_zone,
                    const std::set<mission::Zone>& estimate,
                    const rbts::RecoverySupervisor* prebuilt = nullptr);

  // True iff the swarm's current sub-zone equals the lost drone's; the
  // drone must be in REC2.
  bool regroup_check(std::size_t drone) const;

  void tick();
  bool done() const;

  std::size_t now_ticks() const { return tick_; }
  double now() const { return static_cast<double>(tick_) * cfg_.tick_period; }
  mission::SubZone swarm_subzone() const;

  const DroneState& drone(std::size_t i) const { return drones_.at(i); }
  const SimConfig& config() const { return cfg_; }

  TrialReport report() const;

private:
  struct Pending {
    std::size_t at = 0;  // tick
    des::EventId event{};
  };

  std::size_t ticks_of(double seconds) const;
  void nominal_emissions();
  void enter_rec2(std::size_t id, mission::SubZone entry);
  void emit_recovery(std::size_t id, des::EventId e);
  void emit_inner(std::size_t id, const std::string& name);
  void record(std::size_t id, const std::string& event);
  void push_mode(const char* name);
  void step_switcher(DroneState& d, const std::string& event);
  bool plant_enables(const DroneState& d, des::EventId e) const;
  void start_next_action();
  void complete_action();
  void roll_loss(std::size_t id);
  void assert_sound(const DroneState& d) const;
  void place(DroneState& d);
  std::pair<double, double> cell_center(mission::Zone z) const;
  std::string current_estimate() const;

  const mission::MissionModel& m_;
  SimConfig cfg_;
  std::vector<DroneState> drones_;
  std::mt19937_64 rng_;
  std::size_t tick_ = 0;

  // Cached durations in ticks and frequently used state ids.
  std::size_t leg_ticks_ = 1, search_ticks_ = 1, move_ticks_ = 1, retreat_ticks_ = 1;
  des::StateId inner_unidentified_{};
  des::StateId inner_state_[4] = {};
  des::StateId secondary_rest_{};  // "ready to search" state of the secondary loop

  // Lost-drone machinery
  std::optional<std::size_t> lost_;
  std::unique_ptr<rbts::RecoverySupervisor> own_sup_;
  const rbts::RecoverySupervisor* sup_ = nullptr;
  std::optional<rbts::SupervisorRuntime> runtime_;
  struct {
    bool active = false;
    bool inner_layer = false;    // REC2 action (named), else a recovery EventId
    des::EventId event{};
    std::string name;
    std::size_t started_at = 0;
    std::size_t completes_at = 0;
    double x0 = 0, y0 = 0;
  } action_;
  std::deque<Pending> pending_;
  mission::Dir last_move_ = mission::Dir::N;
  std::optional<std::size_t> stall_deadline_;
  std::optional<std::size_t> finish_at_;
  std::string fallback_estimate_;  // trace estimate when no runtime exists

  // Report accumulation
  TrialReport rep_;
  std::size_t fault_tick_ = 0;
  std::size_t reentry_tick_ = 0;
  bool fault_injected_ = false;
};

// Builds the model, injects the configured fault at t = 0, and runs to
// completion (regroup, stall verdict, safety violation, or tick budget).
TrialReport run_trial(const SimConfig& cfg);

// Same, against a caller-owned model and optional pre-synthesized
// supervisor (reused across starts and fuzz seeds).
TrialReport run_trial(const mission::MissionModel& m, const SimConfig& cfg,
                      const rbts::RecoverySupervisor* prebuilt = nullptr);

}  // namespace swarm::sim

#endif
