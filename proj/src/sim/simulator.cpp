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

#include "swarm/sim/simulator.hpp"

#include <cmath>

namespace swarm::sim {

using des::ContractViolation;
using des::EventId;
using des::StateId;
using des::UsageError;
using mission::Dir;
using mission::SubZone;
using mission::Zone;

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::NOM: return "NOM";
    case Mode::REC1: return "REC1";
    case Mode::REC2: return "REC2";
  }
  return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRingRadius = 0.1;
constexpr EventId kNoEvent = static_cast<EventId>(-1);

// Map units: one zone is a 1x1 cell, row 1's north edge at y = 0, y grows
// southward.
std::pair<double, double> dir_unit(Dir d) {
  switch (d) {
    case Dir::N: return {0.0, -1.0};
    case Dir::E: return {1.0, 0.0};
    case Dir::S: return {0.0, 1.0};
    case Dir::W: return {-1.0, 0.0};
  }
  return {0.0, 0.0};
}

// Quadrant centers of a cell, relative to the cell's center.
std::pair<double, double> subzone_offset(SubZone x) {
  switch (x) {
    case SubZone::A: return {-0.25, -0.25};
    case SubZone::B: return {0.25, -0.25};
    case SubZone::C: return {0.25, 0.25};
    case SubZone::D: return {-0.25, 0.25};
  }
  return {0.0, 0.0};
}

// Crossing into the operational region while flying south means entering
// through its north edge, i.e. arriving in the north-west quadrant first
// (the patrol cycle's frame); and so on clockwise.
SubZone entry_subzone(Dir last_move) {
  switch (last_move) {
    case Dir::S: return SubZone::A;
    case Dir::W: return SubZone::B;
    case Dir::N: return SubZone::C;
    case Dir::E: return SubZone::D;
  }
  return SubZone::A;
}

}  // namespace

Simulation::Simulation(const mission::MissionModel& m, SimConfig cfg)
    : m_(m), cfg_(std::move(cfg)), rng_(cfg_.seed) {
  if (!(m_.map() == cfg_.map))
    throw UsageError("simulation config map does not match the mission model");
  if (cfg_.n_drones == 0) throw UsageError("simulation needs at least one drone");
  if (!(cfg_.tick_period > 0)) throw UsageError("tick period must be positive");

  leg_ticks_ = ticks_of(cfg_.durations.inner);
  search_ticks_ = ticks_of(cfg_.durations.search);
  move_ticks_ = ticks_of(cfg_.durations.move);
  retreat_ticks_ = ticks_of(cfg_.durations.retreat);

  inner_unidentified_ = *m_.inner().state_of("U");
  for (SubZone x : mission::kSubZones)
    inner_state_[static_cast<int>(x)] = *m_.inner().state_of(mission::subzone_name(x));
  secondary_rest_ = m_.secondary_supervisor().initial();

  drones_.resize(cfg_.n_drones);
  for (std::size_t i = 0; i < drones_.size(); ++i) {
    DroneState& d = drones_[i];
    d.id = i;
    d.nav = m_.navigation().initial();
    d.expl = m_.exploration().initial();
    d.scan = m_.scanning().initial();
    // The patrol starts already identified and mid-mission at the base
    // sub-zone; the identification handshake only matters on re-entry.
    d.inner = inner_state_[static_cast<int>(cfg_.map.base_subzone)];
    d.nominal_sup = m_.nominal_supervisor().initial();
    d.secondary_sup = m_.secondary_supervisor().initial();
    d.switcher = m_.mode_switcher().initial();
    place(d);
  }
}

std::size_t Simulation::ticks_of(double seconds) const {
  auto t = static_cast<long long>(std::llround(seconds / cfg_.tick_period));
  return t < 1 ? 1 : static_cast<std::size_t>(t);
}

SubZone Simulation::swarm_subzone() const {
  auto base = static_cast<std::size_t>(cfg_.map.base_subzone);
  return mission::kSubZones[(base + tick_ / leg_ticks_) % 4];
}

std::pair<double, double> Simulation::cell_center(Zone z) const {
  return {cfg_.map.col_of(z) - 0.5, cfg_.map.row_of(z) - 0.5};
}

void Simulation::place(DroneState& d) {
  auto [cx, cy] = cell_center(cfg_.map.or_zone);
  auto [ox, oy] = subzone_offset(swarm_subzone());
  double ang = 2.0 * kPi * static_cast<double>(d.id) / static_cast<double>(drones_.size());
  d.x = cx + ox + kRingRadius * std::cos(ang);
  d.y = cy + oy + kRingRadius * std::sin(ang);
}

std::string Simulation::current_estimate() const {
  if (runtime_) return m_.composite().format_estimate(runtime_->estimate());
  return fallback_estimate_;
}

void Simulation::record(std::size_t id, const std::string& event) {
  const DroneState& d = drones_[id];
  if (lost_ && *lost_ == id && fault_injected_) ++rep_.lost_drone_events;
  if (!cfg_.record_trace) return;
  io::TraceRecord r;
  r.t = now();
  r.drone = id;
  r.event = event;
  r.mode = mode_name(d.mode);
  if (d.mode != Mode::NOM) r.estimate = current_estimate();
  rep_.trace.push_back(std::move(r));
}

void Simulation::push_mode(const char* name) {
  if (rep_.mode_trajectory.empty() || rep_.mode_trajectory.back() != name)
    rep_.mode_trajectory.emplace_back(name);
}

void Simulation::step_switcher(DroneState& d, const std::string& event) {
  const des::Automaton& sw = m_.mode_switcher();
  auto e = sw.alphabet().find(event);
  if (!e) throw ContractViolation("mode switcher does not know event '" + event + "'");
  auto t = sw.step(d.switcher, *e);
  if (!t)
    throw ContractViolation("mode event '" + event + "' is not enabled in the switcher");
  d.switcher = *t;
}

void Simulation::emit_inner(std::size_t id, const std::string& name) {
  DroneState& d = drones_[id];
  auto advance = [&](const des::Automaton& a, StateId& q, const char* what) {
    auto e = a.alphabet().find(name);
    if (!e) return;
    auto t = a.step(q, *e);
    if (!t)
      throw ContractViolation("patrol event '" + name + "' is not enabled in " + what);
    q = *t;
  };
  advance(m_.inner(), d.inner, "the sub-zone tracker");
  advance(m_.nominal_supervisor(), d.nominal_sup, "the nominal supervisor");
  // The secondary loop only supervises a drone holding for regroup; routing
  // the swarm's own searches through it would run it off its P/Q cycle.
  if (d.mode == Mode::REC2)
    advance(m_.secondary_supervisor(), d.secondary_sup, "the secondary supervisor");
}

void Simulation::nominal_emissions() {
  std::size_t phase = tick_ % leg_ticks_;
  bool leg_end = phase == leg_ticks_ - 2 || phase == leg_ticks_ - 1;
  bool boundary = phase == 0;
  if (!leg_end && !boundary) return;

  SubZone cur = swarm_subzone();  // at a boundary this is already the new leg
  std::string name;
  if (phase == leg_ticks_ - 2) name = m_.inner_search_name();
  else if (phase == leg_ticks_ - 1)
    name = mission::MissionModel::inner_observe_name(mission::MissionModel::next_subzone(cur));
  else name = mission::MissionModel::inner_move_name(cur);

  for (DroneState& d : drones_) {
    if (d.mode != Mode::NOM) continue;
    emit_inner(d.id, name);
    record(d.id, name);
    if (boundary) place(d);
  }
}

bool Simulation::plant_enables(const DroneState& d, EventId e) const {
  const std::string& name = m_.composite().alphabet()[e].name;
  auto ok = [&](const des::Automaton& a, StateId q) {
    auto le = a.alphabet().find(name);
    return !le || a.enables(q, *le);
  };
  return ok(m_.navigation(), d.nav) && ok(m_.exploration(), d.expl) &&
         ok(m_.scanning(), d.scan);
}

void Simulation::roll_loss(std::size_t id) {
  const DroneState& d = drones_[id];
  Zone z;
  if (!m_.state_is_zone(d.nav, &z)) return;
  if (!cfg_.map.unsafe_zones.count(z)) return;
  bool fire = false;
  switch (cfg_.loss.kind) {
    case LossPolicy::Never: break;
    case LossPolicy::Always: fire = true; break;
    case LossPolicy::Probability:
      fire = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < cfg_.loss.p;
      break;
  }
  if (fire) pending_.push_back({tick_ + 1, m_.loss_event()});
}

void Simulation::assert_sound(const DroneState& d) const {
  if (!runtime_) return;
  const des::StateEstimate& e = runtime_->estimate();
  if (!e.cells[0].test(d.nav) || !e.cells[1].test(d.expl) || !e.cells[2].test(d.scan))
    throw ContractViolation("estimate lost the true state of drone " +
                            std::to_string(d.id));
}

void Simulation::inject_fault(std::size_t drone, Zone true_zone,
                              const std::set<Zone>& estimate,
                              const rbts::RecoverySupervisor* prebuilt) {
  if (fault_injected_) throw UsageError("only one drone can be lost per trial");
  if (drone >= drones_.size()) throw UsageError("drone index out of range");
  if (!estimate.count(true_zone))
    throw ContractViolation("true zone " + std::to_string(true_zone) +
                            " is outside the fault estimate");

  des::StateEstimate raw = m_.zone_estimate(estimate);  // validates the zones
  std::optional<des::StateEstimate> y0 = rbts::initial_y(m_, raw);
  if (prebuilt && (!y0 || !(prebuilt->initial == *y0)))
    throw UsageError("prebuilt supervisor was synthesized for a different estimate");
  DroneState& d = drones_[drone];

  lost_ = drone;
  fault_injected_ = true;
  fault_tick_ = tick_;
  d.nav = m_.zone_state(true_zone);
  d.expl = m_.exploration().initial();
  d.scan = m_.scanning().initial();
  d.inner = inner_unidentified_;  // sub-zone knowledge is void until re-entry
  auto c = cell_center(true_zone);
  d.x = c.first;
  d.y = c.second;
  rep_.zones_visited.insert(true_zone);
  push_mode(mode_name(d.mode));

  const rbts::RecoverySupervisor* sup = nullptr;
  if (prebuilt) {
    sup = prebuilt;
  } else if (y0) {
    rbts::Rbts game = rbts::build_rbts(m_, *y0, cfg_.synth);
    if (game.recoverable) {
      own_sup_ = std::make_unique<rbts::RecoverySupervisor>(rbts::extract_supervisor(game));
      sup = own_sup_.get();
    }
  }
  fallback_estimate_ = m_.composite().format_estimate(y0 ? *y0 : raw);

  step_switcher(d, "desync");
  d.mode = Mode::REC1;
  push_mode(mode_name(d.mode));
  rep_.recoverable = sup != nullptr;
  if (sup) {
    sup_ = sup;
    runtime_.emplace(m_, *sup_);
  } else {
    // Unrecoverable (or outright unsafe) initial knowledge: the drone holds
    // position for a short grace window and the trial reports failure.
    d.stalled = true;
    rep_.stalled = true;
    stall_deadline_ = tick_ + ticks_of(2.0);
  }
  record(drone, "desync");
  if (runtime_) assert_sound(d);
  // A drone that desyncs while already over the operational region has
  // nothing to navigate: re-entry is immediate and it falls in wherever
  // the swarm currently patrols.
  if (runtime_ && runtime_->goal_reached()) enter_rec2(drone, swarm_subzone());
  roll_loss(drone);
}

void Simulation::emit_recovery(std::size_t id, EventId e) {
  DroneState& d = drones_[id];
  const std::string& name = m_.composite().alphabet()[e].name;
  auto advance = [&](const des::Automaton& a, StateId& q) {
    auto le = a.alphabet().find(name);
    if (!le) return;
    auto t = a.step(q, *le);
    if (!t) throw ContractViolation("plant rejected recovery event '" + name + "'");
    q = *t;
  };
  advance(m_.navigation(), d.nav);
  advance(m_.exploration(), d.expl);
  advance(m_.scanning(), d.scan);

  Dir dd;
  bool entered_zone = false;
  Zone z = 0;
  if (m_.is_move(e, &dd)) {
    last_move_ = dd;
    rep_.move_sequence.push_back(name);
    if (m_.state_is_zone(d.nav, &z)) {
      entered_zone = true;
      rep_.zones_visited.insert(z);
      auto c = cell_center(z);
      d.x = c.first;
      d.y = c.second;
    } else if (d.nav == m_.border_state()) {
      pending_.push_back({tick_ + 1, m_.reentry_event()});
      auto c = cell_center(cfg_.map.or_zone);
      d.x = c.first;
      d.y = c.second;
    } else {
      rep_.unsafe = true;  // flew into the no-fly area; should be unreachable
    }
  } else if (m_.is_search(e, &dd)) {
    // A search always ends in a border report for the heading searched; the
    // estimate update happens when that report arrives.
    pending_.push_back({tick_ + 1, m_.border_event(dd)});
  }

  if (runtime_) runtime_->step(e);

  if (e == m_.reentry_event()) {
    enter_rec2(id, entry_subzone(last_move_));
  } else {
    record(id, name);
  }

  if (d.mode == Mode::REC1) assert_sound(d);
  if (entered_zone) roll_loss(id);
}

// Primary recovery is over: flip to the secondary loop, announce re-entry
// and the identified entry sub-zone, and hold there for the regroup.
void Simulation::enter_rec2(std::size_t id, SubZone entry) {
  DroneState& d = drones_[id];
  step_switcher(d, m_.reentry_name());
  d.mode = Mode::REC2;
  push_mode(mode_name(d.mode));
  reentry_tick_ = tick_;
  rep_.primary_recovery_time = now() - static_cast<double>(fault_tick_) * cfg_.tick_period;
  rep_.zones_visited.insert(cfg_.map.or_zone);
  record(id, m_.reentry_name());
  std::string g = mission::MissionModel::identify_name(entry);
  emit_inner(id, g);
  record(id, g);
  auto [cx, cy] = cell_center(cfg_.map.or_zone);
  auto [ox, oy] = subzone_offset(entry);
  d.x = cx + ox;
  d.y = cy + oy;
}

void Simulation::start_next_action() {
  DroneState& d = drones_[*lost_];
  if (d.mode == Mode::REC1) {
    if (!runtime_ || runtime_->goal_reached()) return;
    const des::ControlDecision& dec = runtime_->decision();
    EventId pick = kNoEvent;
    std::size_t dur = 0;
    // Plant policy: act on the first authorized, currently flyable action,
    // preferring progress (moves) over retreat over more searching.
    for (Dir dd : mission::kDirs) {
      EventId e = m_.move_event(dd);
      if (dec.enabled.test(e) && plant_enables(d, e)) {
        pick = e;
        dur = move_ticks_;
        break;
      }
    }
    if (pick == kNoEvent) {
      EventId e = m_.return_event();
      if (dec.enabled.test(e) && plant_enables(d, e)) {
        pick = e;
        dur = retreat_ticks_;
      }
    }
    if (pick == kNoEvent) {
      for (Dir dd : mission::kDirs) {
        EventId e = m_.search_event(dd);
        if (dec.enabled.test(e) && plant_enables(d, e)) {
          pick = e;
          dur = search_ticks_;
          break;
        }
      }
    }
    if (pick == kNoEvent)
      throw ContractViolation("recovery stalled: no authorized action is flyable");
    action_.active = true;
    action_.inner_layer = false;
    action_.event = pick;
    action_.name.clear();
    action_.started_at = tick_;
    action_.completes_at = tick_ + dur;
    action_.x0 = d.x;
    action_.y0 = d.y;
  } else if (d.mode == Mode::REC2) {
    // Hold over the region: search, retreat, search, ... until the swarm's
    // patrol leg lines up with this drone's sub-zone.
    bool rested = d.secondary_sup == secondary_rest_;
    action_.active = true;
    action_.inner_layer = true;
    action_.event = kNoEvent;
    action_.name = rested ? m_.inner_search_name() : "r";
    action_.started_at = tick_;
    action_.completes_at = tick_ + (rested ? search_ticks_ : retreat_ticks_);
    action_.x0 = d.x;
    action_.y0 = d.y;
  }
}

bool Simulation::regroup_check(std::size_t drone) const {
  if (drone >= drones_.size()) throw UsageError("drone index out of range");
  const DroneState& d = drones_[drone];
  if (d.mode != Mode::REC2)
    throw UsageError("regroup_check: drone is not in secondary recovery");
  for (SubZone x : mission::kSubZones)
    if (d.inner == inner_state_[static_cast<int>(x)]) return x == swarm_subzone();
  return false;
}

void Simulation::complete_action() {
  action_.active = false;
  std::size_t id = *lost_;
  if (!action_.inner_layer) {
    emit_recovery(id, action_.event);
    return;
  }
  DroneState& d = drones_[id];
  emit_inner(id, action_.name);
  record(id, action_.name);
  if (action_.name == m_.inner_search_name() && regroup_check(id)) {
    step_switcher(d, "regroup");
    d.mode = Mode::NOM;
    push_mode(mode_name(d.mode));
    rep_.secondary_recovery_time =
        now() - static_cast<double>(reentry_tick_) * cfg_.tick_period;
    rep_.completed = true;
    record(id, "regroup");
    place(d);
    // Fly one more full patrol leg so the trace shows the nominal loop
    // running again with the drone back in formation.
    finish_at_ = tick_ + leg_ticks_;
  }
}

void Simulation::tick() {
  ++tick_;
  nominal_emissions();

  while (!pending_.empty() && pending_.front().at <= tick_) {
    Pending p = pending_.front();
    pending_.pop_front();
    if (p.event == m_.loss_event()) {
      // The silent loss: the plant moves, the observer cannot know.
      DroneState& d = drones_[*lost_];
      auto le = m_.navigation().alphabet().find("l");
      auto t = m_.navigation().step(d.nav, *le);
      if (!t) throw ContractViolation("loss fired outside an unsafe zone");
      d.nav = *t;
      rep_.unsafe = true;
      record(*lost_, "l");
    } else {
      emit_recovery(*lost_, p.event);
    }
  }
  if (rep_.unsafe) return;

  if (lost_ && !drones_[*lost_].stalled) {
    if (action_.active && action_.completes_at == tick_) complete_action();
    if (!action_.active && pending_.empty() && !rep_.unsafe) start_next_action();

    DroneState& d = drones_[*lost_];
    // Cosmetic flight path: drift from the cell center toward the exit
    // border while a move is in progress; the jump happens on completion.
    if (action_.active && !action_.inner_layer) {
      Dir dd;
      if (m_.is_move(action_.event, &dd)) {
        double span = static_cast<double>(action_.completes_at - action_.started_at);
        double prog = span > 0 ? static_cast<double>(tick_ - action_.started_at) / span : 1.0;
        auto [ux, uy] = dir_unit(dd);
        d.x = action_.x0 + 0.5 * prog * ux;
        d.y = action_.y0 + 0.5 * prog * uy;
      }
    }
    if (d.mode == Mode::REC1 && runtime_ && !runtime_->goal_reached()) assert_sound(d);
  }
}

bool Simulation::done() const {
  if (rep_.unsafe) return true;
  if (finish_at_ && tick_ >= *finish_at_) return true;
  if (stall_deadline_ && tick_ >= *stall_deadline_) return true;
  return tick_ >= cfg_.max_ticks;
}

TrialReport Simulation::report() const {
  TrialReport r = rep_;
  r.ticks = tick_;
  r.timeout = !r.completed && !r.unsafe && !r.stalled && tick_ >= cfg_.max_ticks;
  return r;
}

TrialReport run_trial(const mission::MissionModel& m, const SimConfig& cfg,
                      const rbts::RecoverySupervisor* prebuilt) {
  Simulation sim(m, cfg);
  sim.inject_fault(cfg.trial.drone, cfg.trial.start, cfg.trial.estimate, prebuilt);
  while (!sim.done()) sim.tick();
  return sim.report();
}

TrialReport run_trial(const SimConfig& cfg) {
  mission::MissionModel m = mission::MissionModel::build(cfg.map);
  return run_trial(m, cfg, nullptr);
}

}  // namespace swarm::sim
