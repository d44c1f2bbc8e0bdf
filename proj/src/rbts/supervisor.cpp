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

#include "swarm/rbts/supervisor.hpp"

#include <deque>

namespace swarm::rbts {

const des::ControlDecision& RecoverySupervisor::decision_at(
    const des::StateEstimate& e) const {
  auto it = strategy.find(e);
  if (it == strategy.end())
    throw des::UsageError("supervisor has no decision for this estimate");
  return it->second;
}

RecoverySupervisor extract_supervisor(const Rbts& t) {
  if (!t.recoverable)
    throw des::UsageError("extract_supervisor: initial node is not winning");
  RecoverySupervisor sup;
  sup.initial = t.y_nodes[t.initial].estimate;

  std::deque<std::size_t> work{t.initial};
  std::vector<char> seen(t.y_nodes.size(), 0);
  while (!work.empty()) {
    std::size_t yi = work.front();
    work.pop_front();
    if (seen[yi]) continue;
    seen[yi] = 1;
    const YNode& y = t.y_nodes[yi];
    if (y.goal) continue;
    if (!y.winning || !y.strategy_z)
      throw des::ContractViolation("strategy reaches a node with no winning decision");
    const ZNode& z = t.z_nodes[*y.strategy_z];
    sup.strategy.emplace(y.estimate, z.decision);
    for (const ObsEdge& s : z.successors) work.push_back(s.y);
  }
  return sup;
}

SupervisorRuntime::SupervisorRuntime(const mission::MissionModel& m,
                                     const RecoverySupervisor& sup)
    : m_(m), sup_(sup), estimate_(sup.initial) {
  goal_ = is_goal(m_, estimate_);
}

const des::ControlDecision& SupervisorRuntime::decision() const {
  if (goal_) throw des::UsageError("decision() after goal reached");
  return sup_.decision_at(estimate_);
}

std::optional<des::ControlDecision> SupervisorRuntime::step(des::EventId observed) {
  if (goal_) throw des::UsageError("step() after goal reached");
  const des::CompositeModel& c = m_.composite();
  const des::ControlDecision& d = decision();
  if (observed >= c.alphabet().size() || !c.alphabet()[observed].observable ||
      !d.enabled.test(observed))
    throw DesyncError("observation '" +
                      (observed < c.alphabet().size() ? c.alphabet()[observed].name
                                                      : std::to_string(observed)) +
                      "' is not enabled by the current decision");
  des::StateEstimate next;
  try {
    next = c.observe(estimate_, d, observed);
  } catch (const des::ContractViolation&) {
    throw DesyncError("observation '" + c.alphabet()[observed].name +
                      "' is infeasible at the current estimate");
  }
  estimate_ = std::move(next);
  if (is_goal(m_, estimate_)) {
    goal_ = true;
    return std::nullopt;
  }
  auto it = sup_.strategy.find(estimate_);
  if (it == sup_.strategy.end())
    throw DesyncError("estimate left the supervisor's domain");
  return it->second;
}

}  // namespace swarm::rbts
