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

#include "swarm/rbts/oracle.hpp"

#include <deque>
#include <unordered_map>
#include <vector>

namespace swarm::rbts {

using des::ControlDecision;
using des::EventId;
using des::StateEstimate;

OracleVerdict oracle_recoverable(const mission::MissionModel& m,
                                 const StateEstimate& raw, std::size_t budget) {
  const des::CompositeModel& c = m.composite();
  const des::StateId or_state = m.zone_state(m.map().or_zone);
  auto goal = [&](const StateEstimate& e) {
    return e.cells[0].count() == 1 && e.cells[0].test(or_state);
  };

  StateEstimate start = c.unobservable_reach(raw, c.make_decision({}));
  if (c.contains_unsafe(start)) return OracleVerdict::Unrecoverable;

  // Forward phase: every estimate reachable through surviving decisions.
  // A decision survives when its closure and all of its observation
  // successors stay safe and at least one observation is feasible.
  std::unordered_map<StateEstimate, std::size_t, des::StateEstimateHash> index;
  std::vector<StateEstimate> estimates;
  std::vector<std::vector<std::vector<std::size_t>>> options;  // [y][decision] -> succs
  std::deque<std::size_t> work;

  auto intern = [&](const StateEstimate& e) -> std::size_t {
    auto it = index.find(e);
    if (it != index.end()) return it->second;
    std::size_t i = estimates.size();
    index.emplace(e, i);
    estimates.push_back(e);
    options.emplace_back();
    work.push_back(i);
    return i;
  };
  intern(start);

  std::size_t spent = 0;
  while (!work.empty()) {
    std::size_t yi = work.front();
    work.pop_front();
    if (goal(estimates[yi])) continue;

    std::vector<EventId> feas = c.feasible_controllable(estimates[yi]);
    std::vector<ControlDecision> decisions;
    if (feas.empty()) {
      decisions.push_back(c.make_decision({}));
    } else {
      if (feas.size() > 20) return OracleVerdict::Inconclusive;
      for (std::uint32_t mask = 1; mask < (1u << feas.size()); ++mask) {
        std::vector<EventId> gamma;
        for (std::size_t i = 0; i < feas.size(); ++i)
          if (mask & (1u << i)) gamma.push_back(feas[i]);
        decisions.push_back(c.make_decision(gamma));
      }
    }

    for (const ControlDecision& d : decisions) {
      if (++spent > budget) return OracleVerdict::Inconclusive;
      StateEstimate closed = c.unobservable_reach(estimates[yi], d);
      if (c.contains_unsafe(closed)) continue;
      std::vector<EventId> obs = c.feasible_observable(closed, d);
      if (obs.empty()) continue;

      std::vector<StateEstimate> nexts;
      bool safe = true;
      for (EventId e : obs) {
        StateEstimate next = c.observe(closed, d, e);
        if (c.contains_unsafe(next)) {
          safe = false;
          break;
        }
        nexts.push_back(std::move(next));
      }
      if (!safe) continue;

      std::vector<std::size_t> succ_ids;
      for (StateEstimate& n : nexts) {
        if (++spent > budget) return OracleVerdict::Inconclusive;
        succ_ids.push_back(intern(n));
      }
      options[yi].push_back(std::move(succ_ids));
    }
  }

  // Backward induction to the least fixpoint of "goal, or some decision
  // whose successors all win".
  std::vector<char> winning(estimates.size(), 0);
  for (std::size_t i = 0; i < estimates.size(); ++i)
    if (goal(estimates[i])) winning[i] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      if (winning[i]) continue;
      for (const std::vector<std::size_t>& succs : options[i]) {
        bool all = true;
        for (std::size_t s : succs)
          if (!winning[s]) {
            all = false;
            break;
          }
        if (all) {
          winning[i] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  return winning[0] ? OracleVerdict::Recoverable : OracleVerdict::Unrecoverable;
}

}  // namespace swarm::rbts
