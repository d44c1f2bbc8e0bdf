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

#ifndef SWARM_RBTS_SUPERVISOR_HPP
#define SWARM_RBTS_SUPERVISOR_HPP

#include <optional>
#include <unordered_map>

#include "swarm/rbts/game.hpp"

namespace swarm::rbts {

// The reactive recovery policy: which events to enable at each estimate the
// policy can reach.  Closed (every non-goal successor is in the domain) and
// acyclic (no estimate repeats along any play), so recovery terminates.
struct RecoverySupervisor {
  des::StateEstimate initial;
  std::unordered_map<des::StateEstimate, des::ControlDecision, des::StateEstimateHash>
      strategy;

  const des::ControlDecision& decision_at(const des::StateEstimate& e) const;

  bool operator==(const RecoverySupervisor&) const = default;
};

// Reads the winning strategy out of a solved game: from the initial node,
// follow each node's chosen winning decision and keep every non-goal
// estimate reachable that way.  UsageError if the game was lost.
RecoverySupervisor extract_supervisor(const Rbts& t);

// An observation arrived that the current decision cannot explain; the
// supervisor and the plant no longer agree on where the drone might be.
struct DesyncError : des::Error {
  using Error::Error;
};

// Steps a supervisor against a live observation stream.
class SupervisorRuntime {
public:
  SupervisorRuntime(const mission::MissionModel& m, const RecoverySupervisor& sup);

  // The decision currently in force (meaningless after goal_reached()).
  const des::ControlDecision& decision() const;
  const des::StateEstimate& estimate() const { return estimate_; }
  bool goal_reached() const { return goal_; }

  // Advances the estimate on an observed event and returns the next
  // decision, or nothing once the goal estimate is reached.  Throws
  // DesyncError on an observation the current decision rules out.
  std::optional<des::ControlDecision> step(des::EventId observed);

private:
  const mission::MissionModel& m_;
  const RecoverySupervisor& sup_;
  des::StateEstimate estimate_;
  bool goal_ = false;
};

}  // namespace swarm::rbts

#endif
