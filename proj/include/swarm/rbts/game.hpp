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

#ifndef SWARM_RBTS_GAME_HPP
#define SWARM_RBTS_GAME_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "swarm/des/composite.hpp"
#include "swarm/mission/models.hpp"

namespace swarm::rbts {

enum class Exploration : std::uint8_t { DepthFirst, BreadthFirst };

enum class DecisionOrder : std::uint8_t {
  PreferMove,      // singleton moves, then {r}, then singleton searches, then by size
  Minimal,         // fewest enabled controllables first
  Randomized,      // seeded shuffle, reproducible per estimate
  MaxPermissive,   // most enabled controllables first
};

struct SynthConfig {
  Exploration exploration = Exploration::DepthFirst;
  DecisionOrder decision_order = DecisionOrder::PreferMove;
  std::uint64_t seed = 0;
  std::size_t node_budget = 1'000'000;
};

// Synthesis outgrew its node budget.  Deliberately not a verdict: callers
// must treat this as "don't know", never as "unrecoverable".
struct BudgetExceeded : des::Error {
  using Error::Error;
};

enum class ZStatus : std::uint8_t {
  Winning,      // every observation successor winning
  Losing,       // some successor losing or revisiting the search path
  PrunedUnsafe, // closure or some successor estimate touches an unsafe state
  PrunedStall,  // admits no feasible observable event
};

struct ObsEdge {
  des::EventId event;
  std::size_t y;  // successor Y index
};

// A (estimate, decision) pair: the environment's turn.
struct ZNode {
  std::size_t y;  // owning Y index
  des::ControlDecision decision;
  ZStatus status = ZStatus::Losing;
  std::vector<ObsEdge> successors;  // empty for pruned decisions
};

// An estimate: the supervisor's turn.
struct YNode {
  des::StateEstimate estimate;
  bool goal = false;
  bool winning = false;
  std::vector<std::size_t> z;               // explored decisions, in tried order
  std::optional<std::size_t> strategy_z;    // the winning decision, if any
};

// The explored game graph.  Kept in full -- including pruned and losing
// branches -- so exports can show *why* a decision was discarded.
struct Rbts {
  std::vector<YNode> y_nodes;
  std::vector<ZNode> z_nodes;
  std::size_t initial = 0;
  bool recoverable = false;

  std::optional<std::size_t> find_y(const des::StateEstimate& e) const;
};

// Closure of a raw estimate under the always-enabled unobservable events;
// empty when the closure already touches an unsafe state (no supervisor
// can help a drone that may already be lost).
std::optional<des::StateEstimate> initial_y(const mission::MissionModel& m,
                                            const des::StateEstimate& raw);

// Goal test: the navigation cell has collapsed to exactly the operational
// region.
bool is_goal(const mission::MissionModel& m, const des::StateEstimate& e);

// Every admissible control decision at the estimate, ordered per config:
// Sigma_uc plus each nonempty subset of the feasible controllables, or
// Sigma_uc alone when nothing controllable is feasible.
std::vector<des::ControlDecision> candidate_decisions(const mission::MissionModel& m,
                                                      const des::StateEstimate& y,
                                                      const SynthConfig& cfg);

// Plays the safety-reachability game from y0 (which must be closed and
// safe, e.g. from initial_y).  Depth-first exploration prunes unsafe and
// stalling decisions, treats a successor equal to an estimate on the
// current search path as losing for that decision, and stops at the first
// winning decision per estimate.  Breadth-first builds the full pruned
// graph and solves it by backward induction; verdicts agree between the
// two modes, only the explored graph and extracted strategy may differ.
// Throws BudgetExceeded when the node budget runs out.
Rbts build_rbts(const mission::MissionModel& m, const des::StateEstimate& y0,
                const SynthConfig& cfg);

}  // namespace swarm::rbts

#endif
