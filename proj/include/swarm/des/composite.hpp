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

#ifndef SWARM_DES_COMPOSITE_HPP
#define SWARM_DES_COMPOSITE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "swarm/des/automaton.hpp"

namespace swarm::des {

// Knowledge of where a partially observed composite system can be: one
// state subset per component, interpreted as the Cartesian product of the
// cells.  The tuple order is the composite's component order.
struct StateEstimate {
  std::vector<StateSet> cells;

  bool operator==(const StateEstimate&) const = default;

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const StateSet& c : cells) h = h * 1099511628211ull ^ c.hash();
    return h;
  }
};

struct StateEstimateHash {
  std::size_t operator()(const StateEstimate& s) const { return s.hash(); }
};

// The set of events a supervisor currently enables.  Always contains every
// uncontrollable event of the model's global alphabet (those cannot be
// disabled); the controllable part is the supervisor's actual choice.
struct ControlDecision {
  StateSet enabled;  // over global event ids

  bool operator==(const ControlDecision&) const = default;
};

// A multi-component model under one merged ("global") alphabet, together
// with the partial-observation estimate calculus used by the recovery
// game: feasibility of events under an estimate, unobservable closure, and
// the estimate update on an observation.
class CompositeModel {
public:
  explicit CompositeModel(std::vector<Automaton> components);

  const Alphabet& alphabet() const { return global_; }
  std::size_t n_components() const { return components_.size(); }
  const Automaton& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Automaton>& components() const { return components_; }

  // Global event ids, ascending.
  const std::vector<EventId>& controllable_events() const { return controllable_; }
  const std::vector<EventId>& uncontrollable_events() const { return uncontrollable_; }

  bool knows(std::size_t component, EventId global) const {
    return local_[component][global] >= 0;
  }

  // Estimate with every cell the singleton initial state of its component.
  StateEstimate initial_estimate() const;

  // Estimate with the given cell for component 0 and singleton initials for
  // the rest -- the common "we know the logical phase but not the location"
  // shape used by recovery.
  StateEstimate estimate_with_cell0(const StateSet& cell0) const;

  bool well_formed(const StateEstimate& s) const;
  bool contains_unsafe(const StateEstimate& s) const;

  // Sigma_uc plus the given controllable events.
  ControlDecision make_decision(std::span<const EventId> controllables) const;
  // The controllable part of a decision, ascending.
  std::vector<EventId> decision_controllables(const ControlDecision& d) const;

  // Controllable events e such that every component knowing e has at least
  // one cell state enabling it.
  std::vector<EventId> feasible_controllable(const StateEstimate& s) const;

  // Observable events of d.enabled feasible at s (same per-component rule).
  std::vector<EventId> feasible_observable(const StateEstimate& s, const ControlDecision& d) const;

  // Per-component closure of each cell under the unobservable events of d.
  StateEstimate unobservable_reach(const StateEstimate& s, const ControlDecision& d) const;

  // Estimate update on observing e: per-component image for components
  // knowing e (others keep their cell), then unobservable closure.
  // Throws ContractViolation if e is not feasible at s under d.
  StateEstimate observe(const StateEstimate& s, const ControlDecision& d, EventId e) const;

  // "({1,2},{R},{I})" -- cells in component order, states in index order.
  std::string format_estimate(const StateEstimate& s) const;
  StateEstimate parse_estimate(std::string_view text) const;

  std::string format_decision(const ControlDecision& d) const;

private:
  bool event_feasible(const StateEstimate& s, EventId e) const;

  std::vector<Automaton> components_;
  Alphabet global_;
  std::vector<std::vector<std::int32_t>> local_;  // [component][global] -> local or -1
  std::vector<EventId> controllable_;
  std::vector<EventId> uncontrollable_;
  std::vector<EventId> unobservable_;
};

}  // namespace swarm::des

#endif
