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

#ifndef SWARM_DES_AUTOMATON_HPP
#define SWARM_DES_AUTOMATON_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarm/des/event.hpp"
#include "swarm/des/state_set.hpp"

namespace swarm::des {

class AutomatonBuilder;

// Deterministic finite automaton with marked states (task completion) and
// unsafe states (to be avoided at all cost).  Immutable after construction;
// use AutomatonBuilder to assemble one.
class Automaton {
public:
  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t n_states() const { return state_names_.size(); }
  StateId initial() const { return initial_; }
  const StateSet& marked() const { return marked_; }
  const StateSet& unsafe() const { return unsafe_; }

  const std::string& state_name(StateId q) const { return state_names_.at(q); }

  std::optional<StateId> state_of(std::string_view name) const {
    for (StateId q = 0; q < state_names_.size(); ++q)
      if (state_names_[q] == name) return q;
    return std::nullopt;
  }

  // Partial transition function: absent when no transition is defined.
  std::optional<StateId> step(StateId q, EventId e) const {
    if (q >= n_states()) throw UsageError("step: state id out of range");
    if (e >= alphabet_.size()) throw UsageError("step: event id out of range");
    std::int32_t t = delta_[q * alphabet_.size() + e];
    if (t < 0) return std::nullopt;
    return static_cast<StateId>(t);
  }

  bool enables(StateId q, EventId e) const {
    return delta_[q * alphabet_.size() + e] >= 0;
  }

  std::size_t n_transitions() const {
    std::size_t n = 0;
    for (auto t : delta_)
      if (t >= 0) ++n;
    return n;
  }

  bool operator==(const Automaton& o) const {
    return name_ == o.name_ && state_names_ == o.state_names_ &&
           alphabet_ == o.alphabet_ && delta_ == o.delta_ &&
           initial_ == o.initial_ && marked_ == o.marked_ && unsafe_ == o.unsafe_;
  }

private:
  friend class AutomatonBuilder;
  Automaton() = default;

  std::string name_;
  std::vector<std::string> state_names_;
  Alphabet alphabet_;
  std::vector<std::int32_t> delta_;  // dense [state * |alphabet| + event], -1 = undefined
  StateId initial_ = 0;
  StateSet marked_;
  StateSet unsafe_;
};

class AutomatonBuilder {
public:
  AutomatonBuilder(std::string name, Alphabet alphabet);

  StateId add_state(std::string name, bool marked = false, bool unsafe = false);
  void mark(StateId q);
  void set_initial(StateId q);
  // Throws ModelError if a conflicting transition for (from, e) exists.
  void add_transition(StateId from, EventId e, StateId to);

  const Alphabet& alphabet() const { return a_.alphabet_; }

  // Validates invariants (initial declared, no marked unsafe state) and
  // yields the immutable automaton.
  Automaton build();

private:
  Automaton a_;
  bool have_initial_ = false;
  bool built_ = false;
};

// Synchronous product of a list of components.  Events shared by name must
// carry identical attributes everywhere (ModelError otherwise); a shared
// event moves all components that know it, private events interleave.  The
// result is trimmed to accessible tuples; a tuple is marked iff every
// coordinate is marked and unsafe iff any coordinate is unsafe.
Automaton sync_product(std::span<const Automaton> components, const std::string& name = "product");

struct TrimResult {
  // Empty when the initial state cannot reach any marked state (the trimmed
  // language is empty and cannot be represented as an automaton here).
  std::optional<Automaton> automaton;
  // True iff no accessible state was removed, i.e. the input was already
  // nonblocking.
  bool nonblocking = false;
};

// Restricts an automaton to its accessible and coaccessible part.
TrimResult trim_nonblocking(const Automaton& a);

}  // namespace swarm::des

#endif
