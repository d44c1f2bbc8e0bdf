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

#include "swarm/des/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace swarm::des {

AutomatonBuilder::AutomatonBuilder(std::string name, Alphabet alphabet) {
  a_.name_ = std::move(name);
  a_.alphabet_ = std::move(alphabet);
}

StateId AutomatonBuilder::add_state(std::string name, bool marked, bool unsafe) {
  if (marked && unsafe)
    throw ModelError("state '" + name + "' cannot be both marked and unsafe");
  if (a_.state_of(name))
    throw ModelError("duplicate state name '" + name + "'");
  StateId q = static_cast<StateId>(a_.state_names_.size());
  a_.state_names_.push_back(std::move(name));
  a_.delta_.resize(a_.state_names_.size() * a_.alphabet_.size(), -1);
  StateSet m(a_.state_names_.size()), u(a_.state_names_.size());
  a_.marked_.for_each([&](std::size_t i) { m.set(i); });
  a_.unsafe_.for_each([&](std::size_t i) { u.set(i); });
  if (marked) m.set(q);
  if (unsafe) u.set(q);
  a_.marked_ = m;
  a_.unsafe_ = u;
  return q;
}

void AutomatonBuilder::mark(StateId q) {
  if (q >= a_.n_states()) throw UsageError("mark: state id out of range");
  if (a_.unsafe_.test(q))
    throw ModelError("state '" + a_.state_name(q) + "' cannot be both marked and unsafe");
  a_.marked_.set(q);
}

void AutomatonBuilder::set_initial(StateId q) {
  if (q >= a_.n_states()) throw UsageError("set_initial: state id out of range");
  a_.initial_ = q;
  have_initial_ = true;
}

void AutomatonBuilder::add_transition(StateId from, EventId e, StateId to) {
  if (from >= a_.n_states() || to >= a_.n_states())
    throw UsageError("add_transition: state id out of range");
  if (e >= a_.alphabet_.size())
    throw UsageError("add_transition: event id out of range");
  std::int32_t& slot = a_.delta_[from * a_.alphabet_.size() + e];
  if (slot >= 0 && slot != static_cast<std::int32_t>(to))
    throw ModelError("nondeterministic transition on '" + a_.alphabet_[e].name +
                     "' from state '" + a_.state_name(from) + "'");
  slot = static_cast<std::int32_t>(to);
}

Automaton AutomatonBuilder::build() {
  if (built_) throw UsageError("AutomatonBuilder::build called twice");
  if (a_.n_states() == 0) throw ModelError("automaton '" + a_.name_ + "' has no states");
  if (!have_initial_) throw ModelError("automaton '" + a_.name_ + "' has no initial state");
  built_ = true;
  return std::move(a_);
}

namespace {

Alphabet merged_alphabet(std::span<const Automaton> components) {
  Alphabet merged;
  for (const Automaton& c : components)
    for (EventId e = 0; e < c.alphabet().size(); ++e)
      merged.add(c.alphabet()[e]);  // attribute clash -> ModelError
  return merged;
}

std::string tuple_name(std::span<const Automaton> components, std::span<const StateId> q) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) os << ',';
    os << components[i].state_name(q[i]);
  }
  os << ')';
  return os.str();
}

}  // namespace

Automaton sync_product(std::span<const Automaton> components, const std::string& name) {
  if (components.empty()) throw UsageError("sync_product of zero components");
  Alphabet merged = merged_alphabet(components);

  // Per component: merged event id -> local event id (or -1).
  std::vector<std::vector<std::int32_t>> local(components.size(),
                                               std::vector<std::int32_t>(merged.size(), -1));
  for (std::size_t i = 0; i < components.size(); ++i)
    for (EventId e = 0; e < components[i].alphabet().size(); ++e)
      local[i][*merged.find(components[i].alphabet()[e].name)] = static_cast<std::int32_t>(e);

  AutomatonBuilder b(name, merged);

  std::map<std::vector<StateId>, StateId> index;
  std::deque<std::vector<StateId>> frontier;
  auto intern = [&](const std::vector<StateId>& tup) {
    auto it = index.find(tup);
    if (it != index.end()) return it->second;
    bool marked = true, unsafe = false;
    for (std::size_t i = 0; i < components.size(); ++i) {
      marked = marked && components[i].marked().test(tup[i]);
      unsafe = unsafe || components[i].unsafe().test(tup[i]);
    }
    StateId q = b.add_state(tuple_name(components, tup), marked && !unsafe, unsafe);
    index.emplace(tup, q);
    frontier.push_back(tup);
    return q;
  };

  std::vector<StateId> init;
  for (const Automaton& c : components) init.push_back(c.initial());
  b.set_initial(intern(init));

  while (!frontier.empty()) {
    std::vector<StateId> tup = frontier.front();
    frontier.pop_front();
    StateId from = index[tup];
    for (EventId e = 0; e < merged.size(); ++e) {
      std::vector<StateId> succ = tup;
      bool enabled = true;
      for (std::size_t i = 0; i < components.size() && enabled; ++i) {
        std::int32_t le = local[i][e];
        if (le < 0) continue;  // private elsewhere: this component stays put
        auto t = components[i].step(tup[i], static_cast<EventId>(le));
        if (!t)
          enabled = false;
        else
          succ[i] = *t;
      }
      if (enabled) b.add_transition(from, e, intern(succ));
    }
  }
  return b.build();
}

TrimResult trim_nonblocking(const Automaton& a) {
  std::size_t n = a.n_states();

  // Accessible part (forward reach from initial).
  StateSet acc(n);
  {
    std::deque<StateId> q{a.initial()};
    acc.set(a.initial());
    while (!q.empty()) {
      StateId s = q.front();
      q.pop_front();
      for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (auto t = a.step(s, e); t && !acc.test(*t)) {
          acc.set(*t);
          q.push_back(*t);
        }
    }
  }

  // Coaccessible part (backward reach from marked states).
  StateSet coacc(n);
  {
    std::vector<std::vector<StateId>> pred(n);
    for (StateId s = 0; s < n; ++s)
      for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (auto t = a.step(s, e)) pred[*t].push_back(s);
    std::deque<StateId> q;
    a.marked().for_each([&](std::size_t s) {
      coacc.set(s);
      q.push_back(static_cast<StateId>(s));
    });
    while (!q.empty()) {
      StateId s = q.front();
      q.pop_front();
      for (StateId p : pred[s])
        if (!coacc.test(p)) {
          coacc.set(p);
          q.push_back(p);
        }
    }
  }

  bool nonblocking = true;
  StateSet keep(n);
  for (StateId s = 0; s < n; ++s) {
    bool k = acc.test(s) && coacc.test(s);
    if (acc.test(s) && !k) nonblocking = false;
    if (k) keep.set(s);
  }

  if (!keep.test(a.initial())) return TrimResult{std::nullopt, nonblocking};

  AutomatonBuilder b(a.name(), a.alphabet());
  std::vector<std::int32_t> remap(n, -1);
  keep.for_each([&](std::size_t s) {
    remap[s] = static_cast<std::int32_t>(
        b.add_state(a.state_name(static_cast<StateId>(s)),
                    a.marked().test(s), a.unsafe().test(s)));
  });
  b.set_initial(static_cast<StateId>(remap[a.initial()]));
  keep.for_each([&](std::size_t s) {
    for (EventId e = 0; e < a.alphabet().size(); ++e)
      if (auto t = a.step(static_cast<StateId>(s), e); t && keep.test(*t))
        b.add_transition(static_cast<StateId>(remap[s]), e,
                         static_cast<StateId>(remap[*t]));
  });
  return TrimResult{b.build(), nonblocking};
}

}  // namespace swarm::des
