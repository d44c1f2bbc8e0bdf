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

#include "swarm/des/composite.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace swarm::des {

CompositeModel::CompositeModel(std::vector<Automaton> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw UsageError("composite of zero components");
  for (const Automaton& c : components_)
    for (EventId e = 0; e < c.alphabet().size(); ++e)
      global_.add(c.alphabet()[e]);

  local_.assign(components_.size(), std::vector<std::int32_t>(global_.size(), -1));
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (EventId e = 0; e < components_[i].alphabet().size(); ++e)
      local_[i][*global_.find(components_[i].alphabet()[e].name)] =
          static_cast<std::int32_t>(e);

  for (EventId e = 0; e < global_.size(); ++e) {
    if (global_[e].controllable)
      controllable_.push_back(e);
    else
      uncontrollable_.push_back(e);
    if (!global_[e].observable) unobservable_.push_back(e);
  }
}

StateEstimate CompositeModel::initial_estimate() const {
  StateEstimate s;
  for (const Automaton& c : components_) {
    StateSet cell(c.n_states());
    cell.set(c.initial());
    s.cells.push_back(cell);
  }
  return s;
}

StateEstimate CompositeModel::estimate_with_cell0(const StateSet& cell0) const {
  StateEstimate s = initial_estimate();
  if (cell0.universe() != components_[0].n_states())
    throw UsageError("estimate cell does not match first component");
  if (cell0.empty()) throw UsageError("estimate cell must be nonempty");
  s.cells[0] = cell0;
  return s;
}

bool CompositeModel::well_formed(const StateEstimate& s) const {
  if (s.cells.size() != components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (s.cells[i].universe() != components_[i].n_states() || s.cells[i].empty())
      return false;
  return true;
}

bool CompositeModel::contains_unsafe(const StateEstimate& s) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (s.cells[i].intersects(components_[i].unsafe())) return true;
  return false;
}

ControlDecision CompositeModel::make_decision(std::span<const EventId> controllables) const {
  ControlDecision d{StateSet(global_.size())};
  for (EventId e : uncontrollable_) d.enabled.set(e);
  for (EventId e : controllables) {
    if (e >= global_.size()) throw UsageError("make_decision: event id out of range");
    if (!global_[e].controllable)
      throw UsageError("make_decision: '" + global_[e].name + "' is not controllable");
    d.enabled.set(e);
  }
  return d;
}

std::vector<EventId> CompositeModel::decision_controllables(const ControlDecision& d) const {
  std::vector<EventId> out;
  d.enabled.for_each([&](std::size_t e) {
    if (global_[static_cast<EventId>(e)].controllable)
      out.push_back(static_cast<EventId>(e));
  });
  return out;
}

bool CompositeModel::event_feasible(const StateEstimate& s, EventId e) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::int32_t le = local_[i][e];
    if (le < 0) continue;
    bool witness = false;
    s.cells[i].for_each([&](std::size_t q) {
      witness = witness ||
                components_[i].enables(static_cast<StateId>(q), static_cast<EventId>(le));
    });
    if (!witness) return false;
  }
  return true;
}

std::vector<EventId> CompositeModel::feasible_controllable(const StateEstimate& s) const {
  if (!well_formed(s)) throw UsageError("feasible_controllable: malformed estimate");
  std::vector<EventId> out;
  for (EventId e : controllable_)
    if (event_feasible(s, e)) out.push_back(e);
  return out;
}

std::vector<EventId> CompositeModel::feasible_observable(const StateEstimate& s,
                                                         const ControlDecision& d) const {
  if (!well_formed(s)) throw UsageError("feasible_observable: malformed estimate");
  std::vector<EventId> out;
  for (EventId e = 0; e < global_.size(); ++e)
    if (global_[e].observable && d.enabled.test(e) && event_feasible(s, e))
      out.push_back(e);
  return out;
}

StateEstimate CompositeModel::unobservable_reach(const StateEstimate& s,
                                                 const ControlDecision& d) const {
  if (!well_formed(s)) throw UsageError("unobservable_reach: malformed estimate");
  StateEstimate r = s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::deque<StateId> work;
    r.cells[i].for_each([&](std::size_t q) { work.push_back(static_cast<StateId>(q)); });
    while (!work.empty()) {
      StateId q = work.front();
      work.pop_front();
      for (EventId e : unobservable_) {
        if (!d.enabled.test(e)) continue;
        std::int32_t le = local_[i][e];
        if (le < 0) continue;
        if (auto t = components_[i].step(q, static_cast<EventId>(le));
            t && !r.cells[i].test(*t)) {
          r.cells[i].set(*t);
          work.push_back(*t);
        }
      }
    }
  }
  return r;
}

StateEstimate CompositeModel::observe(const StateEstimate& s, const ControlDecision& d,
                                      EventId e) const {
  if (!well_formed(s)) throw UsageError("observe: malformed estimate");
  if (e >= global_.size()) throw UsageError("observe: event id out of range");
  if (!global_[e].observable || !d.enabled.test(e) || !event_feasible(s, e))
    throw ContractViolation("observe: event '" + global_[e].name +
                            "' is not a feasible observation here");
  StateEstimate r = s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::int32_t le = local_[i][e];
    if (le < 0) continue;  // component does not know e: cell unchanged
    StateSet img(components_[i].n_states());
    s.cells[i].for_each([&](std::size_t q) {
      if (auto t = components_[i].step(static_cast<StateId>(q), static_cast<EventId>(le)))
        img.set(*t);
    });
    r.cells[i] = img;
  }
  return unobservable_reach(r, d);
}

std::string CompositeModel::format_estimate(const StateEstimate& s) const {
  if (!well_formed(s)) throw UsageError("format_estimate: malformed estimate");
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) os << ',';
    os << '{';
    bool first = true;
    s.cells[i].for_each([&](std::size_t q) {
      if (!first) os << ',';
      first = false;
      os << components_[i].state_name(static_cast<StateId>(q));
    });
    os << '}';
  }
  os << ')';
  return os.str();
}

StateEstimate CompositeModel::parse_estimate(std::string_view text) const {
  auto fail = [&](const std::string& why) -> StateEstimate {
    throw UsageError("bad estimate '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  };
  StateEstimate s;
  expect('(');
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) expect(',');
    expect('{');
    StateSet cell(components_[i].n_states());
    while (pos < text.size() && text[pos] != '}') {
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != '}') ++pos;
      auto q = components_[i].state_of(text.substr(start, pos - start));
      if (!q) fail("unknown state '" + std::string(text.substr(start, pos - start)) + "'");
      cell.set(*q);
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    expect('}');
    if (cell.empty()) fail("empty cell");
    s.cells.push_back(cell);
  }
  expect(')');
  if (pos != text.size()) fail("trailing characters");
  return s;
}

std::string CompositeModel::format_decision(const ControlDecision& d) const {
  std::vector<EventId> ctrl = decision_controllables(d);
  if (ctrl.empty()) return "Σ_uc";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ctrl.size(); ++i) {
    if (i) os << ',';
    os << global_[ctrl[i]].name;
  }
  os << "}∪Σ_uc";
  return os.str();
}

}  // namespace swarm::des
