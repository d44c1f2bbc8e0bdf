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

#ifndef SWARM_DES_EVENT_HPP
#define SWARM_DES_EVENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swarm/des/errors.hpp"

namespace swarm::des {

using EventId = std::uint32_t;
using StateId = std::uint32_t;

// An event carries the two supervisory-control attributes.  The supervisor
// can only disable controllable events, and only observable events drive
// state estimation.  This toolkit additionally requires every controllable
// event to be observable: a supervisor cannot meaningfully toggle an event
// it never sees, and all models here satisfy the restriction.
struct Event {
  std::string name;
  bool controllable = false;
  bool observable = true;

  bool operator==(const Event&) const = default;
};

// Ordered set of events.  Insertion order is the canonical event order of
// whatever model owns the alphabet; merging (for synchronous products)
// keeps first-seen order and rejects attribute clashes.
class Alphabet {
public:
  EventId add(std::string name, bool controllable, bool observable) {
    if (controllable && !observable)
      throw ModelError("event '" + name + "' declared controllable but unobservable");
    if (auto it = index_.find(name); it != index_.end()) {
      const Event& have = events_[it->second];
      if (have.controllable != controllable || have.observable != observable)
        throw ModelError("event '" + name + "' redeclared with conflicting attributes");
      return it->second;
    }
    EventId id = static_cast<EventId>(events_.size());
    index_.emplace(name, id);
    events_.push_back(Event{std::move(name), controllable, observable});
    return id;
  }

  EventId add(const Event& e) { return add(e.name, e.controllable, e.observable); }

  std::optional<EventId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  EventId id_of(std::string_view name) const {
    auto id = find(name);
    if (!id) throw UsageError("unknown event '" + std::string(name) + "'");
    return *id;
  }

  const Event& operator[](EventId id) const { return events_.at(id); }
  std::size_t size() const { return events_.size(); }

  bool operator==(const Alphabet& o) const { return events_ == o.events_; }

private:
  std::vector<Event> events_;
  std::unordered_map<std::string, EventId> index_;
};

}  // namespace swarm::des

#endif
