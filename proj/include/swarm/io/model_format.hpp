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

#ifndef SWARM_IO_MODEL_FORMAT_HPP
#define SWARM_IO_MODEL_FORMAT_HPP

#include <string>
#include <string_view>

#include "swarm/mission/models.hpp"
#include "swarm/rbts/supervisor.hpp"

namespace swarm::io {

// A malformed document; the message carries "line L, column C".
struct ParseError : des::ModelError {
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line;
  std::size_t column;
};

// Line-oriented, human-diffable model document.  Layout:
//
//   map 5 5            # rows cols
//   or 13
//   unsafe 10 16
//   base A
//   automaton navigation
//   event m_n ctrl obs
//   state 1
//   state 13 marked
//   initial 13
//   trans 1 m_e 2
//   end
//   ...six more automaton blocks...
//   composite navigation exploration scanning
//
// '#' starts a comment.  A document holding only the map sections is also
// accepted: the seven automata are then derived from the map.
std::string serialize_model(const mission::MissionModel& m);

// Throws ParseError on bad syntax and ModelError when a structural
// invariant fails (the same checks a freshly built model satisfies).
mission::MissionModel parse_model(std::string_view text);

// Supervisor documents: the initial estimate plus one "rule ESTIMATE
// DECISION" line per reachable estimate, in the tuple/decision notation
// used everywhere else ("({1,2},{R},{I})", "{s_n}∪Σ_uc").  A document with
// no rules is only accepted when its initial estimate is already the goal.
std::string serialize_supervisor(const des::CompositeModel& c,
                                 const rbts::RecoverySupervisor& s);
rbts::RecoverySupervisor parse_supervisor(const mission::MissionModel& m,
                                          std::string_view text);

// "{m_n,r}∪Σ_uc" or "Σ_uc" -> decision.  UsageError on unknown or
// uncontrollable event names.
des::ControlDecision parse_decision(const des::CompositeModel& c, std::string_view text);

}  // namespace swarm::io

#endif
