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

#ifndef SWARM_IO_DOT_HPP
#define SWARM_IO_DOT_HPP

#include <string>

#include "swarm/des/automaton.hpp"
#include "swarm/des/composite.hpp"
#include "swarm/rbts/game.hpp"

namespace swarm::io {

// Graphviz view of an automaton: marked states double-bordered, unsafe
// states filled, the initial state drawn with a heavier border.  One node
// per state -- a one-state automaton exports as a single-node digraph.
std::string export_dot(const des::Automaton& a);

// Graphviz view of a recovery game: estimate nodes (the supervisor's turn)
// are rectangles, decision nodes (the environment's turn) are rounded
// boxes, goal estimates are double-bordered, and pruned decisions stay in
// the picture dashed and gray, with the pruning reason on the node.  Edges
// into decision nodes carry the control decision; edges out of them carry
// the observed event.
std::string export_dot(const des::CompositeModel& c, const rbts::Rbts& t);

}  // namespace swarm::io

#endif
