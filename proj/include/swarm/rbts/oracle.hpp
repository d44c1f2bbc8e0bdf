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

#ifndef SWARM_RBTS_ORACLE_HPP
#define SWARM_RBTS_ORACLE_HPP

#include "swarm/des/composite.hpp"
#include "swarm/mission/models.hpp"

namespace swarm::rbts {

enum class OracleVerdict { Recoverable, Unrecoverable, Inconclusive };

// Second opinion on recoverability, written independently of the game
// engine on purpose: enumerate the complete pruned estimate graph with no
// ordering heuristics and no early termination, then decide winnability by
// plain backward induction.  Slow and simple, for checking the fast path.
// Inconclusive when the graph outgrows the budget.
OracleVerdict oracle_recoverable(const mission::MissionModel& m,
                                 const des::StateEstimate& raw,
                                 std::size_t budget = 1'000'000);

}  // namespace swarm::rbts

#endif
