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

#ifndef SWARM_MISSION_MODELS_HPP
#define SWARM_MISSION_MODELS_HPP

#include <array>
#include <string>

#include "swarm/des/automaton.hpp"
#include "swarm/des/composite.hpp"
#include "swarm/mission/grid_map.hpp"

namespace swarm::mission {

// Navigation layer over the buffer zones.  States are the zones plus the
// re-entry border state ("B" + or_zone id) and the no-fly sink "NFZ".
// Moves m_d go to the grid neighbor (NFZ when off-grid, the border state
// when the neighbor is the operational region); searches s_d self-loop on
// buffer zones only, so the border state forces the b event out before
// anything else; unsafe zones carry the silent loss event l to NFZ.
des::Automaton build_navigation(const GridMap& map);

// Roam / observe / move phases of recovery flight: R --s_d--> O,
// O --b_d--> M, M --m_d or r--> R.
des::Automaton build_exploration();

// Border-scan sequencer: searches advance cyclically n, e, s, w (with wrap
// back to n); the matching border observation self-loops; a move is only
// possible in the direction just scanned and resets the scanner.
des::Automaton build_scanning();

// Sub-zone layer of the operational region: unknown state U resolved by an
// identification event g_X, then moves along the quadrant cycle A-B-C-D-A,
// with per-sub-zone search (s_<or>) and border observation (o_X) self-loops.
des::Automaton build_inner(const GridMap& map);

// Patrol supervisor for the sub-zone layer: each state authorizes exactly
// the next move of the cycle A->B->C->D->A; identification events re-aim
// the supervisor at the newly known position's successor.
des::Automaton build_nominal_supervisor(const GridMap& map);

// Two-state wait loop used after re-entry: search for the swarm (s_<or>),
// return (r), repeat until regrouped.
des::Automaton build_secondary_supervisor(const GridMap& map);

// NOM --desync--> REC1 --b_<or>--> REC2 --regroup--> NOM.
des::Automaton build_mode_switcher(const GridMap& map);

// Everything one mission needs: the map, the recovery composite
// (navigation, exploration, scanning) used for estimates and synthesis,
// and the in-region automata for the nominal/secondary phases.
class MissionModel {
public:
  static MissionModel build(const GridMap& map);

  // Reassembles a model from deserialized automata, re-checking the
  // structural invariants the builders guarantee.
  static MissionModel from_parts(GridMap map, des::Automaton navigation,
                                 des::Automaton exploration, des::Automaton scanning,
                                 des::Automaton inner, des::Automaton nominal_supervisor,
                                 des::Automaton secondary_supervisor,
                                 des::Automaton mode_switcher);

  const GridMap& map() const { return map_; }
  const des::CompositeModel& composite() const { return composite_; }
  const des::Automaton& navigation() const { return composite_.component(0); }
  const des::Automaton& exploration() const { return composite_.component(1); }
  const des::Automaton& scanning() const { return composite_.component(2); }
  const des::Automaton& inner() const { return inner_; }
  const des::Automaton& nominal_supervisor() const { return nominal_supervisor_; }
  const des::Automaton& secondary_supervisor() const { return secondary_supervisor_; }
  const des::Automaton& mode_switcher() const { return mode_switcher_; }

  // Estimate after a drone has fully re-entered: ({or},{R},{I}).
  const des::StateEstimate& nominal_estimate() const { return nominal_estimate_; }

  // Structural equality of the map and all seven automata; lets callers
  // check that a serialization round-trip was lossless.
  bool operator==(const MissionModel& other) const;

  // ({zones...},{R},{I}) -- the shape every recovery starts from.
  // Throws UsageError on a zone id with no navigation state.
  des::StateEstimate zone_estimate(const std::set<Zone>& zones) const;

  // Navigation state id for a zone and back; border/sink lookups.
  des::StateId zone_state(Zone z) const;
  bool state_is_zone(des::StateId q, Zone* out = nullptr) const;
  des::StateId border_state() const { return border_state_; }
  des::StateId sink_state() const { return sink_state_; }

  // Global (composite) event ids, cached for hot paths.
  des::EventId move_event(Dir d) const { return move_[static_cast<int>(d)]; }
  des::EventId search_event(Dir d) const { return search_[static_cast<int>(d)]; }
  des::EventId border_event(Dir d) const { return border_[static_cast<int>(d)]; }
  des::EventId reentry_event() const { return reentry_; }  // b_<or>
  des::EventId loss_event() const { return loss_; }        // l
  des::EventId return_event() const { return return_; }    // r

  bool is_move(des::EventId e, Dir* out = nullptr) const;
  bool is_search(des::EventId e, Dir* out = nullptr) const;

  // Event names used by the in-region automata (own alphabets, not the
  // recovery composite's).
  std::string reentry_name() const;             // "b_<or>"
  std::string inner_search_name() const;        // "s_<or>"
  static std::string identify_name(SubZone x);  // "g_X"
  static std::string inner_observe_name(SubZone x);
  static std::string inner_move_name(SubZone x);

  static SubZone next_subzone(SubZone x);  // cycle A->B->C->D->A

private:
  MissionModel(GridMap map, std::vector<des::Automaton> recovery_components,
               des::Automaton inner, des::Automaton nominal_supervisor,
               des::Automaton secondary_supervisor, des::Automaton mode_switcher);

  GridMap map_;
  des::CompositeModel composite_;
  des::Automaton inner_;
  des::Automaton nominal_supervisor_;
  des::Automaton secondary_supervisor_;
  des::Automaton mode_switcher_;
  des::StateEstimate nominal_estimate_;

  std::vector<des::StateId> zone_to_state_;
  des::StateId border_state_ = 0;
  des::StateId sink_state_ = 0;
  std::array<des::EventId, 4> move_{}, search_{}, border_{};
  des::EventId reentry_ = 0, loss_ = 0, return_ = 0;
};

}  // namespace swarm::mission

#endif
