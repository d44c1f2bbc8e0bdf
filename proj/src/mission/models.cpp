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

#include "swarm/mission/models.hpp"

namespace swarm::mission {

using des::Alphabet;
using des::Automaton;
using des::AutomatonBuilder;
using des::EventId;
using des::StateId;

namespace {

std::string move_name(Dir d) { return std::string("m_") + dir_name(d); }
std::string search_name(Dir d) { return std::string("s_") + dir_name(d); }
std::string border_name(Dir d) { return std::string("b_") + dir_name(d); }

constexpr bool kCtrl = true, kUnctrl = false, kObs = true, kUnobs = false;

}  // namespace

des::Automaton build_navigation(const GridMap& map) {
  Alphabet sigma;
  for (Dir d : kDirs) sigma.add(move_name(d), kCtrl, kObs);
  for (Dir d : kDirs) sigma.add(search_name(d), kCtrl, kObs);
  EventId reentry = sigma.add("b_" + std::to_string(map.or_zone), kUnctrl, kObs);
  EventId loss = sigma.add("l", kUnctrl, kUnobs);

  AutomatonBuilder b("navigation", sigma);
  std::vector<StateId> zone(map.n_zones() + 1);
  for (Zone z = 1; z <= map.n_zones(); ++z)
    zone[z] = b.add_state(std::to_string(z), z == map.or_zone);
  StateId border = b.add_state("B" + std::to_string(map.or_zone));
  StateId sink = b.add_state("NFZ", false, true);
  b.set_initial(zone[map.or_zone]);

  for (Zone z = 1; z <= map.n_zones(); ++z) {
    if (z == map.or_zone) continue;
    for (Dir d : kDirs) {
      NeighborResult n = neighbor(map, z, d);
      StateId to = n.kind == NeighborResult::Zone_      ? zone[n.zone]
                   : n.kind == NeighborResult::OrBorder ? border
                                                        : sink;
      b.add_transition(zone[z], sigma.id_of(move_name(d)), to);
      b.add_transition(zone[z], sigma.id_of(search_name(d)), zone[z]);
    }
  }
  for (Zone u : map.unsafe_zones) b.add_transition(zone[u], loss, sink);
  b.add_transition(border, reentry, zone[map.or_zone]);
  return b.build();
}

des::Automaton build_exploration() {
  Alphabet sigma;
  for (Dir d : kDirs) sigma.add(move_name(d), kCtrl, kObs);
  for (Dir d : kDirs) sigma.add(search_name(d), kCtrl, kObs);
  for (Dir d : kDirs) sigma.add(border_name(d), kUnctrl, kObs);
  sigma.add("r", kCtrl, kObs);

  AutomatonBuilder b("exploration", sigma);
  StateId R = b.add_state("R", true);
  StateId O = b.add_state("O");
  StateId M = b.add_state("M");
  b.set_initial(R);
  for (Dir d : kDirs) {
    b.add_transition(R, sigma.id_of(search_name(d)), O);
    b.add_transition(O, sigma.id_of(border_name(d)), M);
    b.add_transition(M, sigma.id_of(move_name(d)), R);
  }
  b.add_transition(M, sigma.id_of("r"), R);
  return b.build();
}

des::Automaton build_scanning() {
  Alphabet sigma;
  for (Dir d : kDirs) sigma.add(search_name(d), kCtrl, kObs);
  for (Dir d : kDirs) sigma.add(border_name(d), kUnctrl, kObs);
  for (Dir d : kDirs) sigma.add(move_name(d), kCtrl, kObs);

  AutomatonBuilder b("scanning", sigma);
  StateId I = b.add_state("I", true);
  StateId at[4];
  at[0] = b.add_state("N", true);
  at[1] = b.add_state("E", true);
  at[2] = b.add_state("S", true);
  at[3] = b.add_state("W", true);
  b.set_initial(I);

  // n -> e -> s -> w -> n ... ; a fresh zone always starts at north.
  b.add_transition(I, sigma.id_of("s_n"), at[0]);
  for (int i = 0; i < 4; ++i) {
    Dir d = kDirs[i];
    b.add_transition(at[i], sigma.id_of(search_name(kDirs[(i + 1) % 4])), at[(i + 1) % 4]);
    b.add_transition(at[i], sigma.id_of(border_name(d)), at[i]);
    // Moving is tied to the border just scanned; it resets the scanner.
    b.add_transition(at[i], sigma.id_of(move_name(d)), I);
  }
  return b.build();
}

std::string MissionModel::identify_name(SubZone x) {
  return std::string("g_") + subzone_name(x);
}
std::string MissionModel::inner_observe_name(SubZone x) {
  return std::string("o_") + subzone_name(x);
}
std::string MissionModel::inner_move_name(SubZone x) {
  return std::string("m_") + subzone_name(x);
}

SubZone MissionModel::next_subzone(SubZone x) {
  return kSubZones[(static_cast<int>(x) + 1) % 4];
}

namespace {

SubZone prev_subzone(SubZone x) { return kSubZones[(static_cast<int>(x) + 3) % 4]; }

Alphabet inner_alphabet(const GridMap& map) {
  Alphabet sigma;
  for (SubZone x : kSubZones) sigma.add(MissionModel::identify_name(x), kUnctrl, kObs);
  for (SubZone x : kSubZones) sigma.add(MissionModel::inner_move_name(x), kCtrl, kObs);
  for (SubZone x : kSubZones) sigma.add(MissionModel::inner_observe_name(x), kUnctrl, kObs);
  sigma.add("s_" + std::to_string(map.or_zone), kCtrl, kObs);
  return sigma;
}

}  // namespace

des::Automaton build_inner(const GridMap& map) {
  Alphabet sigma = inner_alphabet(map);
  EventId s_or = sigma.id_of("s_" + std::to_string(map.or_zone));

  AutomatonBuilder b("inner", sigma);
  StateId U = b.add_state("U");
  StateId at[4];
  for (SubZone x : kSubZones)
    at[static_cast<int>(x)] = b.add_state(subzone_name(x), x == SubZone::A);
  b.set_initial(U);

  for (SubZone x : kSubZones) {
    StateId q = at[static_cast<int>(x)];
    b.add_transition(U, sigma.id_of(MissionModel::identify_name(x)), q);
    b.add_transition(q, s_or, q);
    for (SubZone y : {MissionModel::next_subzone(x), prev_subzone(x)}) {
      b.add_transition(q, sigma.id_of(MissionModel::inner_observe_name(y)), q);
      b.add_transition(q, sigma.id_of(MissionModel::inner_move_name(y)),
                       at[static_cast<int>(y)]);
    }
  }
  return b.build();
}

des::Automaton build_nominal_supervisor(const GridMap& map) {
  Alphabet sigma = inner_alphabet(map);
  EventId s_or = sigma.id_of("s_" + std::to_string(map.or_zone));

  AutomatonBuilder b("nominal_supervisor", sigma);
  // State T_X authorizes exactly the cyclic move m_X next.
  StateId at[4];
  for (SubZone x : kSubZones)
    at[static_cast<int>(x)] =
        b.add_state(std::string("T_") + subzone_name(x), true);
  b.set_initial(at[static_cast<int>(MissionModel::next_subzone(map.base_subzone))]);

  for (SubZone x : kSubZones) {
    StateId q = at[static_cast<int>(x)];
    b.add_transition(q, s_or, q);
    for (SubZone y : kSubZones) {
      b.add_transition(q, sigma.id_of(MissionModel::inner_observe_name(y)), q);
      // Identification re-aims the patrol at wherever the drone turned out
      // to be; without this the loop would block on a mis-aligned start.
      b.add_transition(q, sigma.id_of(MissionModel::identify_name(y)),
                       at[static_cast<int>(MissionModel::next_subzone(y))]);
    }
    b.add_transition(q, sigma.id_of(MissionModel::inner_move_name(x)),
                     at[static_cast<int>(MissionModel::next_subzone(x))]);
  }
  return b.build();
}

des::Automaton build_secondary_supervisor(const GridMap& map) {
  Alphabet sigma;
  sigma.add("s_" + std::to_string(map.or_zone), kCtrl, kObs);
  sigma.add("r", kCtrl, kObs);

  AutomatonBuilder b("secondary_supervisor", sigma);
  StateId P = b.add_state("P", true);
  StateId Q = b.add_state("Q", true);
  b.set_initial(P);
  b.add_transition(P, sigma.id_of("s_" + std::to_string(map.or_zone)), Q);
  b.add_transition(Q, sigma.id_of("r"), P);
  return b.build();
}

des::Automaton build_mode_switcher(const GridMap& map) {
  Alphabet sigma;
  sigma.add("desync", kUnctrl, kObs);
  sigma.add("b_" + std::to_string(map.or_zone), kUnctrl, kObs);
  sigma.add("regroup", kUnctrl, kObs);

  AutomatonBuilder b("mode_switcher", sigma);
  StateId NOM = b.add_state("NOM", true);
  StateId REC1 = b.add_state("REC1");
  StateId REC2 = b.add_state("REC2");
  b.set_initial(NOM);
  b.add_transition(NOM, sigma.id_of("desync"), REC1);
  b.add_transition(REC1, sigma.id_of("b_" + std::to_string(map.or_zone)), REC2);
  b.add_transition(REC2, sigma.id_of("regroup"), NOM);
  return b.build();
}

MissionModel MissionModel::build(const GridMap& map) {
  std::vector<Automaton> rec;
  rec.push_back(build_navigation(map));
  rec.push_back(build_exploration());
  rec.push_back(build_scanning());
  return MissionModel(map, std::move(rec), build_inner(map),
                      build_nominal_supervisor(map), build_secondary_supervisor(map),
                      build_mode_switcher(map));
}

MissionModel MissionModel::from_parts(GridMap map, des::Automaton navigation,
                                      des::Automaton exploration, des::Automaton scanning,
                                      des::Automaton inner,
                                      des::Automaton nominal_supervisor,
                                      des::Automaton secondary_supervisor,
                                      des::Automaton mode_switcher) {
  // Re-check the structural facts the builders guarantee; deserialized
  // documents get no benefit of the doubt.
  auto require_state = [](const Automaton& a, const std::string& name) {
    auto q = a.state_of(name);
    if (!q)
      throw des::ModelError("automaton '" + a.name() + "' is missing state '" + name + "'");
    return *q;
  };
  for (Zone z = 1; z <= map.n_zones(); ++z) require_state(navigation, std::to_string(z));
  StateId sink = require_state(navigation, "NFZ");
  require_state(navigation, "B" + std::to_string(map.or_zone));
  if (navigation.unsafe().count() != 1 || !navigation.unsafe().test(sink))
    throw des::ModelError("navigation unsafe states must be exactly the no-fly sink");
  if (!navigation.marked().test(*navigation.state_of(std::to_string(map.or_zone))))
    throw des::ModelError("operational-region state must be marked");
  if (auto l = navigation.alphabet().find("l")) {
    for (Zone u : map.unsafe_zones)
      if (!navigation.enables(*navigation.state_of(std::to_string(u)), *l))
        throw des::ModelError("unsafe_zones without loss transitions");
  } else if (!map.unsafe_zones.empty()) {
    throw des::ModelError("unsafe_zones without loss transitions");
  }
  for (const char* s : {"R", "O", "M"}) require_state(exploration, s);
  for (const char* s : {"I", "N", "E", "S", "W"}) require_state(scanning, s);
  for (const char* s : {"U", "A", "B", "C", "D"}) require_state(inner, s);

  std::vector<Automaton> rec;
  rec.push_back(std::move(navigation));
  rec.push_back(std::move(exploration));
  rec.push_back(std::move(scanning));
  return MissionModel(std::move(map), std::move(rec), std::move(inner),
                      std::move(nominal_supervisor), std::move(secondary_supervisor),
                      std::move(mode_switcher));
}

MissionModel::MissionModel(GridMap map, std::vector<Automaton> recovery_components,
                           des::Automaton inner, des::Automaton nominal_supervisor,
                           des::Automaton secondary_supervisor,
                           des::Automaton mode_switcher)
    : map_(std::move(map)),
      composite_(std::move(recovery_components)),
      inner_(std::move(inner)),
      nominal_supervisor_(std::move(nominal_supervisor)),
      secondary_supervisor_(std::move(secondary_supervisor)),
      mode_switcher_(std::move(mode_switcher)) {
  const Automaton& nav = navigation();
  zone_to_state_.assign(map_.n_zones() + 1, 0);
  for (Zone z = 1; z <= map_.n_zones(); ++z) {
    auto q = nav.state_of(std::to_string(z));
    if (!q) throw des::ModelError("navigation is missing zone " + std::to_string(z));
    zone_to_state_[z] = *q;
  }
  border_state_ = *nav.state_of("B" + std::to_string(map_.or_zone));
  sink_state_ = *nav.state_of("NFZ");

  const Alphabet& g = composite_.alphabet();
  for (Dir d : kDirs) {
    move_[static_cast<int>(d)] = g.id_of(move_name(d));
    search_[static_cast<int>(d)] = g.id_of(search_name(d));
    border_[static_cast<int>(d)] = g.id_of(border_name(d));
  }
  reentry_ = g.id_of("b_" + std::to_string(map_.or_zone));
  loss_ = g.id_of("l");
  return_ = g.id_of("r");

  nominal_estimate_ = zone_estimate({map_.or_zone});
}

bool MissionModel::operator==(const MissionModel& other) const {
  return map_ == other.map_ && navigation() == other.navigation() &&
         exploration() == other.exploration() && scanning() == other.scanning() &&
         inner_ == other.inner_ && nominal_supervisor_ == other.nominal_supervisor_ &&
         secondary_supervisor_ == other.secondary_supervisor_ &&
         mode_switcher_ == other.mode_switcher_;
}

des::StateEstimate MissionModel::zone_estimate(const std::set<Zone>& zones) const {
  des::StateSet cell(navigation().n_states());
  for (Zone z : zones) {
    if (z < 1 || z > map_.n_zones())
      throw des::UsageError("unknown zone '" + std::to_string(z) + "'");
    cell.set(zone_to_state_[z]);
  }
  return composite_.estimate_with_cell0(cell);
}

des::StateId MissionModel::zone_state(Zone z) const {
  if (z < 1 || z > map_.n_zones())
    throw des::UsageError("unknown zone '" + std::to_string(z) + "'");
  return zone_to_state_[z];
}

bool MissionModel::state_is_zone(des::StateId q, Zone* out) const {
  for (Zone z = 1; z <= map_.n_zones(); ++z)
    if (zone_to_state_[z] == q) {
      if (out) *out = z;
      return true;
    }
  return false;
}

bool MissionModel::is_move(des::EventId e, Dir* out) const {
  for (Dir d : kDirs)
    if (move_[static_cast<int>(d)] == e) {
      if (out) *out = d;
      return true;
    }
  return false;
}

bool MissionModel::is_search(des::EventId e, Dir* out) const {
  for (Dir d : kDirs)
    if (search_[static_cast<int>(d)] == e) {
      if (out) *out = d;
      return true;
    }
  return false;
}

std::string MissionModel::reentry_name() const {
  return "b_" + std::to_string(map_.or_zone);
}

std::string MissionModel::inner_search_name() const {
  return "s_" + std::to_string(map_.or_zone);
}

}  // namespace swarm::mission
