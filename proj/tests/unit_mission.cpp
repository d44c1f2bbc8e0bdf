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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "swarm/mission/grid_map.hpp"
#include "swarm/mission/models.hpp"

using namespace swarm;
using des::Automaton;
using des::EventId;
using des::StateId;
using mission::Dir;
using mission::GridMap;
using mission::MissionModel;
using mission::SubZone;
using mission::Zone;

namespace {

template <typename E, typename F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  } catch (...) {
    return "<wrong exception type>";
  }
  return "<no exception>";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

bool has_edge(const Automaton& a, const std::string& from, const std::string& ev,
              const std::string& to) {
  auto q = a.state_of(from);
  auto e = a.alphabet().find(ev);
  if (!q || !e) return false;
  auto t = a.step(*q, *e);
  return t && a.state_name(*t) == to;
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
  GridMap m = mission::default_map();
  CHECK(m.rows == 5);
  CHECK(m.cols == 5);
  CHECK(m.or_zone == 13);
  CHECK(m.unsafe_zones == std::set<Zone>{10, 16});
  CHECK(m.base_subzone == SubZone::A);
  CHECK(m.n_zones() == 25);
  CHECK(m.row_of(13) == 3);
  CHECK(m.col_of(13) == 3);
  CHECK(m.row_of(1) == 1);
  CHECK(m.col_of(25) == 5);
  CHECK(m.is_buffer(12));
  CHECK_FALSE(m.is_buffer(13));
  CHECK_FALSE(m.valid_zone(0));
  CHECK_FALSE(m.valid_zone(26));

  CHECK(contains(message_of<des::ModelError>(
                     [] { mission::build_grid_map(0, 5, 1, {}, SubZone::A); }),
                 "grid must have positive dimensions"));
  CHECK(contains(message_of<des::ModelError>(
                     [] { mission::build_grid_map(5, 5, 26, {}, SubZone::A); }),
                 "or_zone 26 is out of range"));
  CHECK(contains(message_of<des::ModelError>(
                     [] { mission::build_grid_map(5, 5, 13, {99}, SubZone::A); }),
                 "unsafe zone 99 is out of range"));
  CHECK(contains(message_of<des::ModelError>(
                     [] { mission::build_grid_map(5, 5, 13, {13}, SubZone::A); }),
                 "or_zone cannot be an unsafe zone"));
}

TEST_CASE("grid adjacency: neighbors, border, off-grid") {
  GridMap m = mission::default_map();
  using K = mission::NeighborResult;

  auto n = mission::neighbor(m, 7, Dir::N);
  CHECK(n.kind == K::Zone_);
  CHECK(n.zone == 2);
  CHECK(mission::neighbor(m, 7, Dir::E).zone == 8);
  CHECK(mission::neighbor(m, 7, Dir::S).zone == 12);
  CHECK(mission::neighbor(m, 7, Dir::W).zone == 6);

  // Ring around the operational region.
  CHECK(mission::neighbor(m, 8, Dir::S).kind == K::OrBorder);
  CHECK(mission::neighbor(m, 18, Dir::N).kind == K::OrBorder);
  CHECK(mission::neighbor(m, 12, Dir::E).kind == K::OrBorder);
  CHECK(mission::neighbor(m, 14, Dir::W).kind == K::OrBorder);

  // Edges of the map.
  CHECK(mission::neighbor(m, 1, Dir::N).kind == K::OffGrid);
  CHECK(mission::neighbor(m, 1, Dir::W).kind == K::OffGrid);
  CHECK(mission::neighbor(m, 5, Dir::E).kind == K::OffGrid);
  CHECK(mission::neighbor(m, 25, Dir::S).kind == K::OffGrid);

  CHECK_THROWS_AS((void)mission::neighbor(m, 13, Dir::N), des::UsageError);
}

TEST_CASE("navigation layer: zones, border state, no-fly sink") {
  MissionModel model = MissionModel::build(mission::default_map());
  const Automaton& nav = model.navigation();

  // 25 zones plus the border state and the sink.
  CHECK(nav.n_states() == 27);
  REQUIRE(nav.state_of("B13").has_value());
  REQUIRE(nav.state_of("NFZ").has_value());
  CHECK(nav.initial() == *nav.state_of("13"));
  CHECK(nav.marked() == des::StateSet::of(27, {*nav.state_of("13")}));
  CHECK(nav.unsafe() == des::StateSet::of(27, {*nav.state_of("NFZ")}));

  // Moves follow the grid; off-grid moves land in the no-fly sink.
  CHECK(has_edge(nav, "7", "m_n", "2"));
  CHECK(has_edge(nav, "7", "m_e", "8"));
  CHECK(has_edge(nav, "1", "m_n", "NFZ"));
  CHECK(has_edge(nav, "1", "m_w", "NFZ"));
  // A move toward the operational region reaches the border state, and the
  // border observation is its only exit, into the region itself.
  CHECK(has_edge(nav, "8", "m_s", "B13"));
  CHECK(has_edge(nav, "12", "m_e", "B13"));
  CHECK(has_edge(nav, "B13", "b_13", "13"));
  {
    StateId b = *nav.state_of("B13");
    std::size_t out = 0;
    for (EventId e = 0; e < nav.alphabet().size(); ++e)
      if (nav.enables(b, e)) ++out;
    CHECK(out == 1);
  }

  // Searches self-loop on every buffer zone; the region and sink are quiet.
  for (const char* z : {"1", "8", "12", "25"})
    for (const char* s : {"s_n", "s_e", "s_s", "s_w"})
      CHECK(has_edge(nav, z, s, z));
  for (EventId e = 0; e < nav.alphabet().size(); ++e) {
    CHECK_FALSE(nav.enables(*nav.state_of("13"), e));
    CHECK_FALSE(nav.enables(*nav.state_of("NFZ"), e));
  }

  // Silent loss exists exactly at the unsafe zones.
  CHECK(has_edge(nav, "10", "l", "NFZ"));
  CHECK(has_edge(nav, "16", "l", "NFZ"));
  EventId l = nav.alphabet().id_of("l");
  std::size_t losses = 0;
  for (StateId q = 0; q < nav.n_states(); ++q)
    if (nav.enables(q, l)) ++losses;
  CHECK(losses == 2);
}

TEST_CASE("exploration layer: roam, observe, move home") {
  MissionModel model = MissionModel::build(mission::default_map());
  const Automaton& ex = model.exploration();
  CHECK(ex.n_states() == 3);
  StateId r = *ex.state_of("R");
  StateId o = *ex.state_of("O");
  StateId m = *ex.state_of("M");
  CHECK(ex.initial() == r);
  CHECK(ex.marked() == des::StateSet::of(3, {r}));

  for (const char* s : {"s_n", "s_e", "s_s", "s_w"})
    CHECK(has_edge(ex, "R", s, "O"));
  for (const char* b : {"b_n", "b_e", "b_s", "b_w"})
    CHECK(has_edge(ex, "O", b, "M"));
  for (const char* mv : {"m_n", "m_e", "m_s", "m_w", "r"})
    CHECK(has_edge(ex, "M", mv, "R"));
  // Re-entry is not the exploration layer's business: the navigation layer
  // alone reacts to it, so the phase machine ignores the event entirely.
  CHECK(ex.alphabet().find("b_13") == std::nullopt);

  // Each phase admits only its own event class.
  EventId sn = ex.alphabet().id_of("s_n");
  EventId bn = ex.alphabet().id_of("b_n");
  EventId mn = ex.alphabet().id_of("m_n");
  CHECK_FALSE(ex.enables(o, sn));
  CHECK_FALSE(ex.enables(o, mn));
  CHECK_FALSE(ex.enables(m, sn));
  CHECK_FALSE(ex.enables(m, bn));
  CHECK_FALSE(ex.enables(r, bn));
  CHECK_FALSE(ex.enables(r, mn));
}

TEST_CASE("scanning layer: cyclic sweep with direction-locked moves") {
  MissionModel model = MissionModel::build(mission::default_map());
  const Automaton& sc = model.scanning();
  CHECK(sc.n_states() == 5);
  CHECK(sc.initial() == *sc.state_of("I"));
  // Every scanner state is marked: the scanner never blocks completion.
  CHECK(sc.marked().count() == 5);

  // The sweep starts north and cycles n -> e -> s -> w -> n.
  CHECK(has_edge(sc, "I", "s_n", "N"));
  CHECK(has_edge(sc, "N", "s_e", "E"));
  CHECK(has_edge(sc, "E", "s_s", "S"));
  CHECK(has_edge(sc, "S", "s_w", "W"));
  CHECK(has_edge(sc, "W", "s_n", "N"));
  CHECK_FALSE(has_edge(sc, "I", "s_e", "E"));  // the first sweep is always north

  // A border report self-loops only on the matching direction state.
  CHECK(has_edge(sc, "N", "b_n", "N"));
  CHECK(has_edge(sc, "S", "b_s", "S"));
  CHECK_FALSE(sc.enables(*sc.state_of("N"), sc.alphabet().id_of("b_s")));

  // Moving is allowed only toward the direction just scanned, resetting
  // the sweep.
  CHECK(has_edge(sc, "S", "m_s", "I"));
  CHECK(has_edge(sc, "W", "m_w", "I"));
  CHECK_FALSE(sc.enables(*sc.state_of("S"), sc.alphabet().id_of("m_e")));
  CHECK_FALSE(sc.enables(*sc.state_of("I"), sc.alphabet().id_of("m_n")));

  // Neither the retreat nor the re-entry observation concern the scanner;
  // in the composite they simply leave its cell untouched.
  CHECK(sc.alphabet().find("r") == std::nullopt);
  CHECK(sc.alphabet().find("b_13") == std::nullopt);
}

TEST_CASE("recovery composite: one global alphabet in canonical order") {
  MissionModel model = MissionModel::build(mission::default_map());
  const des::CompositeModel& c = model.composite();
  CHECK(c.n_components() == 3);

  std::vector<std::string> names;
  std::vector<bool> ctrl, obs;
  for (EventId e = 0; e < c.alphabet().size(); ++e) {
    names.push_back(c.alphabet()[e].name);
    ctrl.push_back(c.alphabet()[e].controllable);
    obs.push_back(c.alphabet()[e].observable);
  }
  CHECK(names == std::vector<std::string>{"m_n", "m_e", "m_s", "m_w", "s_n", "s_e",
                                          "s_s", "s_w", "b_13", "l", "b_n", "b_e",
                                          "b_s", "b_w", "r"});
  CHECK(ctrl == std::vector<bool>{true, true, true, true, true, true, true, true,
                                  false, false, false, false, false, false, true});
  // The silent loss is the only unobservable event.
  CHECK(obs == std::vector<bool>{true, true, true, true, true, true, true, true,
                                 true, false, true, true, true, true, true});

  // Cached event ids agree with the alphabet.
  CHECK(model.move_event(Dir::N) == c.alphabet().id_of("m_n"));
  CHECK(model.search_event(Dir::W) == c.alphabet().id_of("s_w"));
  CHECK(model.border_event(Dir::S) == c.alphabet().id_of("b_s"));
  CHECK(model.reentry_event() == c.alphabet().id_of("b_13"));
  CHECK(model.loss_event() == c.alphabet().id_of("l"));
  CHECK(model.return_event() == c.alphabet().id_of("r"));

  Dir d{};
  CHECK(model.is_move(model.move_event(Dir::S), &d));
  CHECK(d == Dir::S);
  CHECK(model.is_search(model.search_event(Dir::E), &d));
  CHECK(d == Dir::E);
  CHECK_FALSE(model.is_move(model.search_event(Dir::E)));
  CHECK_FALSE(model.is_search(model.reentry_event()));
}

TEST_CASE("estimates: zone sets, formatting, nominal shape") {
  MissionModel model = MissionModel::build(mission::default_map());
  const des::CompositeModel& c = model.composite();

  des::StateEstimate e = model.zone_estimate({1, 2});
  CHECK(c.format_estimate(e) == "({1,2},{R},{I})");
  CHECK(c.format_estimate(model.nominal_estimate()) == "({13},{R},{I})");
  CHECK(contains(message_of<des::UsageError>([&] { (void)model.zone_estimate({26}); }),
                 "unknown zone '26'"));

  Zone z = 0;
  CHECK(model.state_is_zone(model.zone_state(7), &z));
  CHECK(z == 7);
  CHECK_FALSE(model.state_is_zone(model.border_state()));
  CHECK_FALSE(model.state_is_zone(model.sink_state()));
}

TEST_CASE("sub-zone layer: identification then quadrant cycle") {
  MissionModel model = MissionModel::build(mission::default_map());
  const Automaton& in = model.inner();
  CHECK(in.n_states() == 5);
  CHECK(in.initial() == *in.state_of("U"));
  CHECK(in.marked() == des::StateSet::of(5, {*in.state_of("A")}));

  // Identification resolves U to any quadrant.
  for (const char* q : {"A", "B", "C", "D"})
    CHECK(has_edge(in, "U", (std::string("g_") + q).c_str(), q));

  // In-region search self-loops at every known quadrant, and a drone can
  // observe the borders of the two quadrants adjacent to its own -- but
  // not its own or the opposite corner.
  for (const char* q : {"A", "B", "C", "D"}) CHECK(has_edge(in, q, "s_13", q));
  CHECK(has_edge(in, "A", "o_B", "A"));
  CHECK(has_edge(in, "A", "o_D", "A"));
  CHECK_FALSE(in.enables(*in.state_of("A"), in.alphabet().id_of("o_A")));
  CHECK_FALSE(in.enables(*in.state_of("A"), in.alphabet().id_of("o_C")));

  // Moves run along the quadrant cycle A -> B -> C -> D -> A, both ways.
  CHECK(has_edge(in, "A", "m_B", "B"));
  CHECK(has_edge(in, "B", "m_C", "C"));
  CHECK(has_edge(in, "C", "m_D", "D"));
  CHECK(has_edge(in, "D", "m_A", "A"));
  CHECK(has_edge(in, "B", "m_A", "A"));  // backwards along the cycle
  CHECK_FALSE(has_edge(in, "A", "m_C", "C"));  // no diagonal hop

  CHECK(MissionModel::next_subzone(SubZone::A) == SubZone::B);
  CHECK(MissionModel::next_subzone(SubZone::D) == SubZone::A);
  CHECK(model.inner_search_name() == "s_13");
  CHECK(model.reentry_name() == "b_13");
  CHECK(MissionModel::identify_name(SubZone::C) == "g_C");
}

TEST_CASE("patrol supervisors and the mode switcher") {
  MissionModel model = MissionModel::build(mission::default_map());

  const Automaton& nom = model.nominal_supervisor();
  CHECK(nom.n_states() == 4);
  // The base quadrant is A, so the first authorized move is toward B.
  CHECK(nom.initial() == *nom.state_of("T_B"));
  CHECK(nom.marked().count() == 4);
  CHECK(has_edge(nom, "T_B", "m_B", "T_C"));
  CHECK(has_edge(nom, "T_C", "m_C", "T_D"));
  CHECK(has_edge(nom, "T_A", "m_A", "T_B"));
  CHECK_FALSE(has_edge(nom, "T_B", "m_C", "T_D"));  // only the aimed move
  // Identification re-aims the patrol at the revealed position's successor.
  CHECK(has_edge(nom, "T_B", "g_C", "T_D"));
  CHECK(has_edge(nom, "T_D", "g_D", "T_A"));
  // Searches and border observations never disturb the patrol target.
  CHECK(has_edge(nom, "T_C", "s_13", "T_C"));
  CHECK(has_edge(nom, "T_C", "o_A", "T_C"));

  const Automaton& sec = model.secondary_supervisor();
  CHECK(sec.n_states() == 2);
  CHECK(sec.initial() == *sec.state_of("P"));
  CHECK(sec.marked().count() == 2);
  CHECK(has_edge(sec, "P", "s_13", "Q"));
  CHECK(has_edge(sec, "Q", "r", "P"));
  CHECK_FALSE(sec.enables(*sec.state_of("P"), sec.alphabet().id_of("r")));

  const Automaton& sw = model.mode_switcher();
  CHECK(sw.n_states() == 3);
  CHECK(sw.initial() == *sw.state_of("NOM"));
  CHECK(sw.marked() == des::StateSet::of(3, {*sw.state_of("NOM")}));
  CHECK(has_edge(sw, "NOM", "desync", "REC1"));
  CHECK(has_edge(sw, "REC1", "b_13", "REC2"));
  CHECK(has_edge(sw, "REC2", "regroup", "NOM"));
  CHECK(sw.n_transitions() == 3);
}

TEST_CASE("models generalize to other maps") {
  GridMap g = mission::build_grid_map(3, 3, 5, {3, 7}, SubZone::B);
  MissionModel model = MissionModel::build(g);
  const Automaton& nav = model.navigation();
  CHECK(nav.n_states() == 11);  // 9 zones + border + sink
  CHECK(has_edge(nav, "2", "m_s", "B5"));
  CHECK(has_edge(nav, "B5", "b_5", "5"));
  CHECK(has_edge(nav, "3", "l", "NFZ"));
  CHECK(model.reentry_name() == "b_5");
  CHECK(model.inner_search_name() == "s_5");
  // Base quadrant B puts the first patrol target at C.
  CHECK(model.nominal_supervisor().initial() ==
        *model.nominal_supervisor().state_of("T_C"));

  const des::CompositeModel& c = model.composite();
  CHECK(c.alphabet().find("b_5").has_value());
  CHECK(c.alphabet().find("b_13") == std::nullopt);
  CHECK(c.format_estimate(model.zone_estimate({1, 2})) == "({1,2},{R},{I})");
}

TEST_CASE("deserialized parts are re-validated") {
  GridMap g = mission::default_map();
  MissionModel good = MissionModel::build(g);

  // A navigation automaton missing the loss transitions must be rejected.
  {
    const Automaton& nav = good.navigation();
    des::AutomatonBuilder b("navigation", nav.alphabet());
    for (StateId q = 0; q < nav.n_states(); ++q)
      b.add_state(nav.state_name(q), nav.marked().test(q), nav.unsafe().test(q));
    EventId l = nav.alphabet().id_of("l");
    for (StateId q = 0; q < nav.n_states(); ++q)
      for (EventId e = 0; e < nav.alphabet().size(); ++e)
        if (e != l)
          if (auto t = nav.step(q, e)) b.add_transition(q, e, *t);
    b.set_initial(nav.initial());
    Automaton lossless = b.build();
    CHECK(contains(
        message_of<des::ModelError>([&] {
          (void)MissionModel::from_parts(g, lossless, good.exploration(),
                                         good.scanning(), good.inner(),
                                         good.nominal_supervisor(),
                                         good.secondary_supervisor(),
                                         good.mode_switcher());
        }),
        "unsafe_zones without loss transitions"));
  }

  // Swapping in an automaton that lacks the expected states is caught.
  CHECK(contains(
      message_of<des::ModelError>([&] {
        (void)MissionModel::from_parts(g, good.navigation(), good.exploration(),
                                       good.scanning(), good.exploration(),
                                       good.nominal_supervisor(),
                                       good.secondary_supervisor(),
                                       good.mode_switcher());
      }),
      "is missing state 'U'"));

  // The round trip through the accessors reproduces an equal model.
  MissionModel again = MissionModel::from_parts(
      g, good.navigation(), good.exploration(), good.scanning(), good.inner(),
      good.nominal_supervisor(), good.secondary_supervisor(), good.mode_switcher());
  CHECK(again == good);
}
