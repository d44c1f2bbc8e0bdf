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

#include "swarm/io/model_format.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace swarm::io {

using des::Automaton;
using des::AutomatonBuilder;
using des::EventId;
using des::ModelError;
using des::StateId;
using mission::GridMap;
using mission::MissionModel;

ParseError::ParseError(std::size_t line_, std::size_t column_, const std::string& what)
    : ModelError("line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                 ": " + what),
      line(line_),
      column(column_) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

// Comment-stripped, whitespace-tokenized lines; blank lines dropped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{lineno, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& what) {
  std::size_t col = tok < l.tokens.size() ? l.tokens[tok].column
                    : l.tokens.empty()    ? 1
                  : l.tokens.back().column + l.tokens.back().text.size();
  throw ParseError(l.number, col, what);
}

std::uint32_t parse_u32(const Line& l, std::size_t tok, const char* what) {
  const std::string& s = l.tokens[tok].text;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail(l, tok, std::string("expected ") + what + ", got '" + s + "'");
  unsigned long v = 0;
  try {
    v = std::stoul(s);
  } catch (const std::exception&) {
    fail(l, tok, std::string(what) + " '" + s + "' is out of range");
  }
  if (v > 0xfffffffful) fail(l, tok, std::string(what) + " '" + s + "' is out of range");
  return static_cast<std::uint32_t>(v);
}

void want_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    fail(l, std::min(l.tokens.size(), n),
         "'" + l.tokens[0].text + "' takes " + std::to_string(n - 1) + " argument(s)");
}

// One automaton block under construction.
struct Block {
  std::string name;
  des::Alphabet sigma;
  std::optional<AutomatonBuilder> builder;
  std::map<std::string, StateId> states;
  bool has_initial = false;
};

const char* const kFixedNames[] = {"inner", "nominal_supervisor", "secondary_supervisor",
                                   "mode_switcher"};

void emit_automaton(std::ostringstream& out, const Automaton& a) {
  out << "automaton " << a.name() << "\n";
  const des::Alphabet& sigma = a.alphabet();
  for (EventId e = 0; e < sigma.size(); ++e)
    out << "event " << sigma[e].name << (sigma[e].controllable ? " ctrl" : " unctrl")
        << (sigma[e].observable ? " obs" : " unobs") << "\n";
  for (StateId q = 0; q < a.n_states(); ++q) {
    out << "state " << a.state_name(q);
    if (a.marked().test(q)) out << " marked";
    if (a.unsafe().test(q)) out << " unsafe";
    out << "\n";
  }
  out << "initial " << a.state_name(a.initial()) << "\n";
  for (StateId q = 0; q < a.n_states(); ++q)
    for (EventId e = 0; e < sigma.size(); ++e)
      if (auto to = a.step(q, e))
        out << "trans " << a.state_name(q) << " " << sigma[e].name << " "
            << a.state_name(*to) << "\n";
  out << "end\n";
}

}  // namespace

std::string serialize_model(const MissionModel& m) {
  std::ostringstream out;
  const GridMap& g = m.map();
  out << "# swarm-recovery mission model\n";
  out << "map " << g.rows << " " << g.cols << "\n";
  out << "or " << g.or_zone << "\n";
  if (!g.unsafe_zones.empty()) {
    out << "unsafe";
    for (mission::Zone z : g.unsafe_zones) out << " " << z;
    out << "\n";
  }
  out << "base " << mission::subzone_name(g.base_subzone) << "\n";
  out << "\n";
  const Automaton* all[] = {&m.navigation(),           &m.exploration(),
                            &m.scanning(),             &m.inner(),
                            &m.nominal_supervisor(),   &m.secondary_supervisor(),
                            &m.mode_switcher()};
  for (const Automaton* a : all) {
    emit_automaton(out, *a);
    out << "\n";
  }
  out << "composite " << m.navigation().name() << " " << m.exploration().name() << " "
      << m.scanning().name() << "\n";
  return out.str();
}

mission::MissionModel parse_model(std::string_view text) {
  std::vector<Line> lines = tokenize(text);

  std::optional<std::uint32_t> rows, cols;
  std::optional<mission::Zone> or_zone;
  std::set<mission::Zone> unsafe_zones;
  std::optional<mission::SubZone> base;
  std::map<std::string, Automaton> automata;
  std::vector<std::string> automaton_order;
  std::vector<std::string> composite_order;
  std::optional<Block> block;

  for (const Line& l : lines) {
    const std::string& kw = l.tokens[0].text;
    if (block) {
      if (kw == "event") {
        want_arity(l, 4);
        if (block->builder)
          fail(l, 0, "events must be declared before the first state");
        const std::string& c = l.tokens[2].text;
        const std::string& o = l.tokens[3].text;
        if (c != "ctrl" && c != "unctrl")
          fail(l, 2, "expected 'ctrl' or 'unctrl', got '" + c + "'");
        if (o != "obs" && o != "unobs")
          fail(l, 3, "expected 'obs' or 'unobs', got '" + o + "'");
        block->sigma.add(l.tokens[1].text, c == "ctrl", o == "obs");
      } else if (kw == "state") {
        if (l.tokens.size() < 2 || l.tokens.size() > 4)
          fail(l, 1, "'state' takes a name and optional 'marked'/'unsafe' flags");
        if (!block->builder) block->builder.emplace(block->name, block->sigma);
        bool marked = false, unsafe = false;
        for (std::size_t i = 2; i < l.tokens.size(); ++i) {
          const std::string& f = l.tokens[i].text;
          if (f == "marked") marked = true;
          else if (f == "unsafe") unsafe = true;
          else fail(l, i, "unknown state flag '" + f + "'");
        }
        const std::string& name = l.tokens[1].text;
        if (block->states.count(name)) fail(l, 1, "duplicate state '" + name + "'");
        block->states[name] = block->builder->add_state(name, marked, unsafe);
      } else if (kw == "initial") {
        want_arity(l, 2);
        auto it = block->states.find(l.tokens[1].text);
        if (it == block->states.end())
          fail(l, 1, "unknown state '" + l.tokens[1].text + "'");
        block->builder->set_initial(it->second);
        block->has_initial = true;
      } else if (kw == "trans") {
        want_arity(l, 4);
        if (!block->builder) fail(l, 0, "transition before any state");
        auto from = block->states.find(l.tokens[1].text);
        if (from == block->states.end())
          fail(l, 1, "unknown state '" + l.tokens[1].text + "'");
        auto ev = block->sigma.find(l.tokens[2].text);
        if (!ev) fail(l, 2, "unknown event '" + l.tokens[2].text + "'");
        auto to = block->states.find(l.tokens[3].text);
        if (to == block->states.end())
          fail(l, 3, "unknown state '" + l.tokens[3].text + "'");
        block->builder->add_transition(from->second, *ev, to->second);
      } else if (kw == "end") {
        want_arity(l, 1);
        if (!block->builder || !block->has_initial)
          fail(l, 0, "automaton '" + block->name + "' needs states and an initial line");
        automata.emplace(block->name, block->builder->build());
        automaton_order.push_back(block->name);
        block.reset();
      } else {
        fail(l, 0, "unknown directive '" + kw + "' inside an automaton block");
      }
      continue;
    }

    if (kw == "map") {
      want_arity(l, 3);
      if (rows) fail(l, 0, "duplicate 'map' line");
      rows = parse_u32(l, 1, "row count");
      cols = parse_u32(l, 2, "column count");
    } else if (kw == "or") {
      want_arity(l, 2);
      if (or_zone) fail(l, 0, "duplicate 'or' line");
      or_zone = parse_u32(l, 1, "zone id");
    } else if (kw == "unsafe") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i)
        unsafe_zones.insert(parse_u32(l, i, "zone id"));
    } else if (kw == "base") {
      want_arity(l, 2);
      if (base) fail(l, 0, "duplicate 'base' line");
      const std::string& b = l.tokens[1].text;
      bool found = false;
      for (mission::SubZone x : mission::kSubZones)
        if (b == mission::subzone_name(x)) {
          base = x;
          found = true;
        }
      if (!found) fail(l, 1, "expected a sub-zone A..D, got '" + b + "'");
    } else if (kw == "automaton") {
      want_arity(l, 2);
      const std::string& name = l.tokens[1].text;
      if (automata.count(name)) fail(l, 1, "duplicate automaton '" + name + "'");
      block.emplace();
      block->name = name;
    } else if (kw == "composite") {
      want_arity(l, 4);
      if (!composite_order.empty()) fail(l, 0, "duplicate 'composite' line");
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        if (!automata.count(l.tokens[i].text))
          fail(l, i, "composite names unknown automaton '" + l.tokens[i].text + "'");
        composite_order.push_back(l.tokens[i].text);
      }
    } else {
      fail(l, 0, "unknown directive '" + kw + "'");
    }
  }

  if (block)
    throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                     "automaton '" + block->name + "' is missing its 'end' line");
  if (!rows || !cols) throw ModelError("document has no 'map' line");
  if (!or_zone) throw ModelError("document has no 'or' line");

  GridMap map = mission::build_grid_map(*rows, *cols, *or_zone, unsafe_zones,
                                        base.value_or(mission::SubZone::A));
  if (automata.empty()) return MissionModel::build(map);

  if (composite_order.size() != 3)
    throw ModelError("document with automata needs a 'composite' line naming the three "
                     "recovery components");
  for (const char* name : kFixedNames)
    if (!automata.count(name))
      throw ModelError(std::string("document is missing automaton '") + name + "'");
  std::size_t expected = 3 + std::size(kFixedNames);
  if (automata.size() != expected)
    throw ModelError("document must define exactly " + std::to_string(expected) +
                     " automata (found " + std::to_string(automata.size()) + ")");

  auto take = [&](const std::string& name) {
    auto node = automata.extract(name);
    if (node.empty()) throw ModelError("composite entries must be distinct automata");
    return std::move(node.mapped());
  };
  Automaton nav = take(composite_order[0]);
  Automaton expl = take(composite_order[1]);
  Automaton scan = take(composite_order[2]);
  return MissionModel::from_parts(map, std::move(nav), std::move(expl), std::move(scan),
                                  take("inner"), take("nominal_supervisor"),
                                  take("secondary_supervisor"), take("mode_switcher"));
}

std::string serialize_supervisor(const des::CompositeModel& c,
                                 const rbts::RecoverySupervisor& s) {
  std::ostringstream out;
  out << "# swarm-recovery supervisor\n";
  out << "initial " << c.format_estimate(s.initial) << "\n";
  std::vector<std::pair<std::string, std::string>> rules;
  rules.reserve(s.strategy.size());
  for (const auto& [est, dec] : s.strategy)
    rules.emplace_back(c.format_estimate(est), c.format_decision(dec));
  std::sort(rules.begin(), rules.end());
  for (const auto& [est, dec] : rules) out << "rule " << est << " " << dec << "\n";
  return out.str();
}

des::ControlDecision parse_decision(const des::CompositeModel& c, std::string_view text) {
  if (text == "Σ_uc") return c.make_decision({});
  const std::string_view suffix = "∪Σ_uc";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix ||
      text.empty() || text.front() != '{' ||
      text[text.size() - suffix.size() - 1] != '}')
    throw des::UsageError("bad decision '" + std::string(text) +
                          "': expected Σ_uc or {events}∪Σ_uc");
  std::string_view inner = text.substr(1, text.size() - suffix.size() - 2);
  std::vector<EventId> gamma;
  std::size_t pos = 0;
  while (pos <= inner.size() && !inner.empty()) {
    std::size_t comma = inner.find(',', pos);
    std::string_view name =
        inner.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                          : comma - pos);
    auto e = c.alphabet().find(std::string(name));
    if (!e)
      throw des::UsageError("bad decision: unknown event '" + std::string(name) + "'");
    gamma.push_back(*e);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return c.make_decision(gamma);
}

rbts::RecoverySupervisor parse_supervisor(const mission::MissionModel& m,
                                          std::string_view text) {
  const des::CompositeModel& c = m.composite();
  std::vector<Line> lines = tokenize(text);
  rbts::RecoverySupervisor sup;
  bool has_initial = false;
  for (const Line& l : lines) {
    const std::string& kw = l.tokens[0].text;
    if (kw == "initial") {
      want_arity(l, 2);
      if (has_initial) fail(l, 0, "duplicate 'initial' line");
      try {
        sup.initial = c.parse_estimate(l.tokens[1].text);
      } catch (const des::Error& e) {
        fail(l, 1, e.what());
      }
      has_initial = true;
    } else if (kw == "rule") {
      want_arity(l, 3);
      des::StateEstimate est;
      try {
        est = c.parse_estimate(l.tokens[1].text);
      } catch (const des::Error& e) {
        fail(l, 1, e.what());
      }
      if (sup.strategy.count(est)) fail(l, 1, "duplicate rule for this estimate");
      try {
        sup.strategy.emplace(std::move(est), parse_decision(c, l.tokens[2].text));
      } catch (const des::Error& e) {
        fail(l, 2, e.what());
      }
    } else {
      fail(l, 0, "unknown directive '" + kw + "'");
    }
  }
  if (!has_initial) throw ModelError("supervisor document has no 'initial' line");
  if (!sup.strategy.count(sup.initial) && !rbts::is_goal(m, sup.initial))
    throw ModelError("supervisor document has no rule for its initial estimate");
  return sup;
}

}  // namespace swarm::io
