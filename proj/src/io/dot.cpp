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

#include "swarm/io/dot.hpp"

#include <sstream>

namespace swarm::io {

namespace {

// Node identifiers are synthetic (q0, y3, z7...); the readable text lives
// in labels, where quoting rules are the only concern.
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

const char* prune_reason(rbts::ZStatus s) {
  switch (s) {
    case rbts::ZStatus::PrunedUnsafe: return "unsafe";
    case rbts::ZStatus::PrunedStall: return "stall";
    default: return "";
  }
}

bool is_pruned(rbts::ZStatus s) {
  return s == rbts::ZStatus::PrunedUnsafe || s == rbts::ZStatus::PrunedStall;
}

}  // namespace

std::string export_dot(const des::Automaton& a) {
  std::ostringstream out;
  out << "digraph " << quoted(a.name()) << " {\n";
  out << "  rankdir=LR;\n";
  for (des::StateId q = 0; q < a.n_states(); ++q) {
    out << "  q" << q << " [label=" << quoted(a.state_name(q));
    if (a.marked().test(q)) out << ", peripheries=2";
    if (a.unsafe().test(q)) out << ", style=filled, fillcolor=lightgray";
    if (q == a.initial()) out << ", penwidth=2";
    out << "];\n";
  }
  const des::Alphabet& sigma = a.alphabet();
  for (des::StateId q = 0; q < a.n_states(); ++q) {
    for (des::EventId e = 0; e < sigma.size(); ++e) {
      if (auto to = a.step(q, e))
        out << "  q" << q << " -> q" << *to << " [label=" << quoted(sigma[e].name)
            << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const des::CompositeModel& c, const rbts::Rbts& t) {
  std::ostringstream out;
  out << "digraph rbts {\n";
  out << "  rankdir=TB;\n";
  for (std::size_t i = 0; i < t.y_nodes.size(); ++i) {
    const rbts::YNode& y = t.y_nodes[i];
    out << "  y" << i << " [shape=box, label=" << quoted(c.format_estimate(y.estimate));
    if (y.goal) out << ", peripheries=2";
    if (i == t.initial) out << ", penwidth=2";
    out << "];\n";
  }
  for (std::size_t j = 0; j < t.z_nodes.size(); ++j) {
    const rbts::ZNode& z = t.z_nodes[j];
    std::string label = c.format_decision(z.decision);
    if (is_pruned(z.status))
      label += std::string(" (pruned: ") + prune_reason(z.status) + ")";
    out << "  z" << j << " [shape=box, style=" << (is_pruned(z.status) ? "\"rounded,dashed\"" : "rounded")
        << ", label=" << quoted(label);
    if (is_pruned(z.status)) out << ", color=gray, fontcolor=gray";
    out << "];\n";
  }
  for (std::size_t i = 0; i < t.y_nodes.size(); ++i) {
    for (std::size_t j : t.y_nodes[i].z) {
      const rbts::ZNode& z = t.z_nodes[j];
      out << "  y" << i << " -> z" << j
          << " [label=" << quoted(c.format_decision(z.decision));
      if (is_pruned(z.status)) out << ", style=dashed, color=gray, fontcolor=gray";
      else if (t.y_nodes[i].strategy_z && *t.y_nodes[i].strategy_z == j)
        out << ", penwidth=2";
      out << "];\n";
    }
  }
  for (std::size_t j = 0; j < t.z_nodes.size(); ++j) {
    for (const rbts::ObsEdge& s : t.z_nodes[j].successors)
      out << "  z" << j << " -> y" << s.y
          << " [label=" << quoted(c.alphabet()[s.event].name) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace swarm::io
