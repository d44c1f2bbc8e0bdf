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

#include "swarm/rbts/game.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>

namespace swarm::rbts {

using des::ControlDecision;
using des::EventId;
using des::StateEstimate;

std::optional<std::size_t> Rbts::find_y(const StateEstimate& e) const {
  for (std::size_t i = 0; i < y_nodes.size(); ++i)
    if (y_nodes[i].estimate == e) return i;
  return std::nullopt;
}

bool is_goal(const mission::MissionModel& m, const StateEstimate& e) {
  const des::StateSet& nav = e.cells.at(0);
  return nav.count() == 1 && nav.test(m.zone_state(m.map().or_zone));
}

std::optional<StateEstimate> initial_y(const mission::MissionModel& m,
                                       const StateEstimate& raw) {
  const des::CompositeModel& c = m.composite();
  if (!c.well_formed(raw)) throw des::UsageError("initial_y: malformed estimate");
  StateEstimate closed = c.unobservable_reach(raw, c.make_decision({}));
  if (c.contains_unsafe(closed)) return std::nullopt;
  return closed;
}

std::vector<ControlDecision> candidate_decisions(const mission::MissionModel& m,
                                                 const StateEstimate& y,
                                                 const SynthConfig& cfg) {
  const des::CompositeModel& c = m.composite();
  std::vector<EventId> feas = c.feasible_controllable(y);
  if (feas.empty()) return {c.make_decision({})};
  if (feas.size() > 20)
    throw des::UsageError("too many feasible controllable events for subset enumeration");

  std::vector<std::vector<EventId>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << feas.size()); ++mask) {
    std::vector<EventId> g;
    for (std::size_t i = 0; i < feas.size(); ++i)
      if (mask & (1u << i)) g.push_back(feas[i]);
    subsets.push_back(std::move(g));
  }

  auto names_of = [&](const std::vector<EventId>& g) {
    std::vector<std::string> n;
    for (EventId e : g) n.push_back(c.alphabet()[e].name);
    return n;
  };
  // Tie-break everything by (size, event names) so each ordering is total
  // and runs are reproducible.
  auto lex_less = [&](const std::vector<EventId>& a, const std::vector<EventId>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return names_of(a) < names_of(b);
  };

  switch (cfg.decision_order) {
    case DecisionOrder::PreferMove: {
      auto klass = [&](const std::vector<EventId>& g) {
        if (g.size() == 1) {
          if (m.is_move(g[0])) return 0;
          if (g[0] == m.return_event()) return 1;
          if (m.is_search(g[0])) return 2;
        }
        return 3;
      };
      std::sort(subsets.begin(), subsets.end(),
                [&](const auto& a, const auto& b) {
                  int ka = klass(a), kb = klass(b);
                  if (ka != kb) return ka < kb;
                  return lex_less(a, b);
                });
      break;
    }
    case DecisionOrder::Minimal:
      std::sort(subsets.begin(), subsets.end(), lex_less);
      break;
    case DecisionOrder::MaxPermissive:
      std::sort(subsets.begin(), subsets.end(),
                [&](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return names_of(a) < names_of(b);
                });
      break;
    case DecisionOrder::Randomized: {
      std::sort(subsets.begin(), subsets.end(), lex_less);
      std::mt19937_64 rng(cfg.seed ^ y.hash());
      std::shuffle(subsets.begin(), subsets.end(), rng);
      break;
    }
  }

  std::vector<ControlDecision> out;
  out.reserve(subsets.size());
  for (const auto& g : subsets) out.push_back(c.make_decision(g));
  return out;
}

namespace {

// Shared graph-building state for both exploration modes.
struct Builder {
  const mission::MissionModel& m;
  const des::CompositeModel& comp;
  const SynthConfig& cfg;
  Rbts g;
  std::unordered_map<StateEstimate, std::size_t, des::StateEstimateHash> index;
  std::size_t nodes_made = 0;

  explicit Builder(const mission::MissionModel& mm, const SynthConfig& c)
      : m(mm), comp(mm.composite()), cfg(c) {}

  void charge() {
    if (++nodes_made > cfg.node_budget)
      throw BudgetExceeded("node budget of " + std::to_string(cfg.node_budget) +
                           " exceeded");
  }

  std::size_t intern(const StateEstimate& e) {
    if (auto it = index.find(e); it != index.end()) return it->second;
    charge();
    std::size_t i = g.y_nodes.size();
    g.y_nodes.push_back(YNode{e, is_goal(m, e), false, {}, std::nullopt});
    index.emplace(e, i);
    return i;
  }

  std::size_t make_z(std::size_t yi, ControlDecision d) {
    charge();
    std::size_t zi = g.z_nodes.size();
    g.z_nodes.push_back(ZNode{yi, std::move(d), ZStatus::Losing, {}});
    return zi;
  }

  // Evaluates pruning rules for decision d at the (already closed) estimate.
  // On survival fills the successor estimates; on pruning sets the status.
  bool expand(std::size_t zi, const StateEstimate& est,
              std::vector<std::pair<EventId, StateEstimate>>& succs) {
    ZNode& z = g.z_nodes[zi];
    StateEstimate closed = comp.unobservable_reach(est, z.decision);
    if (comp.contains_unsafe(closed)) {
      z.status = ZStatus::PrunedUnsafe;
      return false;
    }
    std::vector<EventId> obs = comp.feasible_observable(closed, z.decision);
    if (obs.empty()) {
      z.status = ZStatus::PrunedStall;
      return false;
    }
    succs.clear();
    for (EventId e : obs) {
      StateEstimate next = comp.observe(closed, z.decision, e);
      if (comp.contains_unsafe(next)) {
        z.status = ZStatus::PrunedUnsafe;
        return false;
      }
      succs.emplace_back(e, std::move(next));
    }
    return true;
  }

  // Drops Z-nodes orphaned by re-exploration passes and renumbers.
  void compact() {
    std::vector<std::size_t> remap(g.z_nodes.size(), SIZE_MAX);
    std::vector<ZNode> kept;
    for (YNode& y : g.y_nodes)
      for (std::size_t& zi : y.z) {
        if (remap[zi] == SIZE_MAX) {
          remap[zi] = kept.size();
          kept.push_back(std::move(g.z_nodes[zi]));
        }
        zi = remap[zi];
      }
    for (YNode& y : g.y_nodes)
      if (y.strategy_z) y.strategy_z = remap[*y.strategy_z];
    g.z_nodes = std::move(kept);
  }
};

// --- depth-first mode -------------------------------------------------
//
// Verdicts are memoized.  A Winning verdict is sound anywhere: the chosen
// decision's successors all settled strictly earlier, so strategies can
// never loop back into an open search path.  A Losing verdict holds only
// on paths that still contain every ancestor whose revisit-cut the verdict
// relied on; that set travels with the memo entry and is re-checked.
struct DfsSolver : Builder {
  using Builder::Builder;

  struct Memo {
    bool settled = false;
    bool winning = false;
    std::set<std::size_t> responsible;  // revisit-cut ancestors (lose only)
  };
  std::vector<Memo> memo;
  std::vector<char> on_path;

  void grow(std::size_t n) {
    if (memo.size() < n) {
      memo.resize(n);
      on_path.resize(n, 0);
    }
  }

  bool solve(std::size_t yi, std::set<std::size_t>& responsible_out) {
    grow(g.y_nodes.size());
    if (g.y_nodes[yi].goal) {
      g.y_nodes[yi].winning = true;
      return true;
    }
    Memo& me = memo[yi];
    if (me.settled) {
      if (me.winning) return true;
      bool applicable = true;
      for (std::size_t a : me.responsible)
        if (!on_path[a]) {
          applicable = false;
          break;
        }
      if (applicable) {
        responsible_out.insert(me.responsible.begin(), me.responsible.end());
        return false;
      }
      // The old losing verdict leaned on ancestors that are no longer on
      // the path; re-explore from scratch.
      me = Memo{};
      g.y_nodes[yi].z.clear();
    }

    on_path[yi] = 1;
    std::set<std::size_t> resp;  // reasons if every decision fails
    bool won = false;

    for (ControlDecision& d : candidate_decisions(m, g.y_nodes[yi].estimate, cfg)) {
      std::size_t zi = make_z(yi, std::move(d));
      g.y_nodes[yi].z.push_back(zi);
      std::vector<std::pair<EventId, StateEstimate>> succs;
      if (!expand(zi, g.y_nodes[yi].estimate, succs)) continue;

      bool all_win = true;
      for (auto& [e, next] : succs) {
        std::size_t si = intern(next);
        grow(g.y_nodes.size());
        g.z_nodes[zi].successors.push_back({e, si});
        if (!all_win) continue;  // keep recording edges, stop solving
        if (on_path[si]) {
          // Revisit of an open estimate: losing for this decision.
          resp.insert(si);
          all_win = false;
          continue;
        }
        std::set<std::size_t> sub;
        if (solve(si, sub)) continue;
        resp.insert(sub.begin(), sub.end());
        all_win = false;
      }
      if (all_win) {
        g.z_nodes[zi].status = ZStatus::Winning;
        g.y_nodes[yi].winning = true;
        g.y_nodes[yi].strategy_z = zi;
        won = true;
        break;  // first winning decision suffices
      }
      g.z_nodes[zi].status = ZStatus::Losing;
    }

    on_path[yi] = 0;
    Memo& me2 = memo[yi];  // memo may have been reallocated by grow()
    me2.settled = true;
    me2.winning = won;
    if (!won) {
      resp.erase(yi);  // cuts against ourselves hold on every re-entry
      me2.responsible = resp;
      responsible_out.insert(resp.begin(), resp.end());
    }
    return won;
  }
};

// --- breadth-first mode -----------------------------------------------
//
// Builds the entire pruned graph level by level, then solves it as a
// least fixpoint.  No revisit rule is needed: the rank argument below
// yields an acyclic strategy, and a winning strategy here maps back to a
// depth-first win (and vice versa), so the two modes agree on verdicts.
struct BfsSolver : Builder {
  using Builder::Builder;

  std::vector<std::size_t> rank;  // fixpoint round of first win

  void run(std::size_t y0) {
    std::deque<std::size_t> frontier{y0};
    std::vector<char> expanded;
    while (!frontier.empty()) {
      std::size_t yi = frontier.front();
      frontier.pop_front();
      if (yi < expanded.size() && expanded[yi]) continue;
      if (expanded.size() <= yi) expanded.resize(yi + 1, 0);
      expanded[yi] = 1;
      if (g.y_nodes[yi].goal) continue;
      for (ControlDecision& d : candidate_decisions(m, g.y_nodes[yi].estimate, cfg)) {
        std::size_t zi = make_z(yi, std::move(d));
        g.y_nodes[yi].z.push_back(zi);
        std::vector<std::pair<EventId, StateEstimate>> succs;
        if (!expand(zi, g.y_nodes[yi].estimate, succs)) continue;
        for (auto& [e, next] : succs) {
          std::size_t si = intern(next);
          g.z_nodes[zi].successors.push_back({e, si});
          frontier.push_back(si);
        }
      }
    }

    constexpr std::size_t kUnsolved = std::numeric_limits<std::size_t>::max();
    rank.assign(g.y_nodes.size(), kUnsolved);
    for (std::size_t i = 0; i < g.y_nodes.size(); ++i)
      if (g.y_nodes[i].goal) rank[i] = 0;
    for (std::size_t round = 1;; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < g.y_nodes.size(); ++i) {
        if (rank[i] != kUnsolved) continue;
        for (std::size_t zi : g.y_nodes[i].z) {
          const ZNode& z = g.z_nodes[zi];
          if (z.status == ZStatus::PrunedUnsafe || z.status == ZStatus::PrunedStall)
            continue;
          bool all = !z.successors.empty();
          for (const ObsEdge& s : z.successors)
            if (rank[s.y] == kUnsolved || rank[s.y] >= round) {
              all = false;
              break;
            }
          if (all) {
            rank[i] = round;
            changed = true;
            break;
          }
        }
      }
      if (!changed) break;
    }

    for (std::size_t i = 0; i < g.y_nodes.size(); ++i) {
      if (rank[i] == kUnsolved) continue;
      g.y_nodes[i].winning = true;
      if (g.y_nodes[i].goal) continue;
      // First decision (in candidate order) that wins strictly downhill in
      // rank; one exists by construction of the fixpoint.
      for (std::size_t zi : g.y_nodes[i].z) {
        const ZNode& z = g.z_nodes[zi];
        if (z.status == ZStatus::PrunedUnsafe || z.status == ZStatus::PrunedStall)
          continue;
        bool ok = !z.successors.empty();
        for (const ObsEdge& s : z.successors)
          if (rank[s.y] == kUnsolved || rank[s.y] >= rank[i]) {
            ok = false;
            break;
          }
        if (ok) {
          g.y_nodes[i].strategy_z = zi;
          break;
        }
      }
      for (std::size_t zi : g.y_nodes[i].z) {
        ZNode& z = g.z_nodes[zi];
        if (z.status == ZStatus::PrunedUnsafe || z.status == ZStatus::PrunedStall)
          continue;
        bool all = !z.successors.empty();
        for (const ObsEdge& s : z.successors)
          if (rank[s.y] == kUnsolved) {
            all = false;
            break;
          }
        z.status = all ? ZStatus::Winning : ZStatus::Losing;
      }
    }
  }
};

}  // namespace

Rbts build_rbts(const mission::MissionModel& m, const StateEstimate& y0,
                const SynthConfig& cfg) {
  const des::CompositeModel& c = m.composite();
  if (!c.well_formed(y0)) throw des::UsageError("build_rbts: malformed estimate");
  if (c.contains_unsafe(c.unobservable_reach(y0, c.make_decision({}))))
    throw des::UsageError("build_rbts: initial estimate is not safe; use initial_y");

  if (cfg.exploration == Exploration::DepthFirst) {
    DfsSolver s(m, cfg);
    std::size_t root = s.intern(y0);
    std::set<std::size_t> resp;
    s.g.recoverable = s.solve(root, resp);
    s.g.initial = root;
    s.compact();
    return std::move(s.g);
  }
  BfsSolver s(m, cfg);
  std::size_t root = s.intern(y0);
  s.run(root);
  s.g.initial = root;
  s.g.recoverable = s.g.y_nodes[root].winning;
  s.compact();
  return std::move(s.g);
}

}  // namespace swarm::rbts
