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

#ifndef SWARM_IO_COMMANDS_HPP
#define SWARM_IO_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "swarm/mission/grid_map.hpp"

namespace swarm::io {

// Exit-code contract, kept disjoint on purpose: a missing file is not an
// unrecoverable estimate, and neither is an aborted search.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,        // unreadable/malformed inputs, precondition violations
  kUnrecoverable = 2,  // honest verdicts: no solution / a check failed
  kBudgetAbort = 3,    // node budget exhausted before a verdict
};

// One bag of options for every subcommand; each command reads the fields
// it documents and ignores the rest.
struct Options {
  std::string map_file;       // model document; empty = built-in default model
  std::string estimate;       // comma-separated zones: "1,2"
  std::optional<mission::Zone> start;
  std::uint64_t seed = 0;
  std::string order = "prefer-move";  // prefer-move|minimal|random|maxperm
  std::string explore = "dfs";        // dfs|bfs
  std::optional<std::size_t> budget;  // else $SWARMREC_BUDGET, else 1e6
  std::string durations;              // "search,move,return,inner" seconds
  std::string loss = "never";         // never|always|p=<prob>
  std::size_t drones = 10;
  std::string out_file;    // synth/export/dump artifact ("" or "-" = stdout)
  std::string dot_file;    // cmd_synth: optional game export
  std::string trace_file;  // cmd_simulate: trace target ("" = stdout)
  std::string automaton;   // cmd_export_dot: automaton name instead of the game
};

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err);
int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err);
int cmd_benchmark(const Options& o, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& o, std::ostream& out, std::ostream& err);
int cmd_export_dot(const Options& o, std::ostream& out, std::ostream& err);
int cmd_dump_model(const Options& o, std::ostream& out, std::ostream& err);

}  // namespace swarm::io

#endif
