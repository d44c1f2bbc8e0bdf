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

#ifndef SWARM_IO_TRACE_HPP
#define SWARM_IO_TRACE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace swarm::io {

// One line of a simulation trace.  The estimate is only meaningful for a
// drone that is off the nominal patrol (mode != NOM) and is left empty
// otherwise.
struct TraceRecord {
  double t = 0;  // seconds
  std::size_t drone = 0;
  std::string event;
  std::string mode;
  std::string estimate;

  bool operator==(const TraceRecord&) const = default;
};

// "<seconds, 6 decimals> <drone> <event> <mode> [<estimate>]"
std::string format_trace_record(const TraceRecord& r);

std::string format_trace(const std::vector<TraceRecord>& trace);

}  // namespace swarm::io

#endif
