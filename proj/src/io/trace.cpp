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

#include "swarm/io/trace.hpp"

#include <cstdio>

namespace swarm::io {

std::string format_trace_record(const TraceRecord& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%.6f %zu ", r.t, r.drone);
  std::string line = head;
  line += r.event;
  line += ' ';
  line += r.mode;
  if (!r.estimate.empty()) {
    line += ' ';
    line += r.estimate;
  }
  return line;
}

std::string format_trace(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const TraceRecord& r : trace) {
    out += format_trace_record(r);
    out += '\n';
  }
  return out;
}

}  // namespace swarm::io
