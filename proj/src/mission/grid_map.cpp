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

#include "swarm/mission/grid_map.hpp"

namespace swarm::mission {

const char* dir_name(Dir d) {
  switch (d) {
    case Dir::N: return "n";
    case Dir::E: return "e";
    case Dir::S: return "s";
    case Dir::W: return "w";
  }
  return "?";
}

const char* subzone_name(SubZone s) {
  switch (s) {
    case SubZone::A: return "A";
    case SubZone::B: return "B";
    case SubZone::C: return "C";
    case SubZone::D: return "D";
  }
  return "?";
}

GridMap build_grid_map(std::uint32_t rows, std::uint32_t cols, Zone or_zone,
                       std::set<Zone> unsafe_zones, SubZone base_subzone) {
  if (rows == 0 || cols == 0)
    throw des::ModelError("grid must have positive dimensions");
  GridMap m{rows, cols, or_zone, std::move(unsafe_zones), base_subzone};
  if (!m.valid_zone(or_zone))
    throw des::ModelError("or_zone " + std::to_string(or_zone) + " is out of range");
  for (Zone u : m.unsafe_zones) {
    if (!m.valid_zone(u))
      throw des::ModelError("unsafe zone " + std::to_string(u) + " is out of range");
    if (u == or_zone)
      throw des::ModelError("or_zone cannot be an unsafe zone");
  }
  return m;
}

GridMap default_map() { return build_grid_map(5, 5, 13, {10, 16}, SubZone::A); }

NeighborResult neighbor(const GridMap& map, Zone z, Dir d) {
  if (!map.is_buffer(z))
    throw des::UsageError("neighbor: zone " + std::to_string(z) +
                          " is not a buffer zone of the map");
  std::int64_t r = map.row_of(z), c = map.col_of(z);
  switch (d) {
    case Dir::N: r -= 1; break;
    case Dir::E: c += 1; break;
    case Dir::S: r += 1; break;
    case Dir::W: c -= 1; break;
  }
  if (r < 1 || r > map.rows || c < 1 || c > map.cols) return {NeighborResult::OffGrid, 0};
  Zone t = static_cast<Zone>((r - 1) * map.cols + c);
  if (t == map.or_zone) return {NeighborResult::OrBorder, 0};
  return {NeighborResult::Zone_, t};
}

}  // namespace swarm::mission
