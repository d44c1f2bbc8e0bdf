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

#ifndef SWARM_MISSION_GRID_MAP_HPP
#define SWARM_MISSION_GRID_MAP_HPP

#include <cstdint>
#include <set>
#include <string>
#include <variant>

#include "swarm/des/errors.hpp"

namespace swarm::mission {

using Zone = std::uint32_t;  // 1-based, row-major, row 1 is north

enum class Dir : std::uint8_t { N, E, S, W };

constexpr Dir kDirs[] = {Dir::N, Dir::E, Dir::S, Dir::W};

const char* dir_name(Dir d);  // "n" "e" "s" "w"

// Quadrants of the operational region, named clockwise from north-west.
enum class SubZone : std::uint8_t { A, B, C, D };

constexpr SubZone kSubZones[] = {SubZone::A, SubZone::B, SubZone::C, SubZone::D};

const char* subzone_name(SubZone s);  // "A" "B" "C" "D"

// Rectangular patrol map: one operational-region zone surrounded by buffer
// zones, some of which may be designated unsafe.
struct GridMap {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  Zone or_zone = 0;
  std::set<Zone> unsafe_zones;
  SubZone base_subzone = SubZone::A;

  std::uint32_t n_zones() const { return rows * cols; }
  std::uint32_t row_of(Zone z) const { return (z - 1) / cols + 1; }
  std::uint32_t col_of(Zone z) const { return (z - 1) % cols + 1; }
  bool valid_zone(Zone z) const { return z >= 1 && z <= n_zones(); }
  bool is_buffer(Zone z) const { return valid_zone(z) && z != or_zone; }

  bool operator==(const GridMap&) const = default;
};

// Validates ranges and that the operational region is not itself unsafe.
GridMap build_grid_map(std::uint32_t rows, std::uint32_t cols, Zone or_zone,
                       std::set<Zone> unsafe_zones, SubZone base_subzone);

// The 5x5 map with central operational region and unsafe zones 10 and 16.
GridMap default_map();

// Where a single move from a buffer zone ends up.
struct NeighborResult {
  enum Kind { Zone_, OrBorder, OffGrid } kind;
  Zone zone = 0;  // set iff kind == Zone_
};

// Grid adjacency from a buffer zone: a neighboring buffer zone, the border
// of the operational region, or off the map entirely.  Asking from the
// operational region itself is a usage error (nominal drones do not use
// the navigation layer).
NeighborResult neighbor(const GridMap& map, Zone z, Dir d);

}  // namespace swarm::mission

#endif
