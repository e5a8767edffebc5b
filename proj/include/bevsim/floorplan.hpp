// Copyright 2026 The bevsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEVSIM__FLOORPLAN_HPP_
#define BEVSIM__FLOORPLAN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bevsim/grid.hpp"

namespace bevsim
{

struct ClassQuota
{
  int min = 0;
  int max = 0;
};

/// Generator parameters. Quotas are indexed by region class id (0-5).
struct FloorplanSpec
{
  int height = 28;
  int width = 28;
  std::uint64_t seed = 0;
  int min_rooms = 3;
  int max_rooms = 6;
  int min_room_side = 3;
  /// Upper bound on the random outside margin around the house footprint.
  int max_margin = 2;
  std::array<ClassQuota, kNumRegionClasses> quota = {{
    {1, 3},  // bedroom
    {1, 1},  // living_room
    {0, 1},  // kitchen
    {0, 2},  // bathroom
    {0, 1},  // balcony
    {0, 1},  // storage
  }};
};

/// Throws kConfig naming the offending field.
void validate_spec(const FloorplanSpec & spec);

struct Room
{
  ClassId cls = ClassId::kBedroom;
  std::vector<Cell> cells;  // sorted by (row, col)
};

struct Door
{
  Cell cell;
  int room_a = -1;
  int room_b = -1;
};

struct Floorplan
{
  LabelGrid labels;
  std::vector<Room> rooms;
  std::vector<Door> doors;
  std::optional<Cell> entrance;
  std::uint64_t seed = 0;

  ClassId at(Cell c) const {return labels[c];}
  bool is_free(Cell c) const {return labels.contains(c) && is_free_class(labels[c]);}
};

/**
 * Rebuilds the room/door/entrance structure from a label raster: rooms are
 * the 4-connected components of region classes in row-major discovery
 * order, doors are doorway cells tagged with their adjacent rooms, and the
 * entrance is the first entrance_door cell.
 */
Floorplan floorplan_from_labels(LabelGrid labels, std::uint64_t seed = 0);

/**
 * Procedural floorplan by recursive binary space partition.
 *
 * Deterministic in `spec`. Throws kConfig for an invalid spec and
 * kGenerationFailure (message carries the seed) when no valid plan was
 * produced within the retry budget.
 */
Floorplan generate_floorplan(const FloorplanSpec & spec);

inline constexpr int kGenerationRetries = 32;

enum class ViolationKind
{
  kShape,
  kBorder,
  kCoverage,
  kRoomOverlap,
  kRoomConnectivity,
  kRoomLabel,
  kDoorAdjacency,
  kEntrance,
  kUnreachable,
  kQuota,
};

std::string_view violation_name(ViolationKind kind);

struct Violation
{
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const {return violations.empty();}
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

/// Structural checks; quota checks run only when `spec` is given.
ValidationReport validate_floorplan(const Floorplan & plan, const FloorplanSpec * spec = nullptr);

/**
 * The 8x8 two-room fixture: outside ring, wall ring, 4x2 bedroom (cols 2-3)
 * and 4x1 living room (col 5) split by a wall at col 4 with a doorway at
 * (3, 4), entrance door at (3, 6).
 */
Floorplan tiny_two_room();

/// Free cells 4-connected to `from` (including it), as a mask.
BitMask reachable_free(const Floorplan & plan, Cell from);

/// key=value sidecar text: seed, dimensions, rooms, doors, entrance.
std::string sidecar_text(const Floorplan & plan);

/// Writes the raster and its key=value sidecar.
void save_floorplan(const Floorplan & plan, const std::filesystem::path & raster_path,
  const std::filesystem::path & sidecar_path);
/// Reads a raster and rebuilds the plan. The seed is taken from the sidecar
/// (same path, `.meta` extension) when one exists.
Floorplan load_floorplan(const std::filesystem::path & raster_path);

}  // namespace bevsim

#endif  // BEVSIM__FLOORPLAN_HPP_
