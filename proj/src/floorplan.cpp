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

#include "bevsim/floorplan.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bevsim/raster.hpp"
#include "bevsim/rng.hpp"

namespace bevsim
{

namespace
{

struct Rect
{
  int r0, c0, r1, c1;  // inclusive

  int height() const {return r1 - r0 + 1;}
  int width() const {return c1 - c0 + 1;}
  long long area() const {return static_cast<long long>(height()) * width();}
};

struct Cut
{
  bool vertical;  // vertical cut: wall column `line`, rows lo..hi
  int line;
  int lo, hi;
};

void spec_error(const std::string & field, const std::string & why)
{
  fail(ErrorCode::kConfig, field + ": " + why);
}

// Size preference used when handing classes to leaves: lower ranks get larger rooms.
int size_rank(ClassId c)
{
  switch (c) {
    case ClassId::kBedroom: return 0;
    case ClassId::kKitchen: return 1;
    case ClassId::kBalcony: return 2;
    case ClassId::kBathroom: return 3;
    default: return 4;
  }
}

std::optional<LabelGrid> try_generate(const FloorplanSpec & spec, std::uint64_t attempt_seed)
{
  Rng rng(attempt_seed);
  const int s = spec.min_room_side;

  // Footprint (outer wall ring included) inside the 1-cell outside border.
  auto margins = [&](int extent) {
      int slack = std::max(0, extent - 4 - (2 * s + 1));
      int cap = std::min(spec.max_margin, slack / 2);
      int a = static_cast<int>(rng.uniform_int(0, cap));
      int b = static_cast<int>(rng.uniform_int(0, cap));
      return std::pair{a, b};
    };
  auto [mt, mb] = margins(spec.height);
  auto [ml, mr] = margins(spec.width);
  const Rect footprint{1 + mt, 1 + ml, spec.height - 2 - mb, spec.width - 2 - mr};
  const Rect interior{footprint.r0 + 1, footprint.c0 + 1, footprint.r1 - 1, footprint.c1 - 1};

  int lo = spec.min_rooms;
  int hi = spec.max_rooms;
  int quota_min = 0, quota_max = 0;
  for (const auto & q : spec.quota) {
    quota_min += q.min;
    quota_max += q.max;
  }
  lo = std::max(lo, quota_min);
  hi = std::min(hi, quota_max);
  const int room_count = static_cast<int>(rng.uniform_int(lo, hi));

  // Binary space partition.
  std::vector<Rect> leaves{interior};
  std::vector<Cut> cuts;
  while (static_cast<int>(leaves.size()) < room_count) {
    std::vector<std::size_t> splittable;
    long long total = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].height() >= 2 * s + 1 || leaves[i].width() >= 2 * s + 1) {
        splittable.push_back(i);
        total += leaves[i].area();
      }
    }
    if (splittable.empty()) {
      return std::nullopt;
    }
    auto pick = rng.uniform_int(0, total - 1);
    std::size_t chosen = splittable.back();
    for (auto i : splittable) {
      if (pick < leaves[i].area()) {
        chosen = i;
        break;
      }
      pick -= leaves[i].area();
    }
    const Rect leaf = leaves[chosen];
    bool can_v = leaf.width() >= 2 * s + 1;
    bool can_h = leaf.height() >= 2 * s + 1;
    bool vertical = can_v;
    if (can_v && can_h) {
      vertical = rng.uniform_int(0, leaf.width() + leaf.height() - 1) < leaf.width();
    }
    if (vertical) {
      int x = static_cast<int>(rng.uniform_int(leaf.c0 + s, leaf.c1 - s));
      leaves[chosen] = {leaf.r0, leaf.c0, leaf.r1, x - 1};
      leaves.push_back({leaf.r0, x + 1, leaf.r1, leaf.c1});
      cuts.push_back({true, x, leaf.r0, leaf.r1});
    } else {
      int y = static_cast<int>(rng.uniform_int(leaf.r0 + s, leaf.r1 - s));
      leaves[chosen] = {leaf.r0, leaf.c0, y - 1, leaf.c1};
      leaves.push_back({y + 1, leaf.c0, leaf.r1, leaf.c1});
      cuts.push_back({false, y, leaf.c0, leaf.c1});
    }
  }

  // Quota-respecting class multiset.
  std::array<int, kNumRegionClasses> counts{};
  int assigned = 0;
  for (int k = 0; k < kNumRegionClasses; ++k) {
    counts[static_cast<std::size_t>(k)] = spec.quota[static_cast<std::size_t>(k)].min;
    assigned += counts[static_cast<std::size_t>(k)];
  }
  while (assigned < room_count) {
    std::vector<int> open;
    for (int k = 0; k < kNumRegionClasses; ++k) {
      if (counts[static_cast<std::size_t>(k)] < spec.quota[static_cast<std::size_t>(k)].max) {
        open.push_back(k);
      }
    }
    auto k = open[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(open.size()) - 1))];
    ++counts[static_cast<std::size_t>(k)];
    ++assigned;
  }

  // Living room: largest leaf on the footprint boundary.
  auto on_boundary = [&](const Rect & r) {
      return r.r0 == interior.r0 || r.c0 == interior.c0 || r.r1 == interior.r1 ||
             r.c1 == interior.c1;
    };
  std::vector<ClassId> leaf_class(leaves.size(), ClassId::kBedroom);
  std::size_t living = leaves.size();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (on_boundary(leaves[i]) && (living == leaves.size() || leaves[i].area() > leaves[living].area())) {
      living = i;
    }
  }
  leaf_class[living] = ClassId::kLivingRoom;
  std::vector<ClassId> others;
  for (int k = 0; k < kNumRegionClasses; ++k) {
    int n = counts[static_cast<std::size_t>(k)] - (k == index_of(ClassId::kLivingRoom) ? 1 : 0);
    for (int j = 0; j < n; ++j) {
      others.push_back(static_cast<ClassId>(k));
    }
  }
  rng.shuffle(std::span<ClassId>(others));
  std::stable_sort(others.begin(), others.end(),
    [](ClassId a, ClassId b) {return size_rank(a) < size_rank(b);});
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (i != living) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(),
    [&](std::size_t a, std::size_t b) {return leaves[a].area() > leaves[b].area();});
  for (std::size_t j = 0; j < order.size(); ++j) {
    leaf_class[order[j]] = others[j];
  }

  LabelGrid labels(spec.height, spec.width, ClassId::kOutside);
  for (int r = footprint.r0; r <= footprint.r1; ++r) {
    for (int c = footprint.c0; c <= footprint.c1; ++c) {
      labels.at(r, c) = ClassId::kWall;
    }
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (int r = leaves[i].r0; r <= leaves[i].r1; ++r) {
      for (int c = leaves[i].c0; c <= leaves[i].c1; ++c) {
        labels.at(r, c) = leaf_class[i];
      }
    }
  }

  // One doorway per cut, uniform over positions with rooms on both sides.
  for (const Cut & cut : cuts) {
    std::vector<Cell> candidates;
    for (int p = cut.lo; p <= cut.hi; ++p) {
      Cell cell = cut.vertical ? Cell{p, cut.line} : Cell{cut.line, p};
      Cell a = cut.vertical ? Cell{p, cut.line - 1} : Cell{cut.line - 1, p};
      Cell b = cut.vertical ? Cell{p, cut.line + 1} : Cell{cut.line + 1, p};
      if (is_region_class(labels[a]) && is_region_class(labels[b])) {
        candidates.push_back(cell);
      }
    }
    if (candidates.empty()) {
      return std::nullopt;
    }
    labels[candidates[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))]] = ClassId::kDoorway;
  }

  // Entrance: non-corner outer-wall cell facing a living-room cell.
  std::vector<Cell> entrances;
  for (int r = footprint.r0; r <= footprint.r1; ++r) {
    for (int c = footprint.c0; c <= footprint.c1; ++c) {
      bool top = r == footprint.r0, bottom = r == footprint.r1;
      bool left = c == footprint.c0, right = c == footprint.c1;
      if ((top || bottom) == (left || right)) {
        continue;  // interior or corner
      }
      Cell inward{r + (top ? 1 : bottom ? -1 : 0), c + (left ? 1 : right ? -1 : 0)};
      if (labels[inward] == ClassId::kLivingRoom) {
        entrances.push_back({r, c});
      }
    }
  }
  if (entrances.empty()) {
    return std::nullopt;
  }
  labels[entrances[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(entrances.size()) - 1))]] = ClassId::kEntranceDoor;
  return labels;
}

}  // namespace

void validate_spec(const FloorplanSpec & spec)
{
  if (spec.height < 8 || spec.height > kRasterMaxSide) {
    spec_error("height", "must be in [8, " + std::to_string(kRasterMaxSide) + "], got " +
      std::to_string(spec.height));
  }
  if (spec.width < 8 || spec.width > kRasterMaxSide) {
    spec_error("width", "must be in [8, " + std::to_string(kRasterMaxSide) + "], got " +
      std::to_string(spec.width));
  }
  if (spec.min_room_side < 2) {
    spec_error("min_room_side", "must be >= 2, got " + std::to_string(spec.min_room_side));
  }
  if (spec.height - 4 < spec.min_room_side || spec.width - 4 < spec.min_room_side) {
    spec_error("min_room_side", "no room of side " + std::to_string(spec.min_room_side) +
      " fits the interior");
  }
  if (spec.max_margin < 0) {
    spec_error("max_margin", "must be >= 0");
  }
  if (spec.min_rooms < 1 || spec.max_rooms < spec.min_rooms) {
    spec_error("room_count_range", "need 1 <= min <= max, got [" + std::to_string(spec.min_rooms) +
      ", " + std::to_string(spec.max_rooms) + "]");
  }
  int quota_min = 0, quota_max = 0;
  for (int k = 0; k < kNumRegionClasses; ++k) {
    const auto & q = spec.quota[static_cast<std::size_t>(k)];
    if (q.min < 0 || q.max < q.min) {
      spec_error("class_quota." + std::string(class_name(static_cast<ClassId>(k))),
        "need 0 <= min <= max");
    }
    quota_min += q.min;
    quota_max += q.max;
  }
  if (spec.quota[static_cast<std::size_t>(index_of(ClassId::kLivingRoom))].min < 1) {
    spec_error("class_quota.living_room", "min must be >= 1 (the entrance opens into it)");
  }
  if (std::max(spec.min_rooms, quota_min) > std::min(spec.max_rooms, quota_max)) {
    spec_error("class_quota", "quotas [" + std::to_string(quota_min) + ", " +
      std::to_string(quota_max) + "] unsatisfiable within room_count_range");
  }
}

Floorplan floorplan_from_labels(LabelGrid labels, std::uint64_t seed)
{
  Floorplan plan;
  plan.seed = seed;
  std::vector<int> owner(labels.size(), -1);
  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      Cell start{r, c};
      if (!is_region_class(labels[start]) || owner[labels.index(start)] >= 0) {
        continue;
      }
      Room room{labels[start], {}};
      int id = static_cast<int>(plan.rooms.size());
      std::deque<Cell> queue{start};
      owner[labels.index(start)] = id;
      while (!queue.empty()) {
        Cell cur = queue.front();
        queue.pop_front();
        room.cells.push_back(cur);
        for (Cell d : kNeighbors4) {
          Cell n = cur + d;
          if (labels.contains(n) && labels[n] == room.cls && owner[labels.index(n)] < 0) {
            owner[labels.index(n)] = id;
            queue.push_back(n);
          }
        }
      }
      std::sort(room.cells.begin(), room.cells.end());
      plan.rooms.push_back(std::move(room));
    }
  }
  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      Cell cell{r, c};
      if (labels[cell] == ClassId::kDoorway) {
        std::vector<int> adjacent;
        for (Cell d : kNeighbors4) {
          Cell n = cell + d;
          if (labels.contains(n) && owner[labels.index(n)] >= 0) {
            adjacent.push_back(owner[labels.index(n)]);
          }
        }
        std::sort(adjacent.begin(), adjacent.end());
        adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
        Door door{cell, -1, -1};
        if (!adjacent.empty()) {door.room_a = adjacent[0];}
        if (adjacent.size() > 1) {door.room_b = adjacent[1];}
        plan.doors.push_back(door);
      } else if (labels[cell] == ClassId::kEntranceDoor && !plan.entrance) {
        plan.entrance = cell;
      }
    }
  }
  plan.labels = std::move(labels);
  return plan;
}

Floorplan generate_floorplan(const FloorplanSpec & spec)
{
  validate_spec(spec);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    std::uint64_t attempt_seed = attempt == 0 ? spec.seed :
      mix_seed(spec.seed, static_cast<std::uint64_t>(attempt));
    auto labels = try_generate(spec, attempt_seed);
    if (!labels) {
      continue;
    }
    Floorplan plan = floorplan_from_labels(std::move(*labels), spec.seed);
    if (validate_floorplan(plan, &spec).ok()) {
      return plan;
    }
  }
  fail(ErrorCode::kGenerationFailure, "no valid floorplan for seed " + std::to_string(spec.seed) +
    " after " + std::to_string(kGenerationRetries) + " attempts");
}

std::string_view violation_name(ViolationKind kind)
{
  switch (kind) {
    case ViolationKind::kShape: return "shape";
    case ViolationKind::kBorder: return "border";
    case ViolationKind::kCoverage: return "coverage";
    case ViolationKind::kRoomOverlap: return "room_overlap";
    case ViolationKind::kRoomConnectivity: return "room_connectivity";
    case ViolationKind::kRoomLabel: return "room_label";
    case ViolationKind::kDoorAdjacency: return "door_adjacency";
    case ViolationKind::kEntrance: return "entrance";
    case ViolationKind::kUnreachable: return "unreachable";
    case ViolationKind::kQuota: return "quota";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const
{
  return std::any_of(violations.begin(), violations.end(),
           [kind](const Violation & v) {return v.kind == kind;});
}

std::string ValidationReport::to_string() const
{
  std::ostringstream out;
  for (const auto & v : violations) {
    out << violation_name(v.kind) << ": " << v.detail << "\n";
  }
  return out.str();
}

ValidationReport validate_floorplan(const Floorplan & plan, const FloorplanSpec * spec)
{
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
      report.violations.push_back({kind, std::move(detail)});
    };
  const LabelGrid & labels = plan.labels;
  if (labels.height() < 3 || labels.width() < 3) {
    add(ViolationKind::kShape, "grid smaller than 3x3");
    return report;
  }

  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      bool border = r == 0 || c == 0 || r == labels.height() - 1 || c == labels.width() - 1;
      if (border && labels.at(r, c) != ClassId::kOutside) {
        add(ViolationKind::kBorder, "border cell (" + std::to_string(r) + ", " +
          std::to_string(c) + ") is " + std::string(class_name(labels.at(r, c))));
      }
    }
  }

  // Rooms: labels, disjointness, connectivity, coverage.
  std::vector<int> owner(labels.size(), -1);
  for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
    const Room & room = plan.rooms[i];
    std::string name = "room " + std::to_string(i) + " (" + std::string(class_name(room.cls)) + ")";
    if (room.cells.empty()) {
      add(ViolationKind::kRoomConnectivity, name + " has no cells");
      continue;
    }
    bool labels_ok = true;
    for (Cell c : room.cells) {
      if (!labels.contains(c)) {
        add(ViolationKind::kRoomLabel, name + " has a cell outside the grid");
        labels_ok = false;
        break;
      }
      if (labels[c] != room.cls) {
        labels_ok = false;
      }
      int & slot = owner[labels.index(c)];
      if (slot >= 0 && slot != static_cast<int>(i)) {
        add(ViolationKind::kRoomOverlap, name + " overlaps room " + std::to_string(slot));
      }
      slot = static_cast<int>(i);
    }
    if (!labels_ok) {
      add(ViolationKind::kRoomLabel, name + " has cells labelled with another class");
      continue;
    }
    // Connectivity within the room's own cell set.
    std::vector<Cell> sorted = room.cells;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> seen(sorted.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      Cell cur = sorted[queue.front()];
      queue.pop_front();
      for (Cell d : kNeighbors4) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), cur + d);
        if (it != sorted.end() && *it == cur + d) {
          auto j = static_cast<std::size_t>(it - sorted.begin());
          if (!seen[j]) {
            seen[j] = 1;
            ++reached;
            queue.push_back(j);
          }
        }
      }
    }
    if (reached != sorted.size()) {
      add(ViolationKind::kRoomConnectivity, name + " is not 4-connected");
    }
  }
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (is_region_class(labels.values()[i]) && owner[i] < 0) {
      ++uncovered;
    }
  }
  if (uncovered > 0) {
    add(ViolationKind::kCoverage, std::to_string(uncovered) + " room cells belong to no room");
  }

  // Doorways join exactly two distinct rooms.
  for (const Door & door : plan.doors) {
    if (!labels.contains(door.cell) || labels[door.cell] != ClassId::kDoorway) {
      add(ViolationKind::kDoorAdjacency, "door at (" + std::to_string(door.cell.row) + ", " +
        std::to_string(door.cell.col) + ") is not a doorway cell");
    }
  }
  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      if (labels.at(r, c) != ClassId::kDoorway) {
        continue;
      }
      std::vector<int> adjacent;
      for (Cell d : kNeighbors4) {
        Cell n = Cell{r, c} + d;
        if (labels.contains(n) && owner[labels.index(n)] >= 0) {
          adjacent.push_back(owner[labels.index(n)]);
        }
      }
      std::sort(adjacent.begin(), adjacent.end());
      adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
      if (adjacent.size() != 2) {
        add(ViolationKind::kDoorAdjacency, "doorway (" + std::to_string(r) + ", " +
          std::to_string(c) + ") touches " + std::to_string(adjacent.size()) + " rooms");
      }
    }
  }

  // Entrance and reachability.
  std::vector<Cell> entrance_cells;
  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      if (labels.at(r, c) == ClassId::kEntranceDoor) {
        entrance_cells.push_back({r, c});
      }
    }
  }
  if (entrance_cells.size() != 1) {
    add(ViolationKind::kEntrance, "expected one entrance_door cell, found " +
      std::to_string(entrance_cells.size()));
  }
  if (!plan.entrance || labels.contains(*plan.entrance) == false ||
    labels[*plan.entrance] != ClassId::kEntranceDoor)
  {
    add(ViolationKind::kEntrance, "entrance does not point at an entrance_door cell");
  } else {
    BitMask reach = reachable_free(plan, *plan.entrance);
    for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
      const Room & room = plan.rooms[i];
      bool any = std::any_of(room.cells.begin(), room.cells.end(),
          [&](Cell c) {return labels.contains(c) && reach[c];});
      if (!any) {
        add(ViolationKind::kUnreachable, "room " + std::to_string(i) + " (" +
          std::string(class_name(room.cls)) + ") unreachable from entrance");
      }
    }
    std::size_t stray = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (is_free_class(labels.values()[i]) && !reach.values()[i]) {
        ++stray;
      }
    }
    if (stray > 0) {
      add(ViolationKind::kUnreachable, std::to_string(stray) +
        " free cells unreachable from entrance");
    }
  }

  if (spec) {
    std::array<int, kNumRegionClasses> counts{};
    for (const Room & room : plan.rooms) {
      if (is_region_class(room.cls)) {
        ++counts[static_cast<std::size_t>(index_of(room.cls))];
      }
    }
    for (int k = 0; k < kNumRegionClasses; ++k) {
      const auto & q = spec->quota[static_cast<std::size_t>(k)];
      int n = counts[static_cast<std::size_t>(k)];
      if (n < q.min || n > q.max) {
        add(ViolationKind::kQuota, std::string(class_name(static_cast<ClassId>(k))) + " count " +
          std::to_string(n) + " outside [" + std::to_string(q.min) + ", " +
          std::to_string(q.max) + "]");
      }
    }
    auto total = static_cast<int>(plan.rooms.size());
    if (total < spec->min_rooms || total > spec->max_rooms) {
      add(ViolationKind::kQuota, "room count " + std::to_string(total) + " outside [" +
        std::to_string(spec->min_rooms) + ", " + std::to_string(spec->max_rooms) + "]");
    }
  }
  return report;
}

Floorplan tiny_two_room()
{
  LabelGrid labels(8, 8, ClassId::kOutside);
  for (int r = 1; r <= 6; ++r) {
    for (int c = 1; c <= 6; ++c) {
      labels.at(r, c) = ClassId::kWall;
    }
  }
  for (int r = 2; r <= 5; ++r) {
    labels.at(r, 2) = ClassId::kBedroom;
    labels.at(r, 3) = ClassId::kBedroom;
    labels.at(r, 5) = ClassId::kLivingRoom;
  }
  labels.at(3, 4) = ClassId::kDoorway;
  labels.at(3, 6) = ClassId::kEntranceDoor;
  return floorplan_from_labels(std::move(labels));
}

BitMask reachable_free(const Floorplan & plan, Cell from)
{
  BitMask reach(plan.labels.height(), plan.labels.width());
  if (!plan.is_free(from)) {
    return reach;
  }
  std::deque<Cell> queue{from};
  reach[from] = 1;
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    for (Cell d : kNeighbors4) {
      Cell n = cur + d;
      if (plan.is_free(n) && !reach[n]) {
        reach[n] = 1;
        queue.push_back(n);
      }
    }
  }
  return reach;
}

std::string sidecar_text(const Floorplan & plan)
{
  std::ostringstream out;
  out << "format=bevsim-floorplan-v1\n";
  out << "seed=" << plan.seed << "\n";
  out << "height=" << plan.labels.height() << "\n";
  out << "width=" << plan.labels.width() << "\n";
  out << "rooms=" << plan.rooms.size() << "\n";
  for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
    const Room & room = plan.rooms[i];
    Cell lo = room.cells.front(), hi = room.cells.front();
    for (Cell c : room.cells) {
      lo = {std::min(lo.row, c.row), std::min(lo.col, c.col)};
      hi = {std::max(hi.row, c.row), std::max(hi.col, c.col)};
    }
    out << "room." << i << "=" << class_name(room.cls) << " " << room.cells.size() << " " <<
      lo.row << " " << lo.col << " " << hi.row << " " << hi.col << "\n";
  }
  out << "doors=" << plan.doors.size() << "\n";
  for (std::size_t i = 0; i < plan.doors.size(); ++i) {
    const Door & d = plan.doors[i];
    out << "door." << i << "=" << d.cell.row << " " << d.cell.col << " " << d.room_a << " " <<
      d.room_b << "\n";
  }
  if (plan.entrance) {
    out << "entrance=" << plan.entrance->row << " " << plan.entrance->col << "\n";
  }
  return out.str();
}

void save_floorplan(const Floorplan & plan, const std::filesystem::path & raster_path,
  const std::filesystem::path & sidecar_path)
{
  write_raster(plan.labels, raster_path);
  write_text_file(sidecar_path, sidecar_text(plan));
}

Floorplan load_floorplan(const std::filesystem::path & raster_path)
{
  LabelGrid labels = read_raster(raster_path);
  std::uint64_t seed = 0;
  auto sidecar = std::filesystem::path(raster_path).replace_extension(".meta");
  std::ifstream in(sidecar);
  std::string line;
  while (in && std::getline(in, line)) {
    if (line.rfind("seed=", 0) == 0) {
      seed = std::stoull(line.substr(5));
    }
  }
  return floorplan_from_labels(std::move(labels), seed);
}

}  // namespace bevsim
