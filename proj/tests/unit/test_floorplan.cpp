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

#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "bevsim/bytes.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/raster.hpp"
#include "test_util.hpp"

namespace bevsim
{
namespace
{

using test::error_of;

// Free-space components, computed here without the library's BFS.
int free_components(const LabelGrid & g)
{
  std::vector<int> seen(g.size(), 0);
  int count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (seen[i] || !is_free_class(g.values()[i])) {
      continue;
    }
    ++count;
    std::deque<std::size_t> q{i};
    seen[i] = 1;
    while (!q.empty()) {
      Cell c = g.cell(q.front());
      q.pop_front();
      for (Cell d : kNeighbors4) {
        Cell n = c + d;
        if (g.contains(n) && !seen[g.index(n)] && is_free_class(g[n])) {
          seen[g.index(n)] = 1;
          q.push_back(g.index(n));
        }
      }
    }
  }
  return count;
}

TEST(TinyTwoRoom, MatchesTheDrawing)
{
  Floorplan tiny = tiny_two_room();
  EXPECT_EQ(tiny.labels, test::grid_from_rows(test::tiny_rows()));
  ASSERT_EQ(tiny.rooms.size(), 2u);
  EXPECT_EQ(tiny.rooms[0].cls, ClassId::kBedroom);
  EXPECT_EQ(tiny.rooms[0].cells.size(), 8u);
  EXPECT_EQ(tiny.rooms[1].cls, ClassId::kLivingRoom);
  EXPECT_EQ(tiny.rooms[1].cells.size(), 4u);
  ASSERT_EQ(tiny.doors.size(), 1u);
  EXPECT_EQ(tiny.doors[0].cell, (Cell{3, 4}));
  EXPECT_EQ(tiny.entrance, (Cell{3, 6}));
  EXPECT_TRUE(validate_floorplan(tiny).ok()) << validate_floorplan(tiny).to_string();
}

TEST(Validate, DoorwayRewrittenToWallCutsTheBedroomOff)
{
  Floorplan tiny = tiny_two_room();
  tiny.labels.at(3, 4) = ClassId::kWall;
  tiny.doors.clear();
  ValidationReport report = validate_floorplan(tiny);
  EXPECT_TRUE(report.has(ViolationKind::kUnreachable)) << report.to_string();
}

TEST(Validate, NonOutsideBorderCell)
{
  Floorplan tiny = tiny_two_room();
  tiny.labels.at(0, 3) = ClassId::kWall;
  EXPECT_TRUE(validate_floorplan(tiny).has(ViolationKind::kBorder));
}

TEST(Validate, QuotaChecksNeedTheSpec)
{
  Floorplan tiny = tiny_two_room();
  FloorplanSpec spec;
  spec.quota[0] = {2, 3};
  EXPECT_TRUE(validate_floorplan(tiny).ok());
  EXPECT_TRUE(validate_floorplan(tiny, &spec).has(ViolationKind::kQuota));
}

TEST(Validate, DoorwayTouchingOneRoomOnly)
{
  Floorplan tiny = tiny_two_room();
  tiny.labels.at(2, 1) = ClassId::kDoorway;
  tiny = floorplan_from_labels(tiny.labels);
  EXPECT_TRUE(validate_floorplan(tiny).has(ViolationKind::kDoorAdjacency));
}

TEST(Generate, SameSpecSameBytes)
{
  FloorplanSpec spec;
  spec.seed = 99;
  EXPECT_EQ(encode_raster(generate_floorplan(spec).labels),
    encode_raster(generate_floorplan(spec).labels));
  spec.seed = 100;
  EXPECT_NE(generate_floorplan(spec).labels, generate_floorplan(FloorplanSpec{}).labels);
}

TEST(Generate, GoldenRasterChecksums)
{
  // Pinned outputs of the frozen generator (mt19937_64, BSP, 28x28 default).
  const std::pair<std::uint64_t, std::uint32_t> golden[] = {
    {0, 0x7828447Eu},
    {1, 0xDC425AF5u},
    {2, 0xFCDFA016u},
    {42, 0xD937A451u},
    {123456789, 0x7122BFE4u},
  };
  for (auto [seed, crc] : golden) {
    FloorplanSpec spec;
    spec.seed = seed;
    EXPECT_EQ(crc32(encode_raster(generate_floorplan(spec).labels)), crc) << "seed " << seed;
  }
}

TEST(Generate, TwoRoomQuota)
{
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    FloorplanSpec spec;
    spec.seed = seed;
    spec.min_rooms = 2;
    spec.max_rooms = 2;
    spec.quota = {{{1, 1}, {1, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}};
    Floorplan plan = generate_floorplan(spec);
    ASSERT_TRUE(validate_floorplan(plan, &spec).ok());
    // Count components straight from the labels.
    Floorplan rebuilt = floorplan_from_labels(plan.labels);
    std::multiset<ClassId> classes;
    for (const auto & room : rebuilt.rooms) {
      classes.insert(room.cls);
    }
    EXPECT_EQ(classes, (std::multiset<ClassId>{ClassId::kBedroom, ClassId::kLivingRoom}));
  }
}

TEST(Generate, ThousandSeedsValidate)
{
  FloorplanSpec spec;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    spec.seed = seed * 7919 + 3;
    Floorplan plan = generate_floorplan(spec);
    ValidationReport report = validate_floorplan(plan, &spec);
    ASSERT_TRUE(report.ok()) << "seed " << spec.seed << ": " << report.to_string();
    ASSERT_EQ(free_components(plan.labels), 1) << "seed " << spec.seed;
  }
}

TEST(Generate, PlanProperties)
{
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FloorplanSpec spec;
    spec.seed = seed;
    spec.height = 12 + static_cast<int>(seed % 20);
    spec.width = 12 + static_cast<int>((seed * 3) % 20);
    Floorplan plan = generate_floorplan(spec);
    const LabelGrid & g = plan.labels;
    ASSERT_EQ(g.height(), spec.height);
    ASSERT_EQ(g.width(), spec.width);
    for (int r = 0; r < g.height(); ++r) {
      for (int c = 0; c < g.width(); ++c) {
        bool border = r == 0 || c == 0 || r == g.height() - 1 || c == g.width() - 1;
        if (border) {
          EXPECT_EQ(g.at(r, c), ClassId::kOutside);
        }
        if (g.at(r, c) == ClassId::kDoorway) {
          std::set<int> rooms;
          for (Cell d : kNeighbors4) {
            Cell n = Cell{r, c} + d;
            for (std::size_t k = 0; k < plan.rooms.size(); ++k) {
              const auto & cells = plan.rooms[k].cells;
              if (std::binary_search(cells.begin(), cells.end(), n)) {
                rooms.insert(static_cast<int>(k));
              }
            }
          }
          EXPECT_EQ(rooms.size(), 2u) << "door at " << r << "," << c << " seed " << seed;
        }
      }
    }
    ASSERT_TRUE(plan.entrance.has_value());
    EXPECT_EQ(g[*plan.entrance], ClassId::kEntranceDoor);
    bool next_to_living = false;
    for (Cell d : kNeighbors4) {
      Cell n = *plan.entrance + d;
      next_to_living |= g.contains(n) && g[n] == ClassId::kLivingRoom;
    }
    EXPECT_TRUE(next_to_living) << "seed " << seed;
  }
}

TEST(Generate, InvalidSpecsNameTheField)
{
  FloorplanSpec spec;
  spec.min_room_side = 1;
  try {
    generate_floorplan(spec);
    FAIL() << "expected a config error";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("min_room_side"), std::string::npos);
  }
  spec = FloorplanSpec{};
  spec.height = 7;
  EXPECT_EQ(error_of([&] {validate_spec(spec);}), ErrorCode::kConfig);
  spec = FloorplanSpec{};
  spec.quota[1] = {0, 0};
  EXPECT_EQ(error_of([&] {validate_spec(spec);}), ErrorCode::kConfig);
  spec = FloorplanSpec{};
  spec.min_rooms = 5;
  spec.max_rooms = 4;
  EXPECT_EQ(error_of([&] {validate_spec(spec);}), ErrorCode::kConfig);
}

TEST(Generate, ImpossibleLayoutReportsTheSeed)
{
  FloorplanSpec spec;
  spec.height = 10;
  spec.width = 10;
  spec.seed = 4242;
  spec.min_rooms = 6;
  spec.max_rooms = 6;
  spec.quota = {{{1, 3}, {1, 1}, {1, 1}, {1, 2}, {0, 1}, {0, 1}}};
  try {
    generate_floorplan(spec);
    FAIL() << "expected a generation failure";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kGenerationFailure);
    EXPECT_NE(std::string(e.what()).find("4242"), std::string::npos);
  }
}

TEST(Sidecar, SaveLoadKeepsSeedAndStructure)
{
  test::TempDir dir;
  FloorplanSpec spec;
  spec.seed = 31337;
  Floorplan plan = generate_floorplan(spec);
  save_floorplan(plan, dir / "p.semgrid", dir / "p.meta");
  Floorplan back = load_floorplan(dir / "p.semgrid");
  EXPECT_EQ(back.labels, plan.labels);
  EXPECT_EQ(back.seed, 31337u);
  EXPECT_EQ(back.rooms.size(), plan.rooms.size());
  EXPECT_EQ(back.doors.size(), plan.doors.size());
  EXPECT_EQ(back.entrance, plan.entrance);
  std::string meta = sidecar_text(plan);
  EXPECT_NE(meta.find("seed=31337"), std::string::npos);
}

TEST(Reachable, TinyFreeCells)
{
  Floorplan tiny = tiny_two_room();
  BitMask reach = reachable_free(tiny, {2, 2});
  EXPECT_EQ(count_set(reach), 8u + 4u + 1u + 1u);
  EXPECT_EQ(reach.at(3, 6), 1);
}

}  // namespace
}  // namespace bevsim
