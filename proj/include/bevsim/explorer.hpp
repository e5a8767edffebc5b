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

#ifndef BEVSIM__EXPLORER_HPP_
#define BEVSIM__EXPLORER_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "bevsim/floorplan.hpp"
#include "bevsim/grid.hpp"

namespace bevsim
{

inline constexpr int kDefaultSensorRadius = 8;
inline constexpr int kDefaultKeepFrames = 20;
inline constexpr int kDefaultTrainFrames = 10;

/// Immutable snapshot of what the robot knows at one step.
struct ObservationFrame
{
  Pose pose;
  BitMask trajectory;      // visited cells
  BitMask explored;        // sensed cells
  BitMask obstacles_seen;  // sensed wall/outside cells
  SemanticGrid local_semantics;  // one-hot on explored cells, zero elsewhere
  int step = 0;

  friend bool operator==(const ObservationFrame &, const ObservationFrame &) = default;
};

struct ExplorationState
{
  std::shared_ptr<const Floorplan> plan;
  ObservationFrame view;
  bool complete = false;

  const Pose & pose() const {return view.pose;}
  int step() const {return view.step;}
};

/**
 * Cells within Euclidean distance `radius` of `pose` that have line of
 * sight. Rays are supercover lines between cell centres; a wall or outside
 * cell on a ray is itself visible but hides everything behind it. Sorted by
 * (row, col).
 */
std::vector<Cell> visible_cells(const LabelGrid & labels, Pose pose, int radius);

/// Supercover cells from `from` to `to`, both ends included, in ray order.
std::vector<Cell> supercover_line(Cell from, Cell to);

using FreePredicate = std::function<bool (Cell)>;

/// Explored, free cells 4-adjacent to at least one unexplored cell, sorted by (row, col).
std::vector<Cell> detect_frontiers(const BitMask & explored, const BitMask & obstacles_seen,
  const FreePredicate & is_free);
/// Same, treating every explored cell not in `obstacles_seen` as free.
std::vector<Cell> detect_frontiers(const BitMask & explored, const BitMask & obstacles_seen);

/// BFS over explored free cells from the current pose.
struct DistanceField
{
  Grid<int> dist;     // -1 where unreachable
  Grid<int> parent;   // linear index of the predecessor, -1 at the root
  Cell root;

  bool reachable(Cell c) const {return dist.contains(c) && dist[c] >= 0;}
  /// First move from the root toward `goal`; the root itself when goal == root.
  Cell first_step(Cell goal) const;
};

DistanceField explored_distances(const ExplorationState & state);

/// Initial state at `start` with sensing already integrated (step 0).
/// Throws kInvalidArgument unless `start` is a free cell.
ExplorationState begin_exploration(std::shared_ptr<const Floorplan> plan, Pose start, int radius);

/// Moves one cell toward `goal` along the BFS path, senses, and increments the step.
ExplorationState advance_toward(const ExplorationState & state, const DistanceField & field,
  Cell goal, int radius);

/**
 * One frontier-exploration step: nearest frontier by BFS distance through
 * explored free cells (ties to the smallest (row, col)), one cell of motion,
 * then sensing. With no frontier left the state comes back unchanged and
 * marked complete. Throws kSimulationInvariant if frontiers exist but none
 * is reachable, and kInvalidArgument for radius < 1.
 */
ExplorationState step_explore(const ExplorationState & state, int radius);

struct ExplorationRun
{
  std::vector<ObservationFrame> frames;  // frame 0 is the initial sensing
  bool complete = false;
};

/// Runs up to `max_steps` steps; returns every frame.
ExplorationRun run_exploration_full(std::shared_ptr<const Floorplan> plan, Pose start,
  int max_steps, int radius);

/// First `keep_first` frames of the run.
std::vector<ObservationFrame> run_exploration(std::shared_ptr<const Floorplan> plan, Pose start,
  int max_steps, int radius, int keep_first = kDefaultKeepFrames);

}  // namespace bevsim

#endif  // BEVSIM__EXPLORER_HPP_
