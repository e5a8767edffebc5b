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

#include "bevsim/explorer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>

namespace bevsim
{

namespace
{

void sense(const LabelGrid & labels, ObservationFrame & view, int radius)
{
  for (Cell c : visible_cells(labels, view.pose, radius)) {
    view.explored[c] = 1;
    if (is_obstacle_class(labels[c])) {
      view.obstacles_seen[c] = 1;
    }
    for (int k = 0; k < kNumClasses; ++k) {
      view.local_semantics.at(c, k) = 0.0;
    }
    view.local_semantics.at(c, index_of(labels[c])) = 1.0;
  }
}

}  // namespace

std::vector<Cell> supercover_line(Cell from, Cell to)
{
  const int dx = to.col - from.col;
  const int dy = to.row - from.row;
  const int nx = std::abs(dx);
  const int ny = std::abs(dy);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;

  std::vector<Cell> cells{from};
  Cell p = from;
  for (int ix = 0, iy = 0; ix < nx || iy < ny; ) {
    const long long decision = static_cast<long long>(1 + 2 * ix) * ny -
      static_cast<long long>(1 + 2 * iy) * nx;
    if (decision == 0) {
      // Exactly through a corner: both side cells are touched.
      cells.push_back({p.row, p.col + sx});
      cells.push_back({p.row + sy, p.col});
      p = {p.row + sy, p.col + sx};
      ++ix;
      ++iy;
    } else if (decision < 0) {
      p.col += sx;
      ++ix;
    } else {
      p.row += sy;
      ++iy;
    }
    cells.push_back(p);
  }
  return cells;
}

std::vector<Cell> visible_cells(const LabelGrid & labels, Pose pose, int radius)
{
  std::vector<Cell> out;
  if (!labels.contains(pose)) {
    return out;
  }
  if (radius <= 0) {
    out.push_back(pose);
    return out;
  }
  const long long r2 = static_cast<long long>(radius) * radius;
  auto in_range = [&](Cell c) {
      long long dr = c.row - pose.row;
      long long dc = c.col - pose.col;
      return labels.contains(c) && dr * dr + dc * dc <= r2;
    };
  const int side = 2 * radius + 1;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), 0);
  auto mark = [&](Cell c) {
      seen[static_cast<std::size_t>(c.row - pose.row + radius) * static_cast<std::size_t>(side) +
        static_cast<std::size_t>(c.col - pose.col + radius)] = 1;
    };
  for (int r = pose.row - radius; r <= pose.row + radius; ++r) {
    for (int c = pose.col - radius; c <= pose.col + radius; ++c) {
      if (!in_range({r, c})) {
        continue;
      }
      for (Cell p : supercover_line(pose, {r, c})) {
        if (!labels.contains(p)) {
          break;
        }
        if (in_range(p)) {
          mark(p);
        }
        if (is_obstacle_class(labels[p])) {
          break;
        }
      }
    }
  }
  for (int r = pose.row - radius; r <= pose.row + radius; ++r) {
    for (int c = pose.col - radius; c <= pose.col + radius; ++c) {
      if (seen[static_cast<std::size_t>(r - pose.row + radius) * static_cast<std::size_t>(side) +
        static_cast<std::size_t>(c - pose.col + radius)])
      {
        out.push_back({r, c});
      }
    }
  }
  return out;
}

std::vector<Cell> detect_frontiers(const BitMask & explored, const BitMask & obstacles_seen,
  const FreePredicate & is_free)
{
  require_same_plane(explored, obstacles_seen, "detect_frontiers");
  std::vector<Cell> out;
  for (int r = 0; r < explored.height(); ++r) {
    for (int c = 0; c < explored.width(); ++c) {
      Cell cell{r, c};
      if (!explored[cell] || !is_free(cell)) {
        continue;
      }
      for (Cell d : kNeighbors4) {
        Cell n = cell + d;
        if (explored.contains(n) && !explored[n]) {
          out.push_back(cell);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<Cell> detect_frontiers(const BitMask & explored, const BitMask & obstacles_seen)
{
  return detect_frontiers(explored, obstacles_seen,
           [&](Cell c) {return obstacles_seen[c] == 0;});
}

Cell DistanceField::first_step(Cell goal) const
{
  if (!reachable(goal)) {
    fail(ErrorCode::kSimulationInvariant, "goal (" + std::to_string(goal.row) + ", " +
      std::to_string(goal.col) + ") not reachable");
  }
  Cell cur = goal;
  while (true) {
    int p = parent[cur];
    if (p < 0) {
      return cur;  // goal is the root
    }
    Cell prev = parent.cell(static_cast<std::size_t>(p));
    if (prev == root) {
      return cur;
    }
    cur = prev;
  }
}

DistanceField explored_distances(const ExplorationState & state)
{
  const auto & view = state.view;
  DistanceField field{
    Grid<int>(view.explored.height(), view.explored.width(), -1),
    Grid<int>(view.explored.height(), view.explored.width(), -1),
    view.pose};
  std::deque<Cell> queue{view.pose};
  field.dist[view.pose] = 0;
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    for (Cell d : kNeighbors4) {
      Cell n = cur + d;
      if (!view.explored.contains(n) || !view.explored[n] || view.obstacles_seen[n] ||
        field.dist[n] >= 0)
      {
        continue;
      }
      field.dist[n] = field.dist[cur] + 1;
      field.parent[n] = static_cast<int>(field.dist.index(cur));
      queue.push_back(n);
    }
  }
  return field;
}

ExplorationState begin_exploration(std::shared_ptr<const Floorplan> plan, Pose start, int radius)
{
  if (!plan) {
    fail(ErrorCode::kInvalidArgument, "null floorplan");
  }
  if (!plan->is_free(start)) {
    fail(ErrorCode::kInvalidArgument, "start (" + std::to_string(start.row) + ", " +
      std::to_string(start.col) + ") is not a free cell");
  }
  if (radius < 0) {
    fail(ErrorCode::kInvalidArgument, "sensor radius must be >= 0");
  }
  const int h = plan->labels.height();
  const int w = plan->labels.width();
  ExplorationState state;
  state.view = ObservationFrame{start, BitMask(h, w), BitMask(h, w), BitMask(h, w),
    SemanticGrid(h, w, kNumClasses), 0};
  state.view.trajectory[start] = 1;
  sense(plan->labels, state.view, radius);
  state.plan = std::move(plan);
  return state;
}

ExplorationState advance_toward(const ExplorationState & state, const DistanceField & field,
  Cell goal, int radius)
{
  ExplorationState next = state;
  Cell move = field.first_step(goal);
  if (!state.plan->is_free(move)) {
    fail(ErrorCode::kSimulationInvariant, "path leads onto a non-free cell");
  }
  next.view.pose = move;
  next.view.trajectory[move] = 1;
  sense(state.plan->labels, next.view, radius);
  ++next.view.step;
  return next;
}

ExplorationState step_explore(const ExplorationState & state, int radius)
{
  if (radius < 1) {
    fail(ErrorCode::kInvalidArgument, "exploration needs sensor radius >= 1");
  }
  auto frontiers = detect_frontiers(state.view.explored, state.view.obstacles_seen);
  if (frontiers.empty()) {
    ExplorationState done = state;
    done.complete = true;
    return done;
  }
  DistanceField field = explored_distances(state);
  const Cell * best = nullptr;
  for (const Cell & f : frontiers) {
    if (field.reachable(f) && (!best || field.dist[f] < field.dist[*best])) {
      best = &f;
    }
  }
  if (!best) {
    fail(ErrorCode::kSimulationInvariant, "pose isolated: " + std::to_string(frontiers.size()) +
      " frontiers, none reachable");
  }
  if (field.dist[*best] == 0) {
    fail(ErrorCode::kSimulationInvariant, "frontier at the current pose cannot be resolved");
  }
  return advance_toward(state, field, *best, radius);
}

ExplorationRun run_exploration_full(std::shared_ptr<const Floorplan> plan, Pose start,
  int max_steps, int radius)
{
  if (max_steps < 1) {
    fail(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
  ExplorationRun run;
  ExplorationState state = begin_exploration(std::move(plan), start, radius);
  run.frames.push_back(state.view);
  for (int i = 0; i < max_steps; ++i) {
    ExplorationState next = step_explore(state, radius);
    if (next.complete) {
      run.complete = true;
      return run;
    }
    state = std::move(next);
    run.frames.push_back(state.view);
  }
  run.complete = detect_frontiers(state.view.explored, state.view.obstacles_seen).empty();
  return run;
}

std::vector<ObservationFrame> run_exploration(std::shared_ptr<const Floorplan> plan, Pose start,
  int max_steps, int radius, int keep_first)
{
  if (keep_first < 1) {
    fail(ErrorCode::kInvalidArgument, "keep_first must be >= 1");
  }
  if (max_steps < 1) {
    fail(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
  int steps = std::min(max_steps, keep_first - 1);
  auto run = run_exploration_full(std::move(plan), start, std::max(steps, 1), radius);
  if (run.frames.size() > static_cast<std::size_t>(keep_first)) {
    run.frames.resize(static_cast<std::size_t>(keep_first));
  }
  return std::move(run.frames);
}

}  // namespace bevsim
