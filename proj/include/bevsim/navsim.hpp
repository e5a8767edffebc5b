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


#ifndef BEVSIM__NAVSIM_HPP_
#define BEVSIM__NAVSIM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bevsim/explorer.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/predict.hpp"

namespace bevsim
{

struct NavConfig
{
  ClassId query = ClassId::kBedroom;
  int repredict_every = 5;
  int window = 7;
  double alpha = 0.1;
  int max_steps = 200;
  int radius = kDefaultSensorRadius;
};

/// Throws kConfig naming the field.
void validate_nav_config(const NavConfig & cfg);

/// BFS length through GT free cells from `from` to the nearest of `targets`.
std::optional<int> shortest_path_len(const Floorplan & plan, Pose from,
  std::span<const Cell> targets);

/// All cells of class `cls`, sorted.
std::vector<Cell> cells_of_class(const LabelGrid & labels, ClassId cls);

/**
 * U(f) = (sum of area_prob over unexplored cells in the window x window box
 * centred at f) / (1 + alpha * dist(f)).
 */
std::vector<double> score_frontiers(std::span<const Cell> frontiers, const RealGrid & area_prob,
  const BitMask & explored, std::span<const int> dists, const NavConfig & cfg);

/// Index of the best frontier: highest utility, then shortest distance, then smallest (row, col).
std::size_t select_frontier(std::span<const Cell> frontiers, std::span<const double> utilities,
  std::span<const int> dists);

struct FrontierChoice
{
  int step = 0;
  Cell frontier;
  double utility = 0.0;

  friend bool operator==(const FrontierChoice &, const FrontierChoice &) = default;
};

struct EpisodeLog
{
  std::uint32_t plan_id = 0;
  std::uint64_t episode_seed = 0;
  Pose start;
  ClassId query = ClassId::kBedroom;
  bool success = false;
  bool target_absent = false;  // vacuous failure: the plan has no cell of the query class
  int steps = 0;
  double exploration_ratio = 0.0;
  double spl = 0.0;
  int shortest = -1;  // L*, -1 when unreachable
  std::vector<Pose> poses;
  std::vector<FrontierChoice> frontier_choices;

  friend bool operator==(const EpisodeLog &, const EpisodeLog &) = default;
};

/**
 * Closed loop: sense, stop on success, detect frontiers, refresh the query
 * heatmap every `repredict_every` steps when a predictor is given, score
 * frontiers (zero heatmap without one), move one cell toward the best. Ends
 * on success, frontier exhaustion or max_steps.
 */
EpisodeLog run_navigation_episode(const Floorplan & plan, Pose start, const NavConfig & cfg,
  Predictor * predictor = nullptr);

/// One line, fixed field order.
std::string format_episode(const EpisodeLog & log);
/// Throws kCorruptRecord on malformed input.
EpisodeLog parse_episode(std::string_view line);

struct NavSummary
{
  std::size_t episodes = 0;
  double mean_steps = 0.0;
  double mean_exploration_ratio = 0.0;
  double mean_spl = 0.0;
  double success_rate = 0.0;
};

/// Arithmetic means; SPL counts failures as 0. Throws kInvalidArgument on an empty list.
NavSummary aggregate(std::span<const EpisodeLog> logs);
std::string format_summary(std::string_view arm, const NavSummary & s);

struct PairedReport
{
  NavSummary baseline;
  NavSummary guided;
  std::vector<int> step_deltas;  // baseline steps minus guided steps, per pair
  double step_reduction = 0.0;   // (mean baseline - mean guided) / mean baseline
};

/// Logs are paired by position. Throws kInvalidArgument on unequal or empty lists.
PairedReport compare_arms(std::span<const EpisodeLog> baseline, std::span<const EpisodeLog> guided);
std::string format_paired(const PairedReport & report, std::string_view baseline_name,
  std::string_view guided_name);

struct EpisodeSetup
{
  Pose start;
  ClassId query = ClassId::kBedroom;
  std::uint64_t seed = 0;
};

/**
 * Query drawn from the region classes present in the plan, start drawn from
 * free cells of a different class reachable from the query cells.
 * Deterministic in `seed`.
 */
EpisodeSetup sample_episode(const Floorplan & plan, std::uint64_t seed);

}  // namespace bevsim

#endif  // BEVSIM__NAVSIM_HPP_
