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


#ifndef BEVSIM__PIPELINE_HPP_
#define BEVSIM__PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bevsim/dataset.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/metrics.hpp"
#include "bevsim/navsim.hpp"
#include "bevsim/predict.hpp"

namespace bevsim
{

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The exception of the
/// lowest failing index is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> & fn);

/// Raster file name of plan `index`: plan_NNNN.semgrid.
std::string plan_file_name(std::size_t index);

/// Plans in `dir` (plan_*.semgrid, sorted); ids are positions in that order.
std::vector<Floorplan> load_plan_dir(const std::filesystem::path & dir);

struct GenOptions
{
  FloorplanSpec spec;  // spec.seed is the seed of plan 0
  int count = 1;
  std::filesystem::path out_dir;
  int jobs = 1;
};

/// Plan i uses seed spec.seed + i. Returns a key=value summary.
std::string run_gen(const GenOptions & opts);

struct ExploreOptions
{
  std::filesystem::path plan;
  std::optional<Cell> start;  // default: drawn from free cells with `seed`
  std::uint64_t seed = 0;
  int max_steps = 200;
  int radius = kDefaultSensorRadius;
  int keep_first = kDefaultKeepFrames;  // frames dumped as rasters
  std::filesystem::path out_dir;
};

/**
 * Writes trajectory.txt (one line per frame) and, for the first keep_first
 * frames, one SEMGRIDv1 raster per layer under frames/ indexed by frames.txt.
 * Returns a key=value summary.
 */
std::string run_explore_cmd(const ExploreOptions & opts);

/// Free cell drawn with `seed`.
Cell sample_free_cell(const Floorplan & plan, std::uint64_t seed);

struct DatasetOptions
{
  std::filesystem::path plans_dir;  // empty: generate `count` plans from `spec`
  FloorplanSpec spec;
  int count = 20;
  std::uint64_t seed = 0;
  int keep_frames = kDefaultKeepFrames;
  int train_frames = kDefaultTrainFrames;
  int max_steps = 200;
  int radius = kDefaultSensorRadius;
  SupervisionMode mode = SupervisionMode::kUnexplored;
  std::filesystem::path out_dir;
  int jobs = 1;
};

/**
 * Writes dataset.ssds, split.txt and class_weights.txt (fit on the train
 * split). Returns a key=value summary.
 */
std::string run_dataset(const DatasetOptions & opts);

struct EvalCmdOptions
{
  std::filesystem::path dataset;
  std::filesystem::path split;  // empty: split.txt next to the dataset, else every plan
  std::string subset = "test";  // train, val, test or all
  PredictorKind predictor = PredictorKind::kOracle;
  std::optional<Endpoint> endpoint;
  EvalOptions metrics;
  std::filesystem::path out_dir;
};

/**
 * Scores one prediction per (plan, step) frame of the subset. Frames with
 * an empty evaluation region are skipped and counted. Writes eval_rows.txt
 * and eval_report.txt; returns the report text.
 */
std::string run_eval(const EvalCmdOptions & opts);

struct NavCmdOptions
{
  std::filesystem::path plans_dir;  // empty: generate `count` plans from `spec`
  FloorplanSpec spec;
  int count = 100;
  int episodes_per_plan = 1;
  std::uint64_t seed = 0;
  NavConfig nav;
  PredictorKind predictor = PredictorKind::kOracle;
  std::optional<Endpoint> endpoint;
  bool paired = true;  // also run the predictor-free baseline
  std::filesystem::path out_dir;
  int jobs = 1;
};

struct NavResult
{
  std::vector<EpisodeLog> baseline;
  std::vector<EpisodeLog> guided;
  std::string report;
};

/// Episode i of plan p uses seed mix_seed(seed, p * episodes_per_plan + i).
NavResult run_nav(const NavCmdOptions & opts);

struct RenderOptions
{
  std::filesystem::path input;  // .ssds dataset or .semgrid plan
  std::size_t record = 0;
  std::string layer = "gt";
  PredictorKind predictor = PredictorKind::kOracle;
  std::optional<Endpoint> endpoint;
  int scale = 1;
  std::filesystem::path out;
};

/**
 * Layers: gt, local_semantics, masked_gt, position, trajectory, obstacles,
 * explored, target, loss_weight; pred, area and prob.<class> run the
 * predictor on the record. A plan raster only offers gt.
 */
std::string run_render(const RenderOptions & opts);

std::vector<std::string> render_layer_names();

}  // namespace bevsim

#endif  // BEVSIM__PIPELINE_HPP_
