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

#ifndef BEVSIM__DATASET_HPP_
#define BEVSIM__DATASET_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bevsim/explorer.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/grid.hpp"

namespace bevsim
{

/// Which cells carry supervision.
enum class SupervisionMode : std::uint8_t
{
  kUnexplored = 0,    // mask-constrained: only unexplored cells
  kObservedOnly = 1,  // baseline: only explored cells
};

struct TrainingSample
{
  std::uint32_t plan_id = 0;
  ObservationFrame frame;
  LabelGrid gt;             // full ground truth, kept for evaluation
  SemanticGrid masked_gt;   // one-hot GT zeroed outside the supervised cells
  ClassId query = ClassId::kBedroom;
  BitMask target_mask;      // GT == query on supervised cells
  BitMask loss_weight_mask; // supervised cells

  friend bool operator==(const TrainingSample &, const TrainingSample &) = default;
};

/// Throws kInvalidArgument when q is not a room class (0-6) and
/// kDimensionMismatch when the frame does not match the plan.
TrainingSample build_sample(const ObservationFrame & frame, const Floorplan & plan, ClassId q,
  std::uint32_t plan_id = 0, SupervisionMode mode = SupervisionMode::kUnexplored);

/// One sample per (frame, query) for all seven query classes.
std::vector<TrainingSample> build_samples(std::span<const ObservationFrame> frames,
  const Floorplan & plan, std::uint32_t plan_id,
  SupervisionMode mode = SupervisionMode::kUnexplored);

struct ClassCensus
{
  std::array<std::uint64_t, kNumClasses> counts{};

  void add(const LabelGrid & labels);
  std::uint64_t total() const;
};

inline constexpr double kMinClassWeight = 0.5;
inline constexpr double kMaxClassWeight = 5.0;

struct ClassWeights
{
  std::array<double, kNumClasses> w;

  static ClassWeights uniform() {ClassWeights cw; cw.w.fill(1.0); return cw;}
};

/// w_c = clip(median present-class count / count_c, 0.5, 5.0); absent
/// classes get 5.0. Throws kInvalidArgument on an empty census.
ClassWeights compute_class_weights(const ClassCensus & census);

inline constexpr double kLogitClamp = 30.0;

/**
 * Weighted binary cross-entropy over valid cells:
 *   -(1/N) sum_c w_c sum_{valid (i,j)} [y log s(x) + (1 - y) log(1 - s(x))]
 * with N the number of valid cells and logits clamped to +-30.
 * `weights` has one entry per channel. Throws kEmptyRegion when no cell is
 * valid and kDimensionMismatch on shape disagreement.
 */
double masked_weighted_bce(const ChannelGrid & logits, const ChannelGrid & target,
  std::span<const double> weights, const BitMask & valid);

/// Analytic gradient: w_c (s(x) - y) / N on valid cells, 0 elsewhere.
ChannelGrid masked_weighted_bce_grad(const ChannelGrid & logits, const ChannelGrid & target,
  std::span<const double> weights, const BitMask & valid);

struct LossConfig
{
  double lambda_global = 1.0;
  double lambda_area = 1.0;
  ClassWeights weights = ClassWeights::uniform();
};

/// Throws kConfig for negative lambdas, both lambdas zero, or weights outside [0.5, 5].
void validate_loss_config(const LossConfig & cfg);

struct LossTerms
{
  double total = 0.0;
  double global = 0.0;
  double area = 0.0;
};

/**
 * lambda_global * BCE(pred_global, masked_gt) + lambda_area * BCE(pred_area, target_mask),
 * both restricted to the sample's loss_weight_mask. The area term is a
 * single channel weighted by w_q.
 */
LossTerms multitask_loss(const ChannelGrid & pred_global, const RealGrid & pred_area,
  const TrainingSample & sample, const LossConfig & cfg);

}  // namespace bevsim

#endif  // BEVSIM__DATASET_HPP_
