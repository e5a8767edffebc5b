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

#include "bevsim/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace bevsim
{

namespace
{

// log(1 + exp(x)) without overflow.
double softplus(double x)
{
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x)
{
  if (x >= 0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

void check_bce_shapes(const ChannelGrid & logits, const ChannelGrid & target,
  std::span<const double> weights, const BitMask & valid)
{
  if (!logits.same_shape(target)) {
    fail(ErrorCode::kDimensionMismatch, "logits and target shapes differ");
  }
  require_same_plane(logits, valid, "valid mask");
  if (weights.size() != static_cast<std::size_t>(logits.channels())) {
    fail(ErrorCode::kDimensionMismatch, "expected " + std::to_string(logits.channels()) +
      " class weights, got " + std::to_string(weights.size()));
  }
}

ChannelGrid single_channel(const RealGrid & g)
{
  ChannelGrid out(g.height(), g.width(), 1);
  std::copy(g.values().begin(), g.values().end(), out.values().begin());
  return out;
}

ChannelGrid single_channel(const BitMask & m)
{
  ChannelGrid out(m.height(), m.width(), 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.values()[i] = m.values()[i] ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace

TrainingSample build_sample(const ObservationFrame & frame, const Floorplan & plan, ClassId q,
  std::uint32_t plan_id, SupervisionMode mode)
{
  if (!is_query_class(q)) {
    fail(ErrorCode::kInvalidArgument, "query class must be in [0, 6], got " +
      std::to_string(index_of(q)));
  }
  require_same_plane(frame.explored, plan.labels, "frame vs plan");

  TrainingSample s;
  s.plan_id = plan_id;
  s.frame = frame;
  s.gt = plan.labels;
  s.query = q;
  s.loss_weight_mask = mode == SupervisionMode::kUnexplored ? mask_not(frame.explored) :
    frame.explored;
  // Zeroing the complement of the supervised set is the unexplored mask of that complement.
  s.masked_gt = apply_unexplored_mask(onehot_encode(plan.labels), mask_not(s.loss_weight_mask));
  s.target_mask = BitMask(plan.labels.height(), plan.labels.width());
  for (std::size_t i = 0; i < plan.labels.size(); ++i) {
    s.target_mask.values()[i] = (plan.labels.values()[i] == q && s.loss_weight_mask.values()[i]) ?
      1 : 0;
  }
  return s;
}

std::vector<TrainingSample> build_samples(std::span<const ObservationFrame> frames,
  const Floorplan & plan, std::uint32_t plan_id, SupervisionMode mode)
{
  std::vector<TrainingSample> out;
  out.reserve(frames.size() * kNumQueryClasses);
  for (const auto & frame : frames) {
    for (int q = 0; q < kNumQueryClasses; ++q) {
      out.push_back(build_sample(frame, plan, static_cast<ClassId>(q), plan_id, mode));
    }
  }
  return out;
}

void ClassCensus::add(const LabelGrid & labels)
{
  auto hist = class_histogram(labels);
  for (int k = 0; k < kNumClasses; ++k) {
    counts[static_cast<std::size_t>(k)] += hist[static_cast<std::size_t>(k)];
  }
}

std::uint64_t ClassCensus::total() const
{
  std::uint64_t t = 0;
  for (auto c : counts) {
    t += c;
  }
  return t;
}

ClassWeights compute_class_weights(const ClassCensus & census)
{
  if (census.total() == 0) {
    fail(ErrorCode::kInvalidArgument, "empty class census");
  }
  std::vector<double> present;
  for (auto c : census.counts) {
    if (c > 0) {
      present.push_back(static_cast<double>(c));
    }
  }
  std::sort(present.begin(), present.end());
  std::size_t n = present.size();
  double median = n % 2 == 1 ? present[n / 2] : 0.5 * (present[n / 2 - 1] + present[n / 2]);

  ClassWeights cw;
  for (int k = 0; k < kNumClasses; ++k) {
    auto count = census.counts[static_cast<std::size_t>(k)];
    double w = count == 0 ? kMaxClassWeight : median / static_cast<double>(count);
    cw.w[static_cast<std::size_t>(k)] = std::clamp(w, kMinClassWeight, kMaxClassWeight);
  }
  return cw;
}

double masked_weighted_bce(const ChannelGrid & logits, const ChannelGrid & target,
  std::span<const double> weights, const BitMask & valid)
{
  check_bce_shapes(logits, target, weights, valid);
  std::size_t n = count_set(valid);
  if (n == 0) {
    fail(ErrorCode::kEmptyRegion, "BCE over an empty valid mask");
  }
  double sum = 0.0;
  for (int r = 0; r < logits.height(); ++r) {
    for (int c = 0; c < logits.width(); ++c) {
      if (!valid.at(r, c)) {
        continue;
      }
      for (int k = 0; k < logits.channels(); ++k) {
        double x = std::clamp(logits.at(r, c, k), -kLogitClamp, kLogitClamp);
        double y = target.at(r, c, k);
        // -[y log s(x) + (1-y) log(1-s(x))] = softplus(x) - y x
        sum += weights[static_cast<std::size_t>(k)] * (softplus(x) - y * x);
      }
    }
  }
  return sum / static_cast<double>(n);
}

ChannelGrid masked_weighted_bce_grad(const ChannelGrid & logits, const ChannelGrid & target,
  std::span<const double> weights, const BitMask & valid)
{
  check_bce_shapes(logits, target, weights, valid);
  std::size_t n = count_set(valid);
  if (n == 0) {
    fail(ErrorCode::kEmptyRegion, "BCE over an empty valid mask");
  }
  ChannelGrid grad(logits.height(), logits.width(), logits.channels());
  for (int r = 0; r < logits.height(); ++r) {
    for (int c = 0; c < logits.width(); ++c) {
      if (!valid.at(r, c)) {
        continue;
      }
      for (int k = 0; k < logits.channels(); ++k) {
        double x = logits.at(r, c, k);
        if (std::abs(x) > kLogitClamp) {
          continue;  // clamped region is flat
        }
        grad.at(r, c, k) = weights[static_cast<std::size_t>(k)] *
          (sigmoid(x) - target.at(r, c, k)) / static_cast<double>(n);
      }
    }
  }
  return grad;
}

void validate_loss_config(const LossConfig & cfg)
{
  if (!(cfg.lambda_global >= 0.0)) {
    fail(ErrorCode::kConfig, "lambda_global: must be >= 0");
  }
  if (!(cfg.lambda_area >= 0.0)) {
    fail(ErrorCode::kConfig, "lambda_area: must be >= 0");
  }
  if (cfg.lambda_global == 0.0 && cfg.lambda_area == 0.0) {
    fail(ErrorCode::kConfig, "lambda_global, lambda_area: not both zero");
  }
  for (double w : cfg.weights.w) {
    if (!(w >= kMinClassWeight && w <= kMaxClassWeight)) {
      fail(ErrorCode::kConfig, "weights: each class weight must lie in [0.5, 5]");
    }
  }
}

LossTerms multitask_loss(const ChannelGrid & pred_global, const RealGrid & pred_area,
  const TrainingSample & sample, const LossConfig & cfg)
{
  validate_loss_config(cfg);
  LossTerms t;
  t.global = masked_weighted_bce(pred_global, sample.masked_gt, cfg.weights.w,
    sample.loss_weight_mask);
  const double wq[1] = {cfg.weights.w[static_cast<std::size_t>(index_of(sample.query))]};
  t.area = masked_weighted_bce(single_channel(pred_area), single_channel(sample.target_mask),
    wq, sample.loss_weight_mask);
  t.total = cfg.lambda_global * t.global + cfg.lambda_area * t.area;
  return t;
}

}  // namespace bevsim
