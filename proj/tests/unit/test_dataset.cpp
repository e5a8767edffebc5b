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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bevsim/dataset.hpp"
#include "bevsim/explorer.hpp"
#include "test_util.hpp"

namespace bevsim
{
namespace
{

using test::error_of;

ObservationFrame blank_frame(int h, int w, Pose pose)
{
  ObservationFrame f;
  f.pose = pose;
  f.trajectory = BitMask(h, w);
  f.trajectory[pose] = 1;
  f.explored = BitMask(h, w);
  f.obstacles_seen = BitMask(h, w);
  f.local_semantics = SemanticGrid(h, w, kNumClasses);
  return f;
}

ObservationFrame frame_with_explored(const Floorplan & plan, const BitMask & explored, Pose pose)
{
  ObservationFrame f = blank_frame(plan.labels.height(), plan.labels.width(), pose);
  f.explored = explored;
  f.explored[pose] = 1;
  for (std::size_t i = 0; i < plan.labels.size(); ++i) {
    Cell c = plan.labels.cell(i);
    if (f.explored[c]) {
      f.obstacles_seen[c] = is_obstacle_class(plan.labels[c]);
      f.local_semantics.at(c, index_of(plan.labels[c])) = 1.0;
    }
  }
  return f;
}

TEST(BuildSample, FullyExploredLeavesNothingToSupervise)
{
  Floorplan tiny = tiny_two_room();
  ObservationFrame f = frame_with_explored(tiny, BitMask(8, 8, 1), {2, 2});
  TrainingSample s = build_sample(f, tiny, ClassId::kBedroom);
  EXPECT_EQ(count_set(s.target_mask), 0u);
  EXPECT_EQ(count_set(s.loss_weight_mask), 0u);
  for (double v : s.masked_gt.values()) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(BuildSample, NothingExploredTargetsTheEightBedroomCells)
{
  Floorplan tiny = tiny_two_room();
  ObservationFrame f = blank_frame(8, 8, {3, 5});
  TrainingSample s = build_sample(f, tiny, ClassId::kBedroom);
  EXPECT_EQ(s.target_mask, test::mask_where(tiny.labels, ClassId::kBedroom));
  EXPECT_EQ(count_set(s.target_mask), 8u);
  EXPECT_EQ(s.masked_gt, onehot_encode(tiny.labels));
  EXPECT_EQ(s.gt, tiny.labels);
}

TEST(BuildSample, ExploredBedroomIsNotATarget)
{
  Floorplan tiny = tiny_two_room();
  BitMask bedroom = test::mask_where(tiny.labels, ClassId::kBedroom);
  TrainingSample s = build_sample(frame_with_explored(tiny, bedroom, {2, 2}), tiny,
      ClassId::kBedroom);
  EXPECT_EQ(count_set(s.target_mask), 0u);
  EXPECT_EQ(count_set(s.loss_weight_mask), 64u - 8u);
}

TEST(BuildSample, InvariantsOnExplorationFrames)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FloorplanSpec spec;
    spec.seed = seed;
    spec.height = 18;
    spec.width = 18;
    auto plan = test::shared_plan(generate_floorplan(spec));
    auto frames = run_exploration(plan, plan->rooms[0].cells.back(), 40, 4, 20);
    for (const auto & f : frames) {
      for (int q = 0; q < kNumQueryClasses; ++q) {
        ClassId cls = class_from_index(q);
        TrainingSample s = build_sample(f, *plan, cls, 7);
        EXPECT_EQ(s.plan_id, 7u);
        for (std::size_t i = 0; i < s.gt.size(); ++i) {
          Cell c = s.gt.cell(i);
          bool unexplored = !f.explored[c];
          ASSERT_EQ(s.target_mask[c], unexplored && s.gt[c] == cls);
          ASSERT_EQ(s.loss_weight_mask[c], unexplored);
          for (int k = 0; k < kNumClasses; ++k) {
            ASSERT_EQ(s.masked_gt.at(c, k), unexplored && index_of(s.gt[c]) == k ? 1.0 : 0.0);
          }
        }
      }
    }
  }
}

TEST(BuildSample, ObservedOnlyModeSupervisesExploredCells)
{
  Floorplan tiny = tiny_two_room();
  BitMask bedroom = test::mask_where(tiny.labels, ClassId::kBedroom);
  ObservationFrame f = frame_with_explored(tiny, bedroom, {2, 2});
  TrainingSample s = build_sample(f, tiny, ClassId::kBedroom, 0, SupervisionMode::kObservedOnly);
  EXPECT_EQ(s.loss_weight_mask, f.explored);
  EXPECT_EQ(s.target_mask, bedroom);
}

TEST(BuildSample, RejectsBadQueryAndForeignFrame)
{
  Floorplan tiny = tiny_two_room();
  ObservationFrame f = blank_frame(8, 8, {2, 2});
  EXPECT_EQ(error_of([&] {build_sample(f, tiny, ClassId::kWall);}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_of([&] {build_sample(blank_frame(9, 8, {2, 2}), tiny, ClassId::kBedroom);}),
    ErrorCode::kDimensionMismatch);
  auto all = build_samples(std::vector<ObservationFrame>{f, f}, tiny, 3);
  EXPECT_EQ(all.size(), 14u);
}

TEST(ClassWeights, EqualFrequenciesGiveOne)
{
  ClassCensus census;
  census.counts.fill(17);
  for (double w : compute_class_weights(census).w) {
    EXPECT_DOUBLE_EQ(w, 1.0);
  }
}

TEST(ClassWeights, HandEvaluatedCensus)
{
  ClassCensus census;
  census.counts[0] = 90;
  census.counts[1] = 10;
  ClassWeights cw = compute_class_weights(census);
  EXPECT_NEAR(cw.w[0], 50.0 / 90.0, 1e-12);
  EXPECT_NEAR(cw.w[0], 0.556, 5e-4);
  EXPECT_EQ(cw.w[1], 5.0);
  for (int k = 2; k < kNumClasses; ++k) {
    EXPECT_EQ(cw.w[static_cast<std::size_t>(k)], 5.0);
  }
}

TEST(ClassWeights, ClippedIntoRangeAndEmptyRejected)
{
  ClassCensus census;
  census.counts = {1, 1000, 3, 50, 7, 9, 0, 400, 2, 800};
  for (double w : compute_class_weights(census).w) {
    EXPECT_GE(w, kMinClassWeight);
    EXPECT_LE(w, kMaxClassWeight);
  }
  EXPECT_EQ(error_of([] {compute_class_weights(ClassCensus{});}), ErrorCode::kInvalidArgument);
}

TEST(Bce, HandCases)
{
  std::vector<double> w1(1, 1.0);
  ChannelGrid logit(1, 1, 1, 0.0);
  ChannelGrid target(1, 1, 1, 1.0);
  BitMask valid(1, 1, 1);
  EXPECT_NEAR(masked_weighted_bce(logit, target, w1, valid), std::log(2.0), 1e-9);
  EXPECT_NEAR(masked_weighted_bce(logit, target, w1, valid), 0.693147, 1e-6);

  logit.at(0, 0, 0) = 30.0;
  EXPECT_LE(masked_weighted_bce(logit, target, w1, valid), 1e-12);

  ChannelGrid two(1, 2, 1, 0.0);
  ChannelGrid targets(1, 2, 1, 0.0);
  targets.at(0, 0, 0) = 1.0;
  EXPECT_NEAR(masked_weighted_bce(two, targets, w1, BitMask(1, 2, 1)), std::log(2.0), 1e-9);
}

TEST(Bce, ClampKeepsExtremeLogitsFinite)
{
  std::vector<double> w1(1, 1.0);
  ChannelGrid logit(1, 1, 1, -1e6);
  ChannelGrid target(1, 1, 1, 1.0);
  double loss = masked_weighted_bce(logit, target, w1, BitMask(1, 1, 1));
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_NEAR(loss, 30.0, 1e-6);
}

TEST(Bce, ErrorsOnEmptyMaskAndShapeMismatch)
{
  std::vector<double> w(kNumClasses, 1.0);
  ChannelGrid a(2, 2, kNumClasses);
  EXPECT_EQ(error_of([&] {masked_weighted_bce(a, a, w, BitMask(2, 2));}), ErrorCode::kEmptyRegion);
  EXPECT_EQ(error_of([&] {masked_weighted_bce(a, ChannelGrid(2, 3, kNumClasses), w,
      BitMask(2, 2, 1));}), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(error_of([&] {masked_weighted_bce(a, a, std::vector<double>(3, 1.0),
      BitMask(2, 2, 1));}), ErrorCode::kDimensionMismatch);
}

struct Batch
{
  ChannelGrid logits;
  ChannelGrid target;
  std::vector<double> weights;
  BitMask valid;
};

Batch random_batch(std::mt19937_64 & gen, int h, int w, int ch)
{
  std::normal_distribution<double> logit(0.0, 2.0);
  std::uniform_real_distribution<double> weight(0.5, 5.0);
  Batch b{ChannelGrid(h, w, ch), ChannelGrid(h, w, ch), std::vector<double>(
      static_cast<std::size_t>(ch)), test::random_mask(gen, h, w, 0.6)};
  b.valid.at(0, 0) = 1;
  std::bernoulli_distribution coin(0.5);
  for (auto & v : b.logits.values()) {
    v = logit(gen);
  }
  for (auto & v : b.target.values()) {
    v = coin(gen) ? 1.0 : 0.0;
  }
  for (auto & v : b.weights) {
    v = weight(gen);
  }
  return b;
}

// Straight transcription of the formula, independent of the library loop.
double reference_bce(const Batch & b)
{
  double sum = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < b.logits.height(); ++r) {
    for (int c = 0; c < b.logits.width(); ++c) {
      if (!b.valid.at(r, c)) {
        continue;
      }
      ++n;
      for (int k = 0; k < b.logits.channels(); ++k) {
        double x = std::clamp(b.logits.at(r, c, k), -30.0, 30.0);
        double s = 1.0 / (1.0 + std::exp(-x));
        double y = b.target.at(r, c, k);
        sum += b.weights[static_cast<std::size_t>(k)] * (y * std::log(s) + (1 - y) * std::log(1 - s));
      }
    }
  }
  return -sum / static_cast<double>(n);
}

TEST(Bce, MatchesDirectTranscription)
{
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    Batch b = random_batch(gen, 1 + trial % 5, 2 + trial % 3, 1 + trial % kNumClasses);
    EXPECT_NEAR(masked_weighted_bce(b.logits, b.target, b.weights, b.valid), reference_bce(b),
      1e-12);
  }
}

TEST(Bce, GradientMatchesCentralDifferences)
{
  std::mt19937_64 gen(8);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    Batch b = random_batch(gen, 2 + trial % 3, 2 + trial % 4, 1 + trial % 4);
    ChannelGrid grad = masked_weighted_bce_grad(b.logits, b.target, b.weights, b.valid);
    for (std::size_t i = 0; i < b.logits.values().size(); ++i) {
      double x0 = b.logits.values()[i];
      b.logits.values()[i] = x0 + h;
      double up = masked_weighted_bce(b.logits, b.target, b.weights, b.valid);
      b.logits.values()[i] = x0 - h;
      double down = masked_weighted_bce(b.logits, b.target, b.weights, b.valid);
      b.logits.values()[i] = x0;
      double numeric = (up - down) / (2 * h);
      double analytic = grad.values()[i];
      EXPECT_LE(std::abs(numeric - analytic), 1e-6 * std::max(1.0, std::abs(analytic)))
        << "trial " << trial << " index " << i;
    }
  }
}

TEST(Bce, PermutationInvariantAndLinearInWeights)
{
  std::mt19937_64 gen(12);
  Batch b = random_batch(gen, 1, 12, 3);
  b.valid = BitMask(1, 12, 1);
  double base = masked_weighted_bce(b.logits, b.target, b.weights, b.valid);

  Batch shuffled = b;
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  for (int c = 0; c < 12; ++c) {
    for (int k = 0; k < 3; ++k) {
      shuffled.logits.at(0, c, k) = b.logits.at(0, perm[static_cast<std::size_t>(c)], k);
      shuffled.target.at(0, c, k) = b.target.at(0, perm[static_cast<std::size_t>(c)], k);
    }
  }
  EXPECT_NEAR(masked_weighted_bce(shuffled.logits, shuffled.target, shuffled.weights,
    shuffled.valid), base, 1e-12);

  // Loss is a sum of per-channel terms, each proportional to its weight.
  std::vector<double> parts(3);
  for (int k = 0; k < 3; ++k) {
    std::vector<double> only(3, 0.0);
    only[static_cast<std::size_t>(k)] = b.weights[static_cast<std::size_t>(k)];
    parts[static_cast<std::size_t>(k)] = masked_weighted_bce(b.logits, b.target, only, b.valid);
  }
  Batch doubled = b;
  doubled.weights[1] *= 2.0;
  EXPECT_NEAR(masked_weighted_bce(doubled.logits, doubled.target, doubled.weights, doubled.valid),
    base + parts[1], 1e-12);
}

TrainingSample tiny_sample(ClassId q)
{
  Floorplan tiny = tiny_two_room();
  BitMask left(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 4; ++c) {
      left.at(r, c) = 1;
    }
  }
  return build_sample(frame_with_explored(tiny, left, {2, 2}), tiny, q);
}

TEST(MultitaskLoss, HandSumAndDegenerateWeighting)
{
  TrainingSample s = tiny_sample(ClassId::kLivingRoom);
  ChannelGrid zeros(8, 8, kNumClasses, 0.0);
  RealGrid area(8, 8, 0.0);
  LossConfig cfg;
  LossTerms t = multitask_loss(zeros, area, s, cfg);
  // Every logit is 0, so every channel term is ln 2; ten channels, one area channel.
  EXPECT_NEAR(t.global, 10 * std::log(2.0), 1e-9);
  EXPECT_NEAR(t.area, std::log(2.0), 1e-9);
  EXPECT_NEAR(t.total, t.global + t.area, 1e-12);

  cfg.lambda_area = 0.0;
  LossTerms g = multitask_loss(zeros, area, s, cfg);
  EXPECT_EQ(g.total, cfg.lambda_global * g.global);

  cfg = LossConfig{};
  cfg.lambda_global = 0.5;
  cfg.lambda_area = 2.0;
  LossTerms scaled = multitask_loss(zeros, area, s, cfg);
  EXPECT_NEAR(scaled.total, 0.5 * t.global + 2.0 * t.area, 1e-12);
}

TEST(MultitaskLoss, BothTermsLnTwoSumToTwiceLnTwo)
{
  TrainingSample s = tiny_sample(ClassId::kBedroom);
  // Channel 0 at logit 0 contributes ln 2; the other channels sit at the
  // saturated logit matching their target and contribute ~0.
  ChannelGrid global(8, 8, kNumClasses);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      for (int k = 1; k < kNumClasses; ++k) {
        global.at(r, c, k) = s.masked_gt.at(r, c, k) > 0.5 ? 30.0 : -30.0;
      }
    }
  }
  RealGrid area(8, 8, 0.0);
  LossTerms t = multitask_loss(global, area, s, LossConfig{});
  EXPECT_NEAR(t.global, 0.693147, 1e-6);
  EXPECT_NEAR(t.area, 0.693147, 1e-6);
  EXPECT_NEAR(t.total, 1.386294, 1e-6);
}

TEST(MultitaskLoss, ConfigValidation)
{
  LossConfig cfg;
  validate_loss_config(cfg);
  cfg.lambda_global = -1.0;
  EXPECT_EQ(error_of([&] {validate_loss_config(cfg);}), ErrorCode::kConfig);
  cfg.lambda_global = 0.0;
  cfg.lambda_area = 0.0;
  EXPECT_EQ(error_of([&] {validate_loss_config(cfg);}), ErrorCode::kConfig);
}

TEST(MultitaskLoss, ExploredCellsAreInvisibleToTheLoss)
{
  std::mt19937_64 gen(21);
  std::normal_distribution<double> noise(0.0, 3.0);
  TrainingSample s = tiny_sample(ClassId::kLivingRoom);
  ChannelGrid global(8, 8, kNumClasses);
  RealGrid area(8, 8);
  for (auto & v : global.values()) {
    v = noise(gen);
  }
  for (auto & v : area.values()) {
    v = noise(gen);
  }
  LossConfig cfg;
  const double base = multitask_loss(global, area, s, cfg).total;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      ChannelGrid g2 = global;
      RealGrid a2 = area;
      g2.at(r, c, 3) += 1.5;
      a2.at(r, c) -= 2.0;
      double changed = multitask_loss(g2, a2, s, cfg).total;
      if (s.frame.explored.at(r, c)) {
        EXPECT_EQ(changed, base) << r << "," << c;
      } else {
        EXPECT_NE(changed, base) << r << "," << c;
      }
    }
  }
}

}  // namespace
}  // namespace bevsim
