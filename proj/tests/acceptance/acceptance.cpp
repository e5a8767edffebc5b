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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bevsim/bytes.hpp"
#include "bevsim/dataset.hpp"
#include "bevsim/error.hpp"
#include "bevsim/explorer.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/metrics.hpp"
#include "bevsim/navsim.hpp"
#include "bevsim/predict.hpp"
#include "bevsim/raster.hpp"
#include "bevsim/rng.hpp"
#include "bevsim/ssds.hpp"
#include "bevsim/ssp1.hpp"
#include "bevsim/text.hpp"

namespace bevsim
{
namespace
{

// Tolerances and budgets.
constexpr double kHandTol = 1e-9;
constexpr double kGradRelTol = 1e-6;
constexpr double kFdStep = 1e-5;
constexpr int kGradTensors = 100;
constexpr double kLossBudget = 1.0;

constexpr int kMaskSamples = 100;
constexpr int kMaskPredProbes = 64;
constexpr int kMaskGtProbes = 8;
constexpr double kMaskBudget = 10.0;

constexpr int kOracleMinFrames = 200;
constexpr int kOracleMinPlans = 20;
constexpr int kOracleMaxPlans = 100;
constexpr double kOracleBudget = 60.0;

constexpr int kExplorePlans = 100;
constexpr int kExploreMaxSteps = 200;
constexpr int kExploreRadius = 8;
constexpr double kExploreBudget = 120.0;

constexpr int kNavTriples = 100;
constexpr double kNavMinReduction = 0.20;
constexpr double kNavBudget = 300.0;

constexpr int kEquivalenceRuns = 50;

constexpr std::uint64_t kSeedBase = 20260101;

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Outcome
{
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void run(const char * name, double budget_s, const std::function<Outcome()> & body)
{
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception & e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = budget_s <= 0.0 || secs < budget_s;
  bool pass = out.pass && in_time;
  std::string timing = fmt(secs) + " s";
  if (budget_s > 0.0) {
    timing += " of " + fmt(budget_s) + " s";
  }
  std::printf("%s %s: %s [%s]\n", pass ? "PASS" : "FAIL", name, out.detail.c_str(),
    timing.c_str());
  std::fflush(stdout);
  if (!pass) {
    ++g_failures;
  }
}

Floorplan plan_for(std::uint64_t seed)
{
  FloorplanSpec spec;
  spec.seed = seed;
  return generate_floorplan(spec);
}

// ---------------------------------------------------------------------------

Outcome loss_math()
{
  auto one = [](double logit, double y, double w = 1.0) {
      ChannelGrid x(1, 1, 1, logit), t(1, 1, 1, y);
      BitMask valid(1, 1, 1);
      const double ws[1] = {w};
      return masked_weighted_bce(x, t, ws, valid);
    };
  const double ln2 = std::log(2.0);
  double worst = 0.0;
  worst = std::max(worst, std::abs(one(0.0, 1.0) - ln2));
  worst = std::max(worst, std::abs(one(0.0, 0.0) - ln2));
  worst = std::max(worst, std::abs(one(0.0, 1.0, 3.0) - 3.0 * ln2));
  worst = std::max(worst, std::abs(one(30.0, 1.0)));
  worst = std::max(worst, std::abs(one(-30.0, 0.0)));
  worst = std::max(worst, std::abs(one(1e6, 1.0)));
  {
    ChannelGrid x(1, 2, 1, 0.0), t(1, 2, 1, 1.0);
    x.at(0, 1, 0) = -50.0;
    BitMask valid(1, 2, 0);
    valid.at(0, 0) = 1;
    const double ws[1] = {1.0};
    worst = std::max(worst, std::abs(masked_weighted_bce(x, t, ws, valid) - ln2));
  }
  bool hand_ok = worst <= kHandTol;

  Rng rng(kSeedBase);
  double worst_rel = 0.0;
  std::size_t checked = 0;
  for (int n = 0; n < kGradTensors; ++n) {
    int h = static_cast<int>(rng.uniform_int(1, 4));
    int w = static_cast<int>(rng.uniform_int(1, 4));
    int c = static_cast<int>(rng.uniform_int(1, 3));
    ChannelGrid x(h, w, c), t(h, w, c);
    for (auto & v : x.values()) {
      v = rng.uniform01() * 8.0 - 4.0;
    }
    for (auto & v : t.values()) {
      v = rng.uniform01() < 0.5 ? 0.0 : 1.0;
    }
    std::vector<double> ws(static_cast<std::size_t>(c));
    for (auto & v : ws) {
      v = 0.5 + 4.5 * rng.uniform01();
    }
    BitMask valid(h, w);
    for (auto & v : valid.values()) {
      v = rng.uniform01() < 0.7;
    }
    valid.values()[static_cast<std::size_t>(rng.uniform_int(0,
      static_cast<std::int64_t>(valid.size()) - 1))] = 1;

    ChannelGrid g = masked_weighted_bce_grad(x, t, ws, valid);
    for (std::size_t i = 0; i < x.values().size(); ++i) {
      ChannelGrid xp = x, xm = x;
      xp.values()[i] += kFdStep;
      xm.values()[i] -= kFdStep;
      double fd = (masked_weighted_bce(xp, t, ws, valid) - masked_weighted_bce(xm, t, ws, valid)) /
        (2.0 * kFdStep);
      double an = g.values()[i];
      double scale = std::max(std::abs(fd), std::abs(an));
      double rel = scale == 0.0 ? 0.0 : std::abs(fd - an) / scale;
      worst_rel = std::max(worst_rel, rel);
      ++checked;
    }
  }
  bool grad_ok = worst_rel <= kGradRelTol;
  return {hand_ok && grad_ok, "hand max abs err " + fmt(worst) + " (tol " + fmt(kHandTol) +
    "), " + std::to_string(kGradTensors) + " tensors / " + std::to_string(checked) +
    " entries, grad max rel err " + fmt(worst_rel) + " (tol " + fmt(kGradRelTol) + ")"};
}

// ---------------------------------------------------------------------------

LossConfig random_loss_config(Rng & rng)
{
  LossConfig cfg;
  cfg.lambda_global = 0.25 + rng.uniform01();
  cfg.lambda_area = 0.25 + rng.uniform01();
  for (auto & w : cfg.weights.w) {
    w = 0.5 + 4.5 * rng.uniform01();
  }
  return cfg;
}

Outcome mask_constraint()
{
  Rng rng(kSeedBase + 1);
  int samples = 0;
  std::size_t explored_ok = 0, explored_bad = 0;
  std::size_t unexplored_probes = 0, unexplored_unchanged = 0;
  for (std::uint64_t p = 0; samples < kMaskSamples; ++p) {
    auto plan = std::make_shared<const Floorplan>(plan_for(kSeedBase + 100 + p));
    EpisodeSetup setup = sample_episode(*plan, mix_seed(kSeedBase, p));
    auto frames = run_exploration(plan, setup.start, kExploreMaxSteps, kExploreRadius);
    for (std::size_t f = 0; f < frames.size() && samples < kMaskSamples; f += 2) {
      const ObservationFrame & frame = frames[f];
      if (count_set(frame.explored) == frame.explored.size()) {
        continue;
      }
      ClassId q = class_from_index(static_cast<int>(rng.uniform_int(0, kNumQueryClasses - 1)));
      TrainingSample s = build_sample(frame, *plan, q);
      LossConfig cfg = random_loss_config(rng);
      const int h = frame.explored.height(), w = frame.explored.width();
      ChannelGrid pg(h, w, kNumClasses);
      for (auto & v : pg.values()) {
        v = rng.uniform01() * 6.0 - 3.0;
      }
      RealGrid pa(h, w);
      for (auto & v : pa.values()) {
        v = rng.uniform01() * 6.0 - 3.0;
      }
      const double base = multitask_loss(pg, pa, s, cfg).total;

      std::vector<Cell> seen, unseen;
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          (frame.explored.at(r, c) ? seen : unseen).push_back({r, c});
        }
      }

      // Explored cells: predictions and GT both rewritten.
      ChannelGrid pg2 = pg;
      RealGrid pa2 = pa;
      Floorplan moved = *plan;
      for (Cell cell : seen) {
        for (int k = 0; k < kNumClasses; ++k) {
          pg2.at(cell, k) += rng.uniform01() * 10.0 - 5.0;
        }
        pa2[cell] += rng.uniform01() * 10.0 - 5.0;
        moved.labels[cell] = class_from_index((index_of(moved.labels[cell]) + 1) % kNumClasses);
      }
      TrainingSample s2 = build_sample(frame, moved, q);
      if (multitask_loss(pg2, pa2, s, cfg).total == base &&
        multitask_loss(pg, pa, s2, cfg).total == base &&
        multitask_loss(pg2, pa2, s2, cfg).total == base)
      {
        ++explored_ok;
      } else {
        ++explored_bad;
      }

      // Unexplored cells: random picks for predictions and GT labels.
      auto pick = [&] {
          return unseen[static_cast<std::size_t>(rng.uniform_int(0,
            static_cast<std::int64_t>(unseen.size()) - 1))];
        };
      for (int i = 0; i < kMaskPredProbes; ++i) {
        Cell cell = pick();
        double & g = pg.at(cell, static_cast<int>(rng.uniform_int(0, kNumClasses - 1)));
        const double saved = g;
        g += 0.5;
        unexplored_unchanged += multitask_loss(pg, pa, s, cfg).total == base;
        g = saved;
        cell = pick();
        pa[cell] += 0.5;
        unexplored_unchanged += multitask_loss(pg, pa, s, cfg).total == base;
        pa[cell] -= 0.5;
        unexplored_probes += 2;
      }
      for (int i = 0; i < kMaskGtProbes; ++i) {
        Cell cell = pick();
        Floorplan changed = *plan;
        int shift = static_cast<int>(rng.uniform_int(1, kNumClasses - 1));
        changed.labels[cell] =
          class_from_index((index_of(changed.labels[cell]) + shift) % kNumClasses);
        ++unexplored_probes;
        unexplored_unchanged += multitask_loss(pg, pa, build_sample(frame, changed, q), cfg).total ==
          base;
      }
      ++samples;
    }
  }
  bool ok = explored_bad == 0 && unexplored_unchanged == 0;
  return {ok, std::to_string(samples) + " samples, explored perturbations with zero change " +
    std::to_string(explored_ok) + "/" + std::to_string(explored_ok + explored_bad) +
    ", unexplored perturbations that left the loss unchanged " +
    std::to_string(unexplored_unchanged) + "/" + std::to_string(unexplored_probes)};
}

// ---------------------------------------------------------------------------

Outcome oracle_perfection()
{
  std::vector<EvalReport> reports;
  std::size_t empty = 0;
  int plans = 0;
  for (; plans < kOracleMaxPlans &&
    (plans < kOracleMinPlans || static_cast<int>(reports.size()) < kOracleMinFrames); ++plans)
  {
    auto plan = std::make_shared<const Floorplan>(plan_for(kSeedBase + 1000 + plans));
    EpisodeSetup setup = sample_episode(*plan, mix_seed(kSeedBase + 1, plans));
    OraclePredictor oracle(plan->labels);
    auto frames = run_exploration(plan, setup.start, kExploreMaxSteps, kExploreRadius);
    for (const auto & frame : frames) {
      LabelGrid pred = argmax_labels(oracle.predict(frame, setup.query).global_probs);
      try {
        reports.push_back(evaluate_frame(pred, plan->labels, frame.explored));
      } catch (const Error & e) {
        if (e.code() != ErrorCode::kEmptyRegion) {
          throw;
        }
        ++empty;
      }
    }
  }
  if (reports.empty()) {
    return {false, "no scoreable frames"};
  }
  EvalSummary s = summarize(reports);
  bool enough = plans >= kOracleMinPlans && static_cast<int>(reports.size()) >= kOracleMinFrames;
  bool perfect = s.min_pa == 1.0 && s.min_fwiou == 1.0 && s.min_sc == 1.0 && s.min_prf == 1.0;
  return {enough && perfect, std::to_string(reports.size()) + " frames from " +
    std::to_string(plans) + " plans (" + std::to_string(empty) +
    " fully explored frames skipped), min PA " + fmt(s.min_pa) + ", min FWIoU " +
    fmt(s.min_fwiou) + ", min SC " + fmt(s.min_sc) + ", min P/R/F1 " + fmt(s.min_prf)};
}

// ---------------------------------------------------------------------------

Outcome exploration_soundness()
{
  int complete = 0, full_cover = 0, monotone = 0, max_steps_used = 0;
  double min_coverage = 1.0;
  for (int p = 0; p < kExplorePlans; ++p) {
    auto plan = std::make_shared<const Floorplan>(plan_for(kSeedBase + 2000 + p));
    EpisodeSetup setup = sample_episode(*plan, mix_seed(kSeedBase + 2, p));
    ExplorationRun run = run_exploration_full(plan, setup.start, kExploreMaxSteps, kExploreRadius);
    bool grows = true;
    for (std::size_t i = 1; i < run.frames.size(); ++i) {
      const auto & a = run.frames[i - 1].explored.values();
      const auto & b = run.frames[i].explored.values();
      for (std::size_t k = 0; k < a.size(); ++k) {
        grows = grows && (!a[k] || b[k]);
      }
    }
    BitMask reach = reachable_free(*plan, setup.start);
    const BitMask & last = run.frames.back().explored;
    std::size_t want = count_set(reach), got = 0;
    for (std::size_t k = 0; k < reach.size(); ++k) {
      got += reach.values()[k] && last.values()[k];
    }
    double coverage = static_cast<double>(got) / static_cast<double>(want);
    min_coverage = std::min(min_coverage, coverage);
    complete += run.complete;
    full_cover += got == want;
    monotone += grows;
    max_steps_used = std::max(max_steps_used, run.frames.back().step);
  }
  bool ok = complete == kExplorePlans && full_cover == kExplorePlans && monotone == kExplorePlans;
  return {ok, std::to_string(kExplorePlans) + " plans, full coverage " +
    std::to_string(full_cover) + ", frontier exhausted " + std::to_string(complete) +
    ", monotone " + std::to_string(monotone) + ", min coverage " + fmt(min_coverage) +
    ", most steps " + std::to_string(max_steps_used)};
}

// ---------------------------------------------------------------------------

Outcome navigation_benefit()
{
  std::vector<EpisodeLog> baseline, guided;
  for (int k = 0; k < kNavTriples; ++k) {
    Floorplan plan = plan_for(kSeedBase + 3000 + k);
    EpisodeSetup setup = sample_episode(plan, mix_seed(kSeedBase + 3, k));
    NavConfig cfg;
    cfg.query = setup.query;
    OraclePredictor oracle(plan.labels);
    baseline.push_back(run_navigation_episode(plan, setup.start, cfg, nullptr));
    guided.push_back(run_navigation_episode(plan, setup.start, cfg, &oracle));
  }
  PairedReport r = compare_arms(baseline, guided);
  bool ok = r.step_reduction >= kNavMinReduction &&
    r.guided.mean_exploration_ratio < r.baseline.mean_exploration_ratio &&
    r.guided.mean_spl > r.baseline.mean_spl;
  return {ok, std::to_string(kNavTriples) + " triples, steps " + fmt(r.baseline.mean_steps) +
    " -> " + fmt(r.guided.mean_steps) + " (reduction " + fmt(r.step_reduction) + ", need >= " +
    fmt(kNavMinReduction) + "), ER " + fmt(r.baseline.mean_exploration_ratio) + " -> " +
    fmt(r.guided.mean_exploration_ratio) + ", SPL " + fmt(r.baseline.mean_spl) + " -> " +
    fmt(r.guided.mean_spl) + ", success " + fmt(r.baseline.success_rate) + " / " +
    fmt(r.guided.success_rate)};
}

// ---------------------------------------------------------------------------

Outcome baseline_equivalence()
{
  int same = 0;
  for (int k = 0; k < kEquivalenceRuns; ++k) {
    Floorplan plan = plan_for(kSeedBase + 4000 + k);
    EpisodeSetup setup = sample_episode(plan, mix_seed(kSeedBase + 4, k));
    NavConfig cfg;
    cfg.query = setup.query;
    ConstantPredictor zero(0.0);
    same += run_navigation_episode(plan, setup.start, cfg, nullptr) ==
      run_navigation_episode(plan, setup.start, cfg, &zero);
  }
  return {same == kEquivalenceRuns, "identical episode logs " + std::to_string(same) + "/" +
    std::to_string(kEquivalenceRuns)};
}

// ---------------------------------------------------------------------------

Bytes fixture(const std::string & name)
{
  return read_file(std::filesystem::path(BEVSIM_FIXTURE_DIR) / name);
}

ErrorCode code_of(const std::function<void()> & fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

ObservationFrame frame_from_request(const Ssp1Request & req)
{
  ObservationFrame f;
  f.trajectory = BitMask(req.height, req.width);
  f.obstacles_seen = BitMask(req.height, req.width);
  f.explored = BitMask(req.height, req.width);
  f.local_semantics = SemanticGrid(req.height, req.width, kNumClasses);
  for (int r = 0; r < req.height; ++r) {
    for (int c = 0; c < req.width; ++c) {
      if (req.layer(0, r, c)) {
        f.pose = {r, c};
      }
      f.trajectory.at(r, c) = req.layer(1, r, c);
      f.obstacles_seen.at(r, c) = req.layer(2, r, c);
      f.explored.at(r, c) = req.layer(3, r, c);
      for (int k = 0; k < kNumClasses; ++k) {
        f.local_semantics.at(r, c, k) = req.layer(4 + k, r, c);
      }
    }
  }
  return f;
}

Outcome format_stability()
{
  std::vector<std::string> problems;
  auto expect = [&](bool cond, const std::string & what) {
      if (!cond) {
        problems.push_back(what);
      }
    };

  Bytes semgrid = fixture("tiny_2r.semgrid");
  expect(encode_raster(decode_raster(semgrid)) == semgrid, "semgrid round trip");
  expect(decode_raster(semgrid) == tiny_two_room().labels, "semgrid content");
  Bytes ssds = fixture("tiny_2r.ssds");
  expect(encode_dataset(decode_dataset(ssds)) == ssds, "ssds round trip");
  Bytes request = fixture("request_tiny.ssp1");
  Ssp1Request req = decode_request(request);
  expect(encode_request(frame_from_request(req), req.query) == request, "ssp1 request round trip");
  Bytes response = fixture("response_tiny.ssp1");
  expect(encode_response(decode_response(response)) == response, "ssp1 response round trip");

  using Decoder = std::function<void(const Bytes &)>;
  Decoder raster = [](const Bytes & b) {decode_raster(b);};
  Decoder dataset = [](const Bytes & b) {decode_dataset(b);};
  Decoder resp = [](const Bytes & b) {decode_response(b);};
  Decoder reqd = [](const Bytes & b) {decode_request(b);};
  const std::vector<std::tuple<std::string, Decoder, ErrorCode>> corrupt = {
    {"semgrid_bad_magic.semgrid", raster, ErrorCode::kBadMagic},
    {"semgrid_truncated.semgrid", raster, ErrorCode::kTruncated},
    {"semgrid_trailing.semgrid", raster, ErrorCode::kTrailingData},
    {"semgrid_label_out_of_range.semgrid", raster, ErrorCode::kLabelOutOfRange},
    {"semgrid_overflow.semgrid", raster, ErrorCode::kDimensionOverflow},
    {"semgrid_bad_channels.semgrid", raster, ErrorCode::kBadHeader},
    {"ssds_bad_magic.ssds", dataset, ErrorCode::kBadMagic},
    {"ssds_bad_version.ssds", dataset, ErrorCode::kBadHeader},
    {"ssds_header_crc.ssds", dataset, ErrorCode::kChecksumMismatch},
    {"ssds_record_crc.ssds", dataset, ErrorCode::kChecksumMismatch},
    {"ssds_truncated.ssds", dataset, ErrorCode::kChecksumMismatch},
    {"ssds_bad_tag.ssds", dataset, ErrorCode::kCorruptRecord},
    {"response_bad_magic.ssp1", resp, ErrorCode::kProtocolMagic},
    {"response_bad_version.ssp1", resp, ErrorCode::kProtocolVersion},
    {"response_bad_type.ssp1", resp, ErrorCode::kProtocolMessage},
    {"response_eleven_channels.ssp1", resp, ErrorCode::kProtocolShape},
    {"response_out_of_range.ssp1", resp, ErrorCode::kProtocolMessage},
    {"request_bad_query.ssp1", reqd, ErrorCode::kProtocolMessage},
    {"request_short.ssp1", reqd, ErrorCode::kProtocolShape},
  };
  for (const auto & [name, decode, code] : corrupt) {
    Bytes data = fixture(name);
    ErrorCode got = code_of([&] {decode(data);});
    expect(got == code, name + " raised " + std::string(error_code_name(got)));
  }
  std::string detail = "4 golden round trips, " + std::to_string(corrupt.size()) +
    " corrupted fixtures";
  for (const auto & p : problems) {
    detail += "; " + p;
  }
  return {problems.empty(), detail};
}

}  // namespace
}  // namespace bevsim

int main()
{
  using namespace bevsim;
  run("loss_math", kLossBudget, loss_math);
  run("mask_constraint", kMaskBudget, mask_constraint);
  run("oracle_perfection", kOracleBudget, oracle_perfection);
  run("exploration_soundness", kExploreBudget, exploration_soundness);
  run("navigation_benefit", kNavBudget, navigation_benefit);
  run("baseline_equivalence", 0.0, baseline_equivalence);
  run("format_stability", 0.0, format_stability);
  std::printf("%s: %d failing\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
