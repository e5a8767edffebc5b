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


#include "bevsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bevsim/explorer.hpp"
#include "bevsim/raster.hpp"
#include "bevsim/render.hpp"
#include "bevsim/rng.hpp"
#include "bevsim/ssds.hpp"
#include "bevsim/text.hpp"

namespace bevsim
{

namespace fs = std::filesystem;

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> & fn)
{
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto work = [&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
        }
      }
    };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < workers; ++t) {
    threads.emplace_back(work);
  }
  for (auto & t : threads) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

std::string plan_file_name(std::size_t index)
{
  std::string digits = std::to_string(index);
  if (digits.size() < 4) {
    digits.insert(0, 4 - digits.size(), '0');
  }
  return "plan_" + digits + ".semgrid";
}

std::vector<Floorplan> load_plan_dir(const fs::path & dir)
{
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto & entry : fs::directory_iterator(dir, ec)) {
    auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("plan_", 0) == 0 &&
      entry.path().extension() == ".semgrid")
    {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    fail(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  }
  if (files.empty()) {
    fail(ErrorCode::kIo, "no plan_*.semgrid files in " + dir.string());
  }
  std::sort(files.begin(), files.end());
  std::vector<Floorplan> plans;
  for (const auto & f : files) {
    plans.push_back(load_floorplan(f));
  }
  return plans;
}

namespace
{

void ensure_dir(const fs::path & dir)
{
  if (dir.empty()) {
    fail(ErrorCode::kConfig, "out: output directory required");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  }
}

fs::path sidecar_path(const fs::path & raster)
{
  fs::path p = raster;
  return p.replace_extension(".meta");
}

std::vector<Floorplan> generate_plans(const FloorplanSpec & spec, int count, int jobs)
{
  if (count < 1) {
    fail(ErrorCode::kConfig, "count: must be >= 1, got " + std::to_string(count));
  }
  validate_spec(spec);
  std::vector<Floorplan> plans(static_cast<std::size_t>(count));
  parallel_for(plans.size(), jobs, [&](std::size_t i) {
      FloorplanSpec s = spec;
      s.seed = spec.seed + i;
      plans[i] = generate_floorplan(s);
    });
  return plans;
}

void save_plans(const std::vector<Floorplan> & plans, const fs::path & dir)
{
  ensure_dir(dir);
  for (std::size_t i = 0; i < plans.size(); ++i) {
    fs::path raster = dir / plan_file_name(i);
    save_floorplan(plans[i], raster, sidecar_path(raster));
  }
}

std::vector<Floorplan> plans_for(const fs::path & plans_dir, const FloorplanSpec & spec,
  int count, int jobs, const fs::path & out_dir)
{
  if (!plans_dir.empty()) {
    return load_plan_dir(plans_dir);
  }
  auto plans = generate_plans(spec, count, jobs);
  save_plans(plans, out_dir / "plans");
  return plans;
}

ClassCensus census_of(const std::vector<Floorplan> & plans)
{
  ClassCensus census;
  for (const auto & p : plans) {
    census.add(p.labels);
  }
  return census;
}

ClassCensus census_of(const DatasetReader & reader, const std::set<std::uint32_t> & plan_ids)
{
  ClassCensus census;
  std::set<std::uint32_t> done;
  for (std::size_t i = 0; i < reader.size(); ++i) {
    const auto & e = reader.entry(i);
    if (plan_ids.count(e.plan_id) && !done.count(e.plan_id)) {
      census.add(reader.read(i).gt);
      done.insert(e.plan_id);
    }
  }
  return census;
}

std::string mode_name(SupervisionMode mode)
{
  return mode == SupervisionMode::kUnexplored ? "unexplored" : "observed_only";
}

}  // namespace

std::string run_gen(const GenOptions & opts)
{
  ensure_dir(opts.out_dir);
  auto plans = generate_plans(opts.spec, opts.count, opts.jobs);
  save_plans(plans, opts.out_dir);
  std::ostringstream out;
  out << "plans=" << plans.size() << "\n";
  out << "first_seed=" << opts.spec.seed << "\n";
  out << "out=" << opts.out_dir.string() << "\n";
  return out.str();
}

Cell sample_free_cell(const Floorplan & plan, std::uint64_t seed)
{
  std::vector<Cell> free;
  for (std::size_t i = 0; i < plan.labels.size(); ++i) {
    if (is_free_class(plan.labels.values()[i])) {
      free.push_back(plan.labels.cell(i));
    }
  }
  if (free.empty()) {
    fail(ErrorCode::kInvalidArgument, "plan has no free cell");
  }
  Rng rng(seed);
  return free[static_cast<std::size_t>(rng.uniform_int(0,
           static_cast<std::int64_t>(free.size()) - 1))];
}

std::string run_explore_cmd(const ExploreOptions & opts)
{
  ensure_dir(opts.out_dir);
  auto plan = std::make_shared<const Floorplan>(load_floorplan(opts.plan));
  Cell start = opts.start ? *opts.start : sample_free_cell(*plan, opts.seed);
  auto run = run_exploration_full(plan, start, opts.max_steps, opts.radius);
  std::ostringstream traj;
  for (const auto & f : run.frames) {
    traj << "step=" << f.step << " pose=" << format_cell(f.pose) << " explored=" <<
      count_set(f.explored) << " frontiers=" << detect_frontiers(f.explored, f.obstacles_seen).size() <<
      "\n";
  }
  write_text_file(opts.out_dir / "trajectory.txt", traj.str());

  if (opts.keep_first < 0) {
    fail(ErrorCode::kConfig, "keep_first: must be >= 0");
  }
  std::ostringstream manifest;
  const auto dumped = std::min(run.frames.size(), static_cast<std::size_t>(opts.keep_first));
  for (std::size_t i = 0; i < dumped; ++i) {
    const auto & f = run.frames[i];
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04d", f.step);
    const std::filesystem::path rel = std::filesystem::path("frames") / name;
    ensure_dir(opts.out_dir / rel);
    manifest << "step=" << f.step << " pose=" << format_cell(f.pose);
    auto dump = [&](const std::string & layer, const BitMask & mask) {
        auto path = rel / (layer + ".semgrid");
        write_raster(mask_to_layer(mask), opts.out_dir / path);
        manifest << " " << layer << "=" << path.generic_string();
      };
    dump("trajectory", f.trajectory);
    dump("explored", f.explored);
    dump("obstacles", f.obstacles_seen);
    for (int k = 0; k < kNumClasses; ++k) {
      BitMask channel(f.explored.height(), f.explored.width());
      for (int r = 0; r < channel.height(); ++r) {
        for (int c = 0; c < channel.width(); ++c) {
          channel.at(r, c) = f.local_semantics.at(r, c, k) > 0.5;
        }
      }
      dump("semantic." + std::string(class_name(class_from_index(k))), channel);
    }
    manifest << "\n";
  }
  write_text_file(opts.out_dir / "frames.txt", manifest.str());

  BitMask reach = reachable_free(*plan, start);
  const auto & last = run.frames.back().explored;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    seen += reach.values()[i] && last.values()[i];
  }
  std::ostringstream out;
  out << "start=" << format_cell(start) << "\n";
  out << "steps=" << run.frames.back().step << "\n";
  out << "complete=" << (run.complete ? 1 : 0) << "\n";
  out << "coverage=" << format_real(static_cast<double>(seen) /
    static_cast<double>(count_set(reach))) << "\n";
  return out.str();
}

std::string run_dataset(const DatasetOptions & opts)
{
  if (opts.keep_frames < 1) {
    fail(ErrorCode::kConfig, "keep_frames: must be >= 1");
  }
  if (opts.train_frames < 1 || opts.train_frames > opts.keep_frames) {
    fail(ErrorCode::kConfig, "train_frames: must be in [1, keep_frames]");
  }
  ensure_dir(opts.out_dir);
  auto plans = plans_for(opts.plans_dir, opts.spec, opts.count, opts.jobs, opts.out_dir);
  std::vector<std::vector<ObservationFrame>> frames(plans.size());
  parallel_for(plans.size(), opts.jobs, [&](std::size_t i) {
      auto shared = std::make_shared<const Floorplan>(plans[i]);
      Cell start = sample_free_cell(plans[i], mix_seed(opts.seed, i));
      frames[i] = run_exploration(shared, start, opts.max_steps, opts.radius, opts.keep_frames);
    });

  DatasetBuilder builder;
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    auto id = static_cast<std::uint32_t>(i);
    ids.push_back(id);
    for (const auto & s : build_samples(frames[i], plans[i], id, opts.mode)) {
      builder.add(s);
    }
    frames[i].clear();
  }
  write_file(opts.out_dir / "dataset.ssds", builder.finish());

  SplitManifest split = make_split(ids, opts.seed);
  write_text_file(opts.out_dir / "split.txt", split_text(split));

  ClassCensus census;
  for (auto id : split.train.empty() ? ids : split.train) {
    census.add(plans[id].labels);
  }
  ClassWeights weights = compute_class_weights(census);
  std::ostringstream wtext;
  for (int k = 0; k < kNumClasses; ++k) {
    wtext << class_name(class_from_index(k)) << "=" <<
      format_real(weights.w[static_cast<std::size_t>(k)]) << "\n";
  }
  write_text_file(opts.out_dir / "class_weights.txt", wtext.str());

  std::ostringstream out;
  out << "plans=" << plans.size() << "\n";
  out << "records=" << builder.size() << "\n";
  out << "keep_frames=" << opts.keep_frames << "\n";
  out << "train_frames=" << opts.train_frames << "\n";
  out << "mode=" << mode_name(opts.mode) << "\n";
  out << "train=" << split.train.size() << " val=" << split.val.size() << " test=" <<
    split.test.size() << "\n";
  write_text_file(opts.out_dir / "dataset_info.txt", out.str());
  return out.str();
}

std::string run_eval(const EvalCmdOptions & opts)
{
  ensure_dir(opts.out_dir);
  DatasetReader reader = DatasetReader::open(opts.dataset);
  if (reader.size() == 0) {
    fail(ErrorCode::kEmptyRegion, "dataset has no records");
  }
  std::set<std::uint32_t> all_ids;
  for (const auto & e : reader.index()) {
    all_ids.insert(e.plan_id);
  }

  fs::path split_path = opts.split.empty() ? opts.dataset.parent_path() / "split.txt" : opts.split;
  std::optional<SplitManifest> split;
  if (fs::exists(split_path)) {
    split = read_split(split_path);
  } else if (!opts.split.empty()) {
    fail(ErrorCode::kIo, "split manifest not found: " + split_path.string());
  }

  std::set<std::uint32_t> subset;
  if (opts.subset == "all" || !split) {
    subset = all_ids;
  } else {
    const auto & ids = split->get(opts.subset);
    subset.insert(ids.begin(), ids.end());
  }
  std::set<std::uint32_t> train_ids = split ? std::set<std::uint32_t>(split->train.begin(),
    split->train.end()) : all_ids;
  if (train_ids.empty()) {
    train_ids = all_ids;
  }

  PredictorContext ctx;
  ctx.endpoint = opts.endpoint;
  if (opts.predictor == PredictorKind::kFrequencyPrior) {
    ctx.census = census_of(reader, train_ids);
  }
  if (opts.predictor == PredictorKind::kNone) {
    fail(ErrorCode::kConfig, "predictor: eval needs a predictor");
  }
  std::unique_ptr<Predictor> shared;
  if (opts.predictor != PredictorKind::kOracle) {
    shared = make_predictor(opts.predictor, ctx);
  }

  std::vector<EvalReport> reports;
  std::ostringstream rows;
  rows << "plan step " << report_row_header() << "\n";
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < reader.size(); ++i) {
    const auto & e = reader.entry(i);
    if (e.query != ClassId::kBedroom || !subset.count(e.plan_id)) {
      continue;
    }
    TrainingSample s = reader.read(i);
    std::unique_ptr<Predictor> oracle;
    Predictor * predictor = shared.get();
    if (!predictor) {
      oracle = std::make_unique<OraclePredictor>(s.gt);
      predictor = oracle.get();
    }
    PredictionResult pred = predictor->predict(s.frame, s.query);
    LabelGrid labels = argmax_labels(pred.global_probs);
    if (count_set(evaluation_region(s.gt, s.frame.explored, opts.metrics.relax_region)) == 0 ||
      count_set(evaluation_region(s.gt, s.frame.explored, opts.metrics.relax_prf)) == 0)
    {
      ++skipped;
      continue;
    }
    EvalReport r = evaluate_frame(labels, s.gt, s.frame.explored, opts.metrics);
    rows << e.plan_id << " " << e.step << " " << report_row(r) << "\n";
    reports.push_back(r);
  }
  if (reports.empty()) {
    fail(ErrorCode::kEmptyRegion, "no frame of subset '" + opts.subset + "' has cells to score");
  }
  write_text_file(opts.out_dir / "eval_rows.txt", rows.str());
  std::string text = "predictor=" + std::string(predictor_kind_name(opts.predictor)) + "\n" +
    "subset=" + opts.subset + "\n" + "skipped_frames=" + std::to_string(skipped) + "\n" +
    summary_text(summarize(reports));
  write_text_file(opts.out_dir / "eval_report.txt", text);
  return text;
}

NavResult run_nav(const NavCmdOptions & opts)
{
  validate_nav_config(opts.nav);
  if (opts.episodes_per_plan < 1) {
    fail(ErrorCode::kConfig, "episodes_per_plan: must be >= 1");
  }
  if (!opts.paired && opts.predictor == PredictorKind::kNone) {
    fail(ErrorCode::kConfig, "predictor: an unpaired run needs a predictor other than none");
  }
  ensure_dir(opts.out_dir);
  auto plans = plans_for(opts.plans_dir, opts.spec, opts.count, opts.jobs, opts.out_dir);
  std::optional<ClassCensus> census;
  if (opts.predictor == PredictorKind::kFrequencyPrior) {
    census = census_of(plans);
  }

  const auto per = static_cast<std::size_t>(opts.episodes_per_plan);
  const std::size_t n = plans.size() * per;
  NavResult result;
  if (opts.paired) {
    result.baseline.resize(n);
  }
  result.guided.resize(n);
  parallel_for(n, opts.jobs, [&](std::size_t k) {
      const std::size_t p = k / per;
      const Floorplan & plan = plans[p];
      std::uint64_t seed = mix_seed(opts.seed, k);
      EpisodeSetup setup = sample_episode(plan, seed);
      NavConfig cfg = opts.nav;
      cfg.query = setup.query;
      auto tag = [&](EpisodeLog log) {
          log.plan_id = static_cast<std::uint32_t>(p);
          log.episode_seed = seed;
          return log;
        };
      if (opts.paired) {
        result.baseline[k] = tag(run_navigation_episode(plan, setup.start, cfg, nullptr));
      }
      PredictorContext ctx;
      ctx.gt = &plan.labels;
      ctx.census = census;
      ctx.endpoint = opts.endpoint;
      auto predictor = make_predictor(opts.predictor, ctx);
      result.guided[k] = tag(run_navigation_episode(plan, setup.start, cfg, predictor.get()));
    });

  const std::string guided_name(predictor_kind_name(opts.predictor));
  auto dump = [&](const std::vector<EpisodeLog> & logs, const std::string & arm) {
      std::string text;
      for (const auto & log : logs) {
        text += format_episode(log) + "\n";
      }
      write_text_file(opts.out_dir / ("episodes_" + arm + ".txt"), text);
    };
  dump(result.guided, guided_name);
  if (opts.paired) {
    dump(result.baseline, "baseline");
    result.report = format_paired(compare_arms(result.baseline, result.guided), "baseline",
      guided_name);
  } else {
    result.report = format_summary(guided_name, aggregate(result.guided)) + "\n";
  }
  write_text_file(opts.out_dir / "nav_report.txt", result.report);
  return result;
}

std::vector<std::string> render_layer_names()
{
  std::vector<std::string> names = {"gt", "local_semantics", "masked_gt", "position",
    "trajectory", "obstacles", "explored", "target", "loss_weight", "pred", "area"};
  for (int k = 0; k < kNumClasses; ++k) {
    names.push_back("prob." + std::string(class_name(class_from_index(k))));
  }
  return names;
}

std::string run_render(const RenderOptions & opts)
{
  const auto names = render_layer_names();
  if (std::find(names.begin(), names.end(), opts.layer) == names.end()) {
    fail(ErrorCode::kInvalidArgument, "unknown layer '" + opts.layer + "'");
  }
  if (opts.out.empty()) {
    fail(ErrorCode::kConfig, "out: output image path required");
  }
  Image image;
  if (opts.input.extension() == ".semgrid") {
    if (opts.layer != "gt") {
      fail(ErrorCode::kInvalidArgument, "layer '" + opts.layer + "' needs a dataset record");
    }
    image = render_labels(read_raster(opts.input), opts.scale);
  } else {
    DatasetReader reader = DatasetReader::open(opts.input);
    if (opts.record >= reader.size()) {
      fail(ErrorCode::kInvalidArgument, "record " + std::to_string(opts.record) + " out of range (" +
        std::to_string(reader.size()) + " records)");
    }
    TrainingSample s = reader.read(opts.record);
    const std::string & layer = opts.layer;
    if (layer == "gt") {
      image = render_labels(s.gt, opts.scale);
    } else if (layer == "local_semantics") {
      image = render_semantic(s.frame.local_semantics, opts.scale);
    } else if (layer == "masked_gt") {
      image = render_semantic(s.masked_gt, opts.scale);
    } else if (layer == "position") {
      BitMask m(s.gt.height(), s.gt.width());
      m[s.frame.pose] = 1;
      image = render_mask(m, opts.scale);
    } else if (layer == "trajectory") {
      image = render_mask(s.frame.trajectory, opts.scale);
    } else if (layer == "obstacles") {
      image = render_mask(s.frame.obstacles_seen, opts.scale);
    } else if (layer == "explored") {
      image = render_mask(s.frame.explored, opts.scale);
    } else if (layer == "target") {
      image = render_mask(s.target_mask, opts.scale);
    } else if (layer == "loss_weight") {
      image = render_mask(s.loss_weight_mask, opts.scale);
    } else {
      PredictorContext ctx;
      ctx.gt = &s.gt;
      ctx.endpoint = opts.endpoint;
      if (opts.predictor == PredictorKind::kFrequencyPrior) {
        ctx.census = ClassCensus{};
        ctx.census->add(s.gt);
      }
      auto predictor = make_predictor(opts.predictor, ctx);
      if (!predictor) {
        fail(ErrorCode::kConfig, "predictor: layer '" + layer + "' needs a predictor");
      }
      PredictionResult pred = predictor->predict(s.frame, s.query);
      if (layer == "pred") {
        image = render_labels(argmax_labels(pred.global_probs), opts.scale);
      } else if (layer == "area") {
        image = render_probability(pred.area_prob, opts.scale);
      } else {
        auto cls = class_from_name(layer.substr(5));
        image = render_probability(pred.global_probs.channel(index_of(*cls)), opts.scale);
      }
    }
  }
  write_ppm(opts.out, image);
  return "image=" + opts.out.string() + "\nwidth=" + std::to_string(image.width) + "\nheight=" +
         std::to_string(image.height) + "\n";
}

}  // namespace bevsim
