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


#include "bevsim/bevsim.h"

#include <memory>
#include <new>
#include <string>

#include "bevsim/dataset.hpp"
#include "bevsim/explorer.hpp"
#include "bevsim/floorplan.hpp"
#include "bevsim/pipeline.hpp"

#ifndef BEVSIM_VERSION
#define BEVSIM_VERSION "0.0.0"
#endif

struct bevsim_plan
{
  std::shared_ptr<const bevsim::Floorplan> plan;
};

struct bevsim_frames
{
  bevsim::ExplorationRun run;
};

namespace
{

thread_local std::string g_last_error;
thread_local std::string g_last_output;

template<typename F>
int guarded(F && body)
{
  try {
    body();
    g_last_error.clear();
    return BEVSIM_OK;
  } catch (const bevsim::Error & e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
  } catch (const std::exception & e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return BEVSIM_E_UNKNOWN;
}

void require(bool cond, const char * what)
{
  if (!cond) {
    bevsim::fail(bevsim::ErrorCode::kInvalidArgument, std::string("null argument: ") + what);
  }
}

std::string str(const char * s)
{
  return s ? std::string(s) : std::string();
}

bevsim::FloorplanSpec to_spec(const bevsim_floorplan_spec & c)
{
  bevsim::FloorplanSpec spec;
  spec.height = c.height;
  spec.width = c.width;
  spec.seed = c.seed;
  spec.min_rooms = c.min_rooms;
  spec.max_rooms = c.max_rooms;
  spec.min_room_side = c.min_room_side;
  spec.max_margin = c.max_margin;
  for (std::size_t k = 0; k < spec.quota.size(); ++k) {
    spec.quota[k] = {c.quota_min[k], c.quota_max[k]};
  }
  return spec;
}

bevsim::PredictorKind to_kind(const char * name)
{
  auto kind = bevsim::parse_predictor_kind(str(name));
  if (!kind) {
    bevsim::fail(bevsim::ErrorCode::kConfig, "predictor: unknown backend '" + str(name) + "'");
  }
  return *kind;
}

std::optional<bevsim::Endpoint> to_endpoint(const char * text)
{
  if (!text || !*text) {
    return std::nullopt;
  }
  return bevsim::Endpoint::parse(text);
}

const bevsim::ObservationFrame & frame_at(const bevsim_frames * frames, size_t index)
{
  require(frames, "frames");
  if (index >= frames->run.frames.size()) {
    bevsim::fail(bevsim::ErrorCode::kInvalidArgument, "frame index out of range");
  }
  return frames->run.frames[index];
}

}  // namespace

extern "C" {

const char * bevsim_version(void)
{
  return BEVSIM_VERSION;
}

const char * bevsim_status_name(int status)
{
  if (status < 0 || status > BEVSIM_E_UNKNOWN) {
    return "unknown";
  }
  return bevsim::error_code_name(static_cast<bevsim::ErrorCode>(status)).data();
}

const char * bevsim_last_error(void)
{
  return g_last_error.c_str();
}

const char * bevsim_last_output(void)
{
  return g_last_output.c_str();
}

void bevsim_floorplan_spec_default(bevsim_floorplan_spec * spec)
{
  if (!spec) {
    return;
  }
  bevsim::FloorplanSpec d;
  spec->height = d.height;
  spec->width = d.width;
  spec->seed = d.seed;
  spec->min_rooms = d.min_rooms;
  spec->max_rooms = d.max_rooms;
  spec->min_room_side = d.min_room_side;
  spec->max_margin = d.max_margin;
  for (std::size_t k = 0; k < d.quota.size(); ++k) {
    spec->quota_min[k] = d.quota[k].min;
    spec->quota_max[k] = d.quota[k].max;
  }
}

int bevsim_plan_generate(const bevsim_floorplan_spec * spec, bevsim_plan ** out)
{
  return guarded([&] {
             require(spec && out, "spec/out");
             *out = new bevsim_plan{std::make_shared<const bevsim::Floorplan>(
                 bevsim::generate_floorplan(to_spec(*spec)))};
           });
}

int bevsim_plan_tiny_two_room(bevsim_plan ** out)
{
  return guarded([&] {
             require(out, "out");
             *out = new bevsim_plan{std::make_shared<const bevsim::Floorplan>(
                 bevsim::tiny_two_room())};
           });
}

int bevsim_plan_load(const char * raster_path, bevsim_plan ** out)
{
  return guarded([&] {
             require(raster_path && out, "path/out");
             *out = new bevsim_plan{std::make_shared<const bevsim::Floorplan>(
                 bevsim::load_floorplan(raster_path))};
           });
}

int bevsim_plan_save(const bevsim_plan * plan, const char * raster_path, const char * sidecar_path)
{
  return guarded([&] {
             require(plan && raster_path && sidecar_path, "plan/paths");
             bevsim::save_floorplan(*plan->plan, raster_path, sidecar_path);
           });
}

int bevsim_plan_shape(const bevsim_plan * plan, int * height, int * width)
{
  return guarded([&] {
             require(plan && height && width, "plan/height/width");
             *height = plan->plan->labels.height();
             *width = plan->plan->labels.width();
           });
}

int bevsim_plan_labels(const bevsim_plan * plan, uint8_t * out, size_t len)
{
  return guarded([&] {
             require(plan && out, "plan/out");
             const auto & labels = plan->plan->labels;
             if (len != labels.size()) {
               bevsim::fail(bevsim::ErrorCode::kDimensionMismatch, "buffer holds " +
               std::to_string(len) + " cells, plan has " + std::to_string(labels.size()));
             }
             for (size_t i = 0; i < len; ++i) {
               out[i] = static_cast<uint8_t>(labels.values()[i]);
             }
           });
}

int bevsim_plan_validate(const bevsim_plan * plan, int * ok)
{
  return guarded([&] {
             require(plan && ok, "plan/ok");
             auto report = bevsim::validate_floorplan(*plan->plan);
             *ok = report.ok() ? 1 : 0;
             g_last_output = report.to_string();
           });
}

void bevsim_plan_free(bevsim_plan * plan)
{
  delete plan;
}

int bevsim_explore(const bevsim_plan * plan, int start_row, int start_col, int max_steps,
  int radius, bevsim_frames ** out)
{
  return guarded([&] {
             require(plan && out, "plan/out");
             auto run = bevsim::run_exploration_full(plan->plan, {start_row, start_col}, max_steps,
             radius);
             *out = new bevsim_frames{std::move(run)};
           });
}

int bevsim_frames_count(const bevsim_frames * frames, size_t * count)
{
  return guarded([&] {
             require(frames && count, "frames/count");
             *count = frames->run.frames.size();
           });
}

int bevsim_frames_complete(const bevsim_frames * frames, int * complete)
{
  return guarded([&] {
             require(frames && complete, "frames/complete");
             *complete = frames->run.complete ? 1 : 0;
           });
}

int bevsim_frames_pose(const bevsim_frames * frames, size_t index, int * row, int * col)
{
  return guarded([&] {
             require(row && col, "row/col");
             const auto & f = frame_at(frames, index);
             *row = f.pose.row;
             *col = f.pose.col;
           });
}

int bevsim_frames_explored(const bevsim_frames * frames, size_t index, uint8_t * out, size_t len)
{
  return guarded([&] {
             require(out, "out");
             const auto & f = frame_at(frames, index);
             if (len != f.explored.size()) {
               bevsim::fail(bevsim::ErrorCode::kDimensionMismatch, "explored buffer size mismatch");
             }
             for (size_t i = 0; i < len; ++i) {
               out[i] = f.explored.values()[i];
             }
           });
}

void bevsim_frames_free(bevsim_frames * frames)
{
  delete frames;
}

int bevsim_masked_weighted_bce(const double * logits, const double * target, int height,
  int width, int channels, const double * weights, const uint8_t * valid, double * loss,
  double * grad)
{
  return guarded([&] {
             require(logits && target && weights && valid && loss, "inputs");
             if (height < 1 || width < 1 || channels < 1) {
               bevsim::fail(bevsim::ErrorCode::kInvalidArgument, "dimensions must be positive");
             }
             bevsim::ChannelGrid x(height, width, channels);
             bevsim::ChannelGrid y(height, width, channels);
             bevsim::BitMask v(height, width);
             std::copy(logits, logits + x.values().size(), x.values().begin());
             std::copy(target, target + y.values().size(), y.values().begin());
             std::copy(valid, valid + v.size(), v.values().begin());
             std::span<const double> w(weights, static_cast<size_t>(channels));
             *loss = bevsim::masked_weighted_bce(x, y, w, v);
             if (grad) {
               auto g = bevsim::masked_weighted_bce_grad(x, y, w, v);
               std::copy(g.values().begin(), g.values().end(), grad);
             }
           });
}

void bevsim_gen_config_default(bevsim_gen_config * cfg)
{
  if (!cfg) {
    return;
  }
  bevsim_floorplan_spec_default(&cfg->spec);
  cfg->count = 1;
  cfg->out_dir = nullptr;
  cfg->jobs = 1;
}

void bevsim_explore_config_default(bevsim_explore_config * cfg)
{
  if (!cfg) {
    return;
  }
  bevsim::ExploreOptions d;
  cfg->plan = nullptr;
  cfg->has_start = 0;
  cfg->start_row = 0;
  cfg->start_col = 0;
  cfg->seed = d.seed;
  cfg->max_steps = d.max_steps;
  cfg->radius = d.radius;
  cfg->keep_first = d.keep_first;
  cfg->out_dir = nullptr;
}

void bevsim_dataset_config_default(bevsim_dataset_config * cfg)
{
  if (!cfg) {
    return;
  }
  bevsim::DatasetOptions d;
  cfg->plans_dir = nullptr;
  bevsim_floorplan_spec_default(&cfg->spec);
  cfg->count = d.count;
  cfg->seed = d.seed;
  cfg->keep_frames = d.keep_frames;
  cfg->train_frames = d.train_frames;
  cfg->max_steps = d.max_steps;
  cfg->radius = d.radius;
  cfg->observed_only = 0;
  cfg->out_dir = nullptr;
  cfg->jobs = 1;
}

void bevsim_eval_config_default(bevsim_eval_config * cfg)
{
  if (!cfg) {
    return;
  }
  bevsim::EvalCmdOptions d;
  cfg->dataset = nullptr;
  cfg->split = nullptr;
  cfg->subset = "test";
  cfg->predictor = "oracle";
  cfg->endpoint = nullptr;
  cfg->relax_region = d.metrics.relax_region ? 1 : 0;
  cfg->relax_prf = d.metrics.relax_prf ? 1 : 0;
  cfg->min_room_area = d.metrics.min_room_area;
  cfg->out_dir = nullptr;
}

void bevsim_nav_config_default(bevsim_nav_config * cfg)
{
  if (!cfg) {
    return;
  }
  bevsim::NavCmdOptions d;
  cfg->plans_dir = nullptr;
  bevsim_floorplan_spec_default(&cfg->spec);
  cfg->count = d.count;
  cfg->episodes_per_plan = d.episodes_per_plan;
  cfg->seed = d.seed;
  cfg->repredict_every = d.nav.repredict_every;
  cfg->window = d.nav.window;
  cfg->alpha = d.nav.alpha;
  cfg->max_steps = d.nav.max_steps;
  cfg->radius = d.nav.radius;
  cfg->predictor = "oracle";
  cfg->endpoint = nullptr;
  cfg->paired = 1;
  cfg->out_dir = nullptr;
  cfg->jobs = 1;
}

void bevsim_render_config_default(bevsim_render_config * cfg)
{
  if (!cfg) {
    return;
  }
  cfg->input = nullptr;
  cfg->record = 0;
  cfg->layer = "gt";
  cfg->predictor = "oracle";
  cfg->endpoint = nullptr;
  cfg->scale = 1;
  cfg->out = nullptr;
}

int bevsim_cmd_gen(const bevsim_gen_config * cfg)
{
  return guarded([&] {
             require(cfg, "cfg");
             bevsim::GenOptions o;
             o.spec = to_spec(cfg->spec);
             o.count = cfg->count;
             o.out_dir = str(cfg->out_dir);
             o.jobs = cfg->jobs;
             g_last_output = bevsim::run_gen(o);
           });
}

int bevsim_cmd_explore(const bevsim_explore_config * cfg)
{
  return guarded([&] {
             require(cfg && cfg->plan, "cfg/plan");
             bevsim::ExploreOptions o;
             o.plan = cfg->plan;
             if (cfg->has_start) {
               o.start = bevsim::Cell{cfg->start_row, cfg->start_col};
             }
             o.seed = cfg->seed;
             o.max_steps = cfg->max_steps;
             o.radius = cfg->radius;
             o.keep_first = cfg->keep_first;
             o.out_dir = str(cfg->out_dir);
             g_last_output = bevsim::run_explore_cmd(o);
           });
}

int bevsim_cmd_dataset(const bevsim_dataset_config * cfg)
{
  return guarded([&] {
             require(cfg, "cfg");
             bevsim::DatasetOptions o;
             o.plans_dir = str(cfg->plans_dir);
             o.spec = to_spec(cfg->spec);
             o.count = cfg->count;
             o.seed = cfg->seed;
             o.keep_frames = cfg->keep_frames;
             o.train_frames = cfg->train_frames;
             o.max_steps = cfg->max_steps;
             o.radius = cfg->radius;
             o.mode = cfg->observed_only ? bevsim::SupervisionMode::kObservedOnly :
             bevsim::SupervisionMode::kUnexplored;
             o.out_dir = str(cfg->out_dir);
             o.jobs = cfg->jobs;
             g_last_output = bevsim::run_dataset(o);
           });
}

int bevsim_cmd_eval(const bevsim_eval_config * cfg)
{
  return guarded([&] {
             require(cfg && cfg->dataset, "cfg/dataset");
             bevsim::EvalCmdOptions o;
             o.dataset = cfg->dataset;
             o.split = str(cfg->split);
             o.subset = cfg->subset ? cfg->subset : "test";
             o.predictor = to_kind(cfg->predictor);
             o.endpoint = to_endpoint(cfg->endpoint);
             o.metrics.relax_region = cfg->relax_region != 0;
             o.metrics.relax_prf = cfg->relax_prf != 0;
             o.metrics.min_room_area = cfg->min_room_area;
             o.out_dir = str(cfg->out_dir);
             g_last_output = bevsim::run_eval(o);
           });
}

int bevsim_cmd_nav(const bevsim_nav_config * cfg)
{
  return guarded([&] {
             require(cfg, "cfg");
             bevsim::NavCmdOptions o;
             o.plans_dir = str(cfg->plans_dir);
             o.spec = to_spec(cfg->spec);
             o.count = cfg->count;
             o.episodes_per_plan = cfg->episodes_per_plan;
             o.seed = cfg->seed;
             o.nav.repredict_every = cfg->repredict_every;
             o.nav.window = cfg->window;
             o.nav.alpha = cfg->alpha;
             o.nav.max_steps = cfg->max_steps;
             o.nav.radius = cfg->radius;
             o.predictor = to_kind(cfg->predictor);
             o.endpoint = to_endpoint(cfg->endpoint);
             o.paired = cfg->paired != 0;
             o.out_dir = str(cfg->out_dir);
             o.jobs = cfg->jobs;
             g_last_output = bevsim::run_nav(o).report;
           });
}

int bevsim_cmd_render(const bevsim_render_config * cfg)
{
  return guarded([&] {
             require(cfg && cfg->input, "cfg/input");
             bevsim::RenderOptions o;
             o.input = cfg->input;
             o.record = cfg->record;
             o.layer = str(cfg->layer);
             o.predictor = to_kind(cfg->predictor);
             o.endpoint = to_endpoint(cfg->endpoint);
             o.scale = cfg->scale;
             o.out = str(cfg->out);
             g_last_output = bevsim::run_render(o);
           });
}

}  // extern "C"
