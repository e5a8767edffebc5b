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


#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bevsim/bevsim.h"

namespace
{

constexpr const char * kSeedEnv = "SEMSIGHT_SEED";
const char * const kRegionClasses[6] = {"bedroom", "living_room", "kitchen", "bathroom", "balcony",
  "storage"};

struct SpecFlags
{
  bevsim_floorplan_spec spec{};
  std::vector<std::string> quota;

  void add(CLI::App * app, bool with_seed)
  {
    bevsim_floorplan_spec_default(&spec);
    app->add_option("--height", spec.height, "Plan height in cells")->capture_default_str();
    app->add_option("--width", spec.width, "Plan width in cells")->capture_default_str();
    app->add_option("--min-rooms", spec.min_rooms)->capture_default_str();
    app->add_option("--max-rooms", spec.max_rooms)->capture_default_str();
    app->add_option("--min-room-side", spec.min_room_side)->capture_default_str();
    app->add_option("--max-margin", spec.max_margin, "Largest outside margin")->capture_default_str();
    app->add_option("--quota", quota, "Room count bounds, class=min:max (repeatable)");
    if (with_seed) {
      app->add_option("--seed", spec.seed, "Seed of the first plan")->capture_default_str();
    }
  }

  void apply()
  {
    for (const auto & q : quota) {
      if (q.empty()) {
        continue;
      }
      auto eq = q.find('=');
      auto colon = q.find(':', eq == std::string::npos ? 0 : eq);
      if (eq == std::string::npos || colon == std::string::npos) {
        throw CLI::ValidationError("--quota", "expected class=min:max, got '" + q + "'");
      }
      std::string name = q.substr(0, eq);
      int k = 0;
      while (k < 6 && name != kRegionClasses[k]) {
        ++k;
      }
      if (k == 6) {
        throw CLI::ValidationError("--quota", "unknown room class '" + name + "'");
      }
      try {
        spec.quota_min[k] = std::stoi(q.substr(eq + 1, colon - eq - 1));
        spec.quota_max[k] = std::stoi(q.substr(colon + 1));
      } catch (const std::exception &) {
        throw CLI::ValidationError("--quota", "bad bounds in '" + q + "'");
      }
    }
  }
};

int default_jobs()
{
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

bool has_flag(int argc, char ** argv, const std::string & flag)
{
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == flag || a.rfind(flag + "=", 0) == 0) {
      return true;
    }
  }
  return false;
}

void write_manifest(const CLI::App * sub, const std::filesystem::path & path)
{
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << "# bevsim " << bevsim_version() << " " << sub->get_name() << "\n";
  out << "[" << sub->get_name() << "]\n" << sub->config_to_str(true, false);
  if (!out) {
    std::cerr << "warning: could not write manifest " << path << "\n";
  }
}

int finish(int status)
{
  if (status != BEVSIM_OK) {
    std::cerr << "error: " << bevsim_last_error() << "\n";
    return status;
  }
  std::cout << bevsim_last_output();
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  std::vector<std::string> args(argv, argv + argc);

  CLI::App app{"bevsim: floorplan, exploration and navigation simulator"};
  app.set_version_flag("--version", std::string(bevsim_version()));
  app.require_subcommand(1);
  app.set_config("--config", "", "INI manifest to replay; command-line flags override it");
  const int jobs_default = default_jobs();

  // gen
  auto * gen = app.add_subcommand("gen", "Generate floorplans");
  gen->configurable();
  bevsim_gen_config gen_cfg;
  bevsim_gen_config_default(&gen_cfg);
  SpecFlags gen_spec;
  gen_spec.add(gen, true);
  std::string gen_out;
  gen->add_option("--count", gen_cfg.count, "Number of plans")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen_cfg.jobs = jobs_default;
  gen->add_option("--jobs", gen_cfg.jobs, "Worker threads")->capture_default_str();

  // explore
  auto * explore = app.add_subcommand("explore", "Run frontier exploration on one plan");
  explore->configurable();
  bevsim_explore_config ex_cfg;
  bevsim_explore_config_default(&ex_cfg);
  std::string ex_plan, ex_out, ex_start;
  explore->add_option("--plan", ex_plan, "Plan raster (.semgrid)")->required();
  explore->add_option("--start", ex_start, "Start cell row,col (default: random free cell)");
  explore->add_option("--seed", ex_cfg.seed, "Seed for the start cell")->capture_default_str();
  explore->add_option("--max-steps", ex_cfg.max_steps)->capture_default_str();
  explore->add_option("--radius", ex_cfg.radius, "Sensor radius in cells")->capture_default_str();
  explore->add_option("--keep-first", ex_cfg.keep_first, "Frames dumped as rasters")
  ->capture_default_str();
  explore->add_option("--out", ex_out, "Output directory")->required();

  // dataset
  auto * dataset = app.add_subcommand("dataset", "Build an SSDS training dataset");
  dataset->configurable();
  bevsim_dataset_config ds_cfg;
  bevsim_dataset_config_default(&ds_cfg);
  SpecFlags ds_spec;
  ds_spec.add(dataset, false);
  std::string ds_plans, ds_out, ds_mode = "unexplored";
  std::uint64_t ds_plan_seed = 0;
  dataset->add_option("--plans", ds_plans, "Directory of plan_*.semgrid (default: generate)");
  dataset->add_option("--count", ds_cfg.count, "Plans to generate")->capture_default_str();
  dataset->add_option("--plan-seed", ds_plan_seed, "Seed of the first generated plan")
  ->capture_default_str();
  dataset->add_option("--seed", ds_cfg.seed, "Start and split seed")->capture_default_str();
  dataset->add_option("--keep-frames", ds_cfg.keep_frames)->capture_default_str();
  dataset->add_option("--train-frames", ds_cfg.train_frames)->capture_default_str();
  dataset->add_option("--max-steps", ds_cfg.max_steps)->capture_default_str();
  dataset->add_option("--radius", ds_cfg.radius)->capture_default_str();
  dataset->add_option("--mode", ds_mode, "Supervised cells")
  ->check(CLI::IsMember({"unexplored", "observed_only"}))->capture_default_str();
  dataset->add_option("--out", ds_out, "Output directory")->required();
  ds_cfg.jobs = jobs_default;
  dataset->add_option("--jobs", ds_cfg.jobs, "Worker threads")->capture_default_str();

  // eval
  auto * eval = app.add_subcommand("eval", "Score a predictor on a dataset");
  eval->configurable();
  bevsim_eval_config ev_cfg;
  bevsim_eval_config_default(&ev_cfg);
  std::string ev_dataset, ev_split, ev_subset = "test", ev_pred = "oracle", ev_endpoint, ev_out;
  bool ev_relax = true, ev_relax_prf = false;
  eval->add_option("--dataset", ev_dataset, "SSDS file")->required();
  eval->add_option("--split", ev_split, "Split manifest (default: split.txt beside the dataset)");
  eval->add_option("--subset", ev_subset)->check(CLI::IsMember({"train", "val", "test", "all"}))
  ->capture_default_str();
  eval->add_option("--predictor", ev_pred)
  ->check(CLI::IsMember({"oracle", "uniform", "frequency_prior", "external"}))->capture_default_str();
  eval->add_option("--endpoint", ev_endpoint, "unix:<path> or tcp:<host>:<port>");
  eval->add_option("--relax-region", ev_relax, "Drop GT boundary cells for PA/FWIoU")
  ->capture_default_str();
  eval->add_option("--relax-prf", ev_relax_prf, "Drop GT boundary cells for P/R/F1")
  ->capture_default_str();
  eval->add_option("--min-room-area", ev_cfg.min_room_area)->capture_default_str();
  eval->add_option("--out", ev_out, "Output directory")->required();

  // nav
  auto * nav = app.add_subcommand("nav", "Paired navigation benchmark");
  nav->configurable();
  bevsim_nav_config nav_cfg;
  bevsim_nav_config_default(&nav_cfg);
  SpecFlags nav_spec;
  nav_spec.add(nav, false);
  std::string nav_plans, nav_pred = "oracle", nav_endpoint, nav_out;
  bool nav_paired = true;
  std::uint64_t nav_plan_seed = 0;
  nav->add_option("--plans", nav_plans, "Directory of plan_*.semgrid (default: generate)");
  nav->add_option("--count", nav_cfg.count, "Plans to generate")->capture_default_str();
  nav->add_option("--plan-seed", nav_plan_seed, "Seed of the first generated plan")
  ->capture_default_str();
  nav->add_option("--episodes-per-plan", nav_cfg.episodes_per_plan)->capture_default_str();
  nav->add_option("--seed", nav_cfg.seed, "Episode seed")->capture_default_str();
  nav->add_option("--repredict-every", nav_cfg.repredict_every)->capture_default_str();
  nav->add_option("--window", nav_cfg.window, "Odd frontier window side")->capture_default_str();
  nav->add_option("--alpha", nav_cfg.alpha, "Distance discount")->capture_default_str();
  nav->add_option("--max-steps", nav_cfg.max_steps)->capture_default_str();
  nav->add_option("--radius", nav_cfg.radius)->capture_default_str();
  nav->add_option("--predictor", nav_pred)
  ->check(CLI::IsMember({"none", "oracle", "uniform", "frequency_prior", "external"}))
  ->capture_default_str();
  nav->add_option("--endpoint", nav_endpoint, "unix:<path> or tcp:<host>:<port>");
  nav->add_option("--paired", nav_paired, "Also run the predictor-free baseline")
  ->capture_default_str();
  nav->add_option("--out", nav_out, "Output directory")->required();
  nav_cfg.jobs = jobs_default;
  nav->add_option("--jobs", nav_cfg.jobs, "Worker threads")->capture_default_str();

  // render
  auto * render = app.add_subcommand("render", "Export a layer as a PPM image");
  render->configurable();
  bevsim_render_config rd_cfg;
  bevsim_render_config_default(&rd_cfg);
  std::string rd_input, rd_layer = "gt", rd_pred = "oracle", rd_endpoint, rd_out;
  render->add_option("--input", rd_input, "SSDS dataset or plan raster")->required();
  render->add_option("--record", rd_cfg.record, "Dataset record index")->capture_default_str();
  render->add_option("--layer", rd_layer)->capture_default_str();
  render->add_option("--predictor", rd_pred)
  ->check(CLI::IsMember({"oracle", "uniform", "frequency_prior", "external"}))->capture_default_str();
  render->add_option("--endpoint", rd_endpoint, "unix:<path> or tcp:<host>:<port>");
  render->add_option("--scale", rd_cfg.scale, "Pixels per cell")->capture_default_str();
  render->add_option("--out", rd_out, "Output .ppm path")->required();

  if (const char * env = std::getenv(kSeedEnv); env && *env && !has_flag(argc, argv, "--seed")) {
    for (int i = 1; i < argc; ++i) {
      CLI::App * sub = app.get_subcommand_no_throw(argv[i]);
      if (sub) {
        if (sub->get_option_no_throw("--seed")) {
          args.push_back(std::string("--seed=") + env);
        }
        break;
      }
    }
  }

  std::vector<const char *> cargv;
  for (const auto & a : args) {
    cargv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
    gen_spec.apply();
    ds_spec.apply();
    nav_spec.apply();
  } catch (const CLI::ParseError & e) {
    return app.exit(e);
  }

  if (gen->parsed()) {
    gen_cfg.spec = gen_spec.spec;
    gen_cfg.out_dir = gen_out.c_str();
    write_manifest(gen, std::filesystem::path(gen_out) / "manifest.ini");
    return finish(bevsim_cmd_gen(&gen_cfg));
  }
  if (explore->parsed()) {
    ex_cfg.plan = ex_plan.c_str();
    ex_cfg.out_dir = ex_out.c_str();
    if (!ex_start.empty()) {
      ex_cfg.has_start = 1;
      if (std::sscanf(ex_start.c_str(), "%d,%d", &ex_cfg.start_row, &ex_cfg.start_col) != 2) {
        std::cerr << "error: config: start: expected row,col\n";
        return BEVSIM_E_CONFIG;
      }
    }
    write_manifest(explore, std::filesystem::path(ex_out) / "manifest.ini");
    return finish(bevsim_cmd_explore(&ex_cfg));
  }
  if (dataset->parsed()) {
    ds_cfg.spec = ds_spec.spec;
    ds_cfg.spec.seed = ds_plan_seed;
    ds_cfg.plans_dir = ds_plans.c_str();
    ds_cfg.observed_only = ds_mode == "observed_only" ? 1 : 0;
    ds_cfg.out_dir = ds_out.c_str();
    write_manifest(dataset, std::filesystem::path(ds_out) / "manifest.ini");
    return finish(bevsim_cmd_dataset(&ds_cfg));
  }
  if (eval->parsed()) {
    ev_cfg.dataset = ev_dataset.c_str();
    ev_cfg.split = ev_split.c_str();
    ev_cfg.subset = ev_subset.c_str();
    ev_cfg.predictor = ev_pred.c_str();
    ev_cfg.endpoint = ev_endpoint.c_str();
    ev_cfg.relax_region = ev_relax ? 1 : 0;
    ev_cfg.relax_prf = ev_relax_prf ? 1 : 0;
    ev_cfg.out_dir = ev_out.c_str();
    write_manifest(eval, std::filesystem::path(ev_out) / "manifest.ini");
    return finish(bevsim_cmd_eval(&ev_cfg));
  }
  if (nav->parsed()) {
    nav_cfg.spec = nav_spec.spec;
    nav_cfg.spec.seed = nav_plan_seed;
    nav_cfg.plans_dir = nav_plans.c_str();
    nav_cfg.predictor = nav_pred.c_str();
    nav_cfg.endpoint = nav_endpoint.c_str();
    nav_cfg.paired = nav_paired ? 1 : 0;
    nav_cfg.out_dir = nav_out.c_str();
    write_manifest(nav, std::filesystem::path(nav_out) / "manifest.ini");
    return finish(bevsim_cmd_nav(&nav_cfg));
  }
  if (render->parsed()) {
    rd_cfg.input = rd_input.c_str();
    rd_cfg.layer = rd_layer.c_str();
    rd_cfg.predictor = rd_pred.c_str();
    rd_cfg.endpoint = rd_endpoint.c_str();
    rd_cfg.out = rd_out.c_str();
    write_manifest(render, std::filesystem::path(rd_out + ".manifest.ini"));
    return finish(bevsim_cmd_render(&rd_cfg));
  }
  return 0;
}
