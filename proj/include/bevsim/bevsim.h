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


#ifndef BEVSIM__BEVSIM_H_
#define BEVSIM__BEVSIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BEVSIM_EXPORT __declspec(dllexport)
#else
#define BEVSIM_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Every call returns a status; details of the last failure on the calling
// thread are available from bevsim_last_error().
typedef enum bevsim_status
{
  BEVSIM_OK = 0,
  BEVSIM_E_INVALID_ARGUMENT = 1,
  BEVSIM_E_DIMENSION_MISMATCH = 2,
  BEVSIM_E_BAD_MAGIC = 3,
  BEVSIM_E_BAD_HEADER = 4,
  BEVSIM_E_DIMENSION_OVERFLOW = 5,
  BEVSIM_E_LABEL_OUT_OF_RANGE = 6,
  BEVSIM_E_TRUNCATED = 7,
  BEVSIM_E_TRAILING_DATA = 8,
  BEVSIM_E_GENERATION_FAILURE = 9,
  BEVSIM_E_SIMULATION_INVARIANT = 10,
  BEVSIM_E_EMPTY_REGION = 11,
  BEVSIM_E_CORRUPT_RECORD = 12,
  BEVSIM_E_CHECKSUM_MISMATCH = 13,
  BEVSIM_E_PROTOCOL_MAGIC = 14,
  BEVSIM_E_PROTOCOL_VERSION = 15,
  BEVSIM_E_PROTOCOL_SHAPE = 16,
  BEVSIM_E_PROTOCOL_MESSAGE = 17,
  BEVSIM_E_TRANSPORT = 18,
  BEVSIM_E_IO = 19,
  BEVSIM_E_CONFIG = 20,
  BEVSIM_E_UNKNOWN = 21
} bevsim_status;

BEVSIM_EXPORT const char * bevsim_version(void);
BEVSIM_EXPORT const char * bevsim_status_name(int status);
BEVSIM_EXPORT const char * bevsim_last_error(void);
// Text report of the last successful bevsim_cmd_* call on this thread.
BEVSIM_EXPORT const char * bevsim_last_output(void);

typedef struct bevsim_floorplan_spec
{
  int height;
  int width;
  uint64_t seed;
  int min_rooms;
  int max_rooms;
  int min_room_side;
  int max_margin;
  int quota_min[6];  // bedroom, living_room, kitchen, bathroom, balcony, storage
  int quota_max[6];
} bevsim_floorplan_spec;

BEVSIM_EXPORT void bevsim_floorplan_spec_default(bevsim_floorplan_spec * spec);

typedef struct bevsim_plan bevsim_plan;

BEVSIM_EXPORT int bevsim_plan_generate(const bevsim_floorplan_spec * spec, bevsim_plan ** out);
BEVSIM_EXPORT int bevsim_plan_tiny_two_room(bevsim_plan ** out);
BEVSIM_EXPORT int bevsim_plan_load(const char * raster_path, bevsim_plan ** out);
BEVSIM_EXPORT int bevsim_plan_save(const bevsim_plan * plan, const char * raster_path,
  const char * sidecar_path);
BEVSIM_EXPORT int bevsim_plan_shape(const bevsim_plan * plan, int * height, int * width);
// Copies height * width class ids, row-major.
BEVSIM_EXPORT int bevsim_plan_labels(const bevsim_plan * plan, uint8_t * out, size_t len);
// *ok = 1 when the plan passes every structural check; the report goes to bevsim_last_output().
BEVSIM_EXPORT int bevsim_plan_validate(const bevsim_plan * plan, int * ok);
BEVSIM_EXPORT void bevsim_plan_free(bevsim_plan * plan);

typedef struct bevsim_frames bevsim_frames;

BEVSIM_EXPORT int bevsim_explore(const bevsim_plan * plan, int start_row, int start_col,
  int max_steps, int radius, bevsim_frames ** out);
BEVSIM_EXPORT int bevsim_frames_count(const bevsim_frames * frames, size_t * count);
BEVSIM_EXPORT int bevsim_frames_complete(const bevsim_frames * frames, int * complete);
BEVSIM_EXPORT int bevsim_frames_pose(const bevsim_frames * frames, size_t index, int * row,
  int * col);
BEVSIM_EXPORT int bevsim_frames_explored(const bevsim_frames * frames, size_t index,
  uint8_t * out, size_t len);
BEVSIM_EXPORT void bevsim_frames_free(bevsim_frames * frames);

// Weighted masked BCE over an H x W x C cell-major tensor; grad may be NULL.
BEVSIM_EXPORT int bevsim_masked_weighted_bce(const double * logits, const double * target,
  int height, int width, int channels, const double * weights, const uint8_t * valid,
  double * loss, double * grad);

typedef struct bevsim_gen_config
{
  bevsim_floorplan_spec spec;
  int count;
  const char * out_dir;
  int jobs;
} bevsim_gen_config;

typedef struct bevsim_explore_config
{
  const char * plan;
  int has_start;
  int start_row;
  int start_col;
  uint64_t seed;
  int max_steps;
  int radius;
  int keep_first;
  const char * out_dir;
} bevsim_explore_config;

typedef struct bevsim_dataset_config
{
  const char * plans_dir;  // NULL or "": generate `count` plans from `spec`
  bevsim_floorplan_spec spec;
  int count;
  uint64_t seed;
  int keep_frames;
  int train_frames;
  int max_steps;
  int radius;
  int observed_only;
  const char * out_dir;
  int jobs;
} bevsim_dataset_config;

typedef struct bevsim_eval_config
{
  const char * dataset;
  const char * split;      // NULL or "": split.txt beside the dataset
  const char * subset;     // train, val, test or all
  const char * predictor;  // oracle, uniform, frequency_prior, external
  const char * endpoint;   // unix:<path> or tcp:<host>:<port>
  int relax_region;
  int relax_prf;
  int min_room_area;
  const char * out_dir;
} bevsim_eval_config;

typedef struct bevsim_nav_config
{
  const char * plans_dir;
  bevsim_floorplan_spec spec;
  int count;
  int episodes_per_plan;
  uint64_t seed;
  int repredict_every;
  int window;
  double alpha;
  int max_steps;
  int radius;
  const char * predictor;
  const char * endpoint;
  int paired;
  const char * out_dir;
  int jobs;
} bevsim_nav_config;

typedef struct bevsim_render_config
{
  const char * input;  // .ssds dataset or .semgrid plan
  size_t record;
  const char * layer;
  const char * predictor;
  const char * endpoint;
  int scale;
  const char * out;
} bevsim_render_config;

BEVSIM_EXPORT void bevsim_gen_config_default(bevsim_gen_config * cfg);
BEVSIM_EXPORT void bevsim_explore_config_default(bevsim_explore_config * cfg);
BEVSIM_EXPORT void bevsim_dataset_config_default(bevsim_dataset_config * cfg);
BEVSIM_EXPORT void bevsim_eval_config_default(bevsim_eval_config * cfg);
BEVSIM_EXPORT void bevsim_nav_config_default(bevsim_nav_config * cfg);
BEVSIM_EXPORT void bevsim_render_config_default(bevsim_render_config * cfg);

BEVSIM_EXPORT int bevsim_cmd_gen(const bevsim_gen_config * cfg);
BEVSIM_EXPORT int bevsim_cmd_explore(const bevsim_explore_config * cfg);
BEVSIM_EXPORT int bevsim_cmd_dataset(const bevsim_dataset_config * cfg);
BEVSIM_EXPORT int bevsim_cmd_eval(const bevsim_eval_config * cfg);
BEVSIM_EXPORT int bevsim_cmd_nav(const bevsim_nav_config * cfg);
BEVSIM_EXPORT int bevsim_cmd_render(const bevsim_render_config * cfg);

#ifdef __cplusplus
}
#endif

#endif  // BEVSIM__BEVSIM_H_
