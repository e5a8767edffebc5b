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

// Plain C client of libbevsim: compiles as C11 against bevsim.h alone.

#define _POSIX_C_SOURCE 200809L

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

#include "bevsim/bevsim.h"

static int failures = 0;

#define CHECK(cond) \
  do { \
    if (!(cond)) { \
      fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n", __FILE__, __LINE__, #cond, \
        bevsim_last_error()); \
      ++failures; \
    } \
  } while (0)

static const char * const kTinyRows[8] = {
  "........",
  ".######.",
  ".#bb#l#.",
  ".#bbdle.",
  ".#bb#l#.",
  ".#bb#l#.",
  ".######.",
  "........",
};

static uint8_t class_of(char ch)
{
  switch (ch) {
    case 'b': return 0;
    case 'l': return 1;
    case 'd': return 6;
    case '#': return 7;
    case 'e': return 8;
    default: return 9;
  }
}

static void test_status_names(void)
{
  CHECK(strlen(bevsim_version()) > 0);
  CHECK(strcmp(bevsim_status_name(BEVSIM_OK), "ok") == 0);
  CHECK(strcmp(bevsim_status_name(BEVSIM_E_CHECKSUM_MISMATCH), "checksum_mismatch") == 0);
  CHECK(strcmp(bevsim_status_name(99), "unknown") == 0);
}

static void test_tiny_plan(void)
{
  bevsim_plan * plan = NULL;
  CHECK(bevsim_plan_tiny_two_room(&plan) == BEVSIM_OK);
  int h = 0, w = 0;
  CHECK(bevsim_plan_shape(plan, &h, &w) == BEVSIM_OK);
  CHECK(h == 8 && w == 8);
  uint8_t labels[64];
  CHECK(bevsim_plan_labels(plan, labels, sizeof(labels)) == BEVSIM_OK);
  int mismatches = 0;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      mismatches += labels[r * 8 + c] != class_of(kTinyRows[r][c]);
    }
  }
  CHECK(mismatches == 0);
  CHECK(bevsim_plan_labels(plan, labels, 10) == BEVSIM_E_DIMENSION_MISMATCH);
  int ok = 0;
  CHECK(bevsim_plan_validate(plan, &ok) == BEVSIM_OK);
  CHECK(ok == 1);

  bevsim_frames * frames = NULL;
  CHECK(bevsim_explore(plan, 2, 2, 200, 2, &frames) == BEVSIM_OK);
  size_t count = 0;
  int complete = 0, row = -1, col = -1;
  CHECK(bevsim_frames_count(frames, &count) == BEVSIM_OK);
  CHECK(count == 15);
  CHECK(bevsim_frames_complete(frames, &complete) == BEVSIM_OK && complete == 1);
  CHECK(bevsim_frames_pose(frames, 14, &row, &col) == BEVSIM_OK);
  CHECK(row == 5 && col == 3);
  CHECK(bevsim_frames_pose(frames, 15, &row, &col) == BEVSIM_E_INVALID_ARGUMENT);
  uint8_t explored[64];
  CHECK(bevsim_frames_explored(frames, 0, explored, sizeof(explored)) == BEVSIM_OK);
  CHECK(explored[2 * 8 + 2] == 1 && explored[7 * 8 + 7] == 0);
  bevsim_frames_free(frames);

  CHECK(bevsim_explore(plan, 1, 1, 10, 2, &frames) == BEVSIM_E_INVALID_ARGUMENT);
  bevsim_plan_free(plan);
}

static void test_generate(void)
{
  bevsim_floorplan_spec spec;
  bevsim_floorplan_spec_default(&spec);
  CHECK(spec.height == 28 && spec.width == 28);
  bevsim_plan * plan = NULL;
  spec.seed = 5;
  CHECK(bevsim_plan_generate(&spec, &plan) == BEVSIM_OK);
  int ok = 0;
  CHECK(bevsim_plan_validate(plan, &ok) == BEVSIM_OK && ok == 1);
  bevsim_plan_free(plan);

  spec.min_room_side = 1;
  plan = NULL;
  CHECK(bevsim_plan_generate(&spec, &plan) == BEVSIM_E_CONFIG);
  CHECK(plan == NULL);
  CHECK(strstr(bevsim_last_error(), "min_room_side") != NULL);

  CHECK(bevsim_plan_generate(NULL, &plan) == BEVSIM_E_INVALID_ARGUMENT);
  CHECK(bevsim_plan_load("/nonexistent/p.semgrid", &plan) == BEVSIM_E_IO);
}

static void test_loss(void)
{
  double logits[2] = {0.0, 0.0};
  double target[2] = {1.0, 0.0};
  double weights[1] = {1.0};
  uint8_t valid[2] = {1, 1};
  double loss = 0.0, grad[2] = {0.0, 0.0};
  CHECK(bevsim_masked_weighted_bce(logits, target, 1, 2, 1, weights, valid, &loss, grad) ==
    BEVSIM_OK);
  CHECK(fabs(loss - log(2.0)) < 1e-12);
  CHECK(fabs(grad[0] + 0.25) < 1e-12);
  CHECK(fabs(grad[1] - 0.25) < 1e-12);
  valid[0] = valid[1] = 0;
  CHECK(bevsim_masked_weighted_bce(logits, target, 1, 2, 1, weights, valid, &loss, NULL) ==
    BEVSIM_E_EMPTY_REGION);
}

static void test_commands(void)
{
  char dir[] = "/tmp/bevsim_capi_XXXXXX";
  CHECK(mkdtemp(dir) != NULL);
  bevsim_gen_config gen;
  bevsim_gen_config_default(&gen);
  gen.count = 2;
  gen.out_dir = dir;
  CHECK(bevsim_cmd_gen(&gen) == BEVSIM_OK);
  CHECK(strstr(bevsim_last_output(), "plans=2") != NULL);

  char path[512];
  snprintf(path, sizeof(path), "%s/plan_0001.semgrid", dir);
  bevsim_plan * plan = NULL;
  CHECK(bevsim_plan_load(path, &plan) == BEVSIM_OK);
  bevsim_plan_free(plan);

  bevsim_render_config render;
  bevsim_render_config_default(&render);
  render.input = path;
  render.layer = "nope";
  char out[512];
  snprintf(out, sizeof(out), "%s/x.ppm", dir);
  render.out = out;
  CHECK(bevsim_cmd_render(&render) == BEVSIM_E_INVALID_ARGUMENT);
  render.layer = "gt";
  CHECK(bevsim_cmd_render(&render) == BEVSIM_OK);
  CHECK(access(out, F_OK) == 0);

  char cmd[600];
  snprintf(cmd, sizeof(cmd), "rm -rf '%s'", dir);
  CHECK(system(cmd) == 0);
}

int main(void)
{
  test_status_names();
  test_tiny_plan();
  test_generate();
  test_loss();
  test_commands();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
