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


#ifndef BEVSIM__METRICS_HPP_
#define BEVSIM__METRICS_HPP_

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bevsim/grid.hpp"

namespace bevsim
{

/**
 * Cells scored by the region metrics: unexplored cells whose GT class is not
 * outside. With `relax`, cells whose 3x3 neighbourhood holds a different GT
 * class are dropped as well.
 */
BitMask evaluation_region(const LabelGrid & gt, const BitMask & explored, bool relax);

/// Pixel accuracy over the evaluation region. Throws kEmptyRegion when it is empty.
double pa_unexplored(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  bool relax = true);

/// Sum over classes of GT frequency times IoU, over the evaluation region.
double fwiou_unexplored(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  bool relax = true);

struct Prf
{
  double recall = 1.0;
  double precision = 1.0;
  double f1 = 1.0;

  friend bool operator==(const Prf &, const Prf &) = default;
};

/// Binary P/R/F1 for membership in `cls`. No TP, FP or FN gives (1, 1, 1).
Prf class_prf(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  ClassId cls, bool relax = false);

inline constexpr int kMinRoomArea = 4;

struct RoomNode
{
  ClassId cls = ClassId::kBedroom;
  std::vector<Cell> cells;
};

/// Unordered class pair, stored with first <= second.
using ClassPair = std::pair<ClassId, ClassId>;
ClassPair make_class_pair(ClassId a, ClassId b);

struct AdjacencyGraph
{
  std::vector<RoomNode> nodes;
  std::set<ClassPair> edges;
};

/**
 * Rooms are 4-connected components of classes 0-5 with at least
 * `min_room_area` cells. Two rooms are adjacent when a doorway or entrance
 * cell touches both or when their cells touch. With `restrict`, only rooms
 * holding at least one cell set in it are kept.
 */
AdjacencyGraph room_adjacency_graph(const LabelGrid & labels, const BitMask * restrict = nullptr,
  int min_room_area = kMinRoomArea);

/// F1 of two edge sets; 1.0 when both are empty.
double edge_set_f1(const std::set<ClassPair> & pred, const std::set<ClassPair> & gt);

/// Edge-set F1 of the adjacency graphs restricted to unexplored cells.
double structural_consistency(const LabelGrid & pred, const LabelGrid & gt,
  const BitMask & explored);

struct EvalOptions
{
  bool relax_region = true;  // PA and FWIoU
  bool relax_prf = false;
  int min_room_area = kMinRoomArea;
};

struct EvalReport
{
  double pa = 0.0;
  double fwiou = 0.0;
  std::array<Prf, kNumClasses> per_class{};
  std::array<bool, kNumClasses> present{};  // class occurs in the GT region
  double sc = 0.0;
  std::uint64_t evaluated_cells = 0;
};

/// All metrics on one frame. Throws kEmptyRegion when nothing is left to score.
EvalReport evaluate_frame(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  const EvalOptions & opts = {});

/// Multi-line key=value text.
std::string report_text(const EvalReport & report);

/// Space-separated values in the order of report_row_header().
std::string report_row(const EvalReport & report);
std::string report_row_header();

struct EvalSummary
{
  std::uint64_t frames = 0;
  double pa = 0.0;
  double fwiou = 0.0;
  double sc = 0.0;
  std::array<Prf, kNumClasses> per_class{};  // means over frames where the class is present
  std::array<std::uint64_t, kNumClasses> present_frames{};
  double min_pa = 1.0;
  double min_fwiou = 1.0;
  double min_sc = 1.0;
  double min_prf = 1.0;  // smallest P, R or F1 of any present class on any frame
};

/// Throws kInvalidArgument for an empty list.
EvalSummary summarize(const std::vector<EvalReport> & reports);
std::string summary_text(const EvalSummary & summary);

}  // namespace bevsim

#endif  // BEVSIM__METRICS_HPP_
