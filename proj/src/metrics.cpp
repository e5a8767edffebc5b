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


#include "bevsim/metrics.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "bevsim/text.hpp"

namespace bevsim
{

namespace
{

void check_inputs(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored)
{
  require_same_plane(pred, gt, "prediction vs ground truth");
  require_same_plane(explored, gt, "explored mask vs ground truth");
}

BitMask nonempty_region(const LabelGrid & gt, const BitMask & explored, bool relax)
{
  BitMask region = evaluation_region(gt, explored, relax);
  if (count_set(region) == 0) {
    fail(ErrorCode::kEmptyRegion, "no evaluated cells left in the unexplored region");
  }
  return region;
}

}  // namespace

BitMask evaluation_region(const LabelGrid & gt, const BitMask & explored, bool relax)
{
  require_same_plane(explored, gt, "explored mask vs ground truth");
  BitMask region(gt.height(), gt.width());
  for (int r = 0; r < gt.height(); ++r) {
    for (int c = 0; c < gt.width(); ++c) {
      ClassId cls = gt.at(r, c);
      if (explored.at(r, c) || cls == ClassId::kOutside) {
        continue;
      }
      bool keep = true;
      for (int dr = -1; relax && keep && dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          Cell n{r + dr, c + dc};
          if (gt.contains(n) && gt[n] != cls) {
            keep = false;
            break;
          }
        }
      }
      region.at(r, c) = keep ? 1 : 0;
    }
  }
  return region;
}

double pa_unexplored(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  bool relax)
{
  check_inputs(pred, gt, explored);
  BitMask region = nonempty_region(gt, explored, relax);
  std::uint64_t n = 0;
  std::uint64_t hit = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region.values()[i]) {
      ++n;
      hit += pred.values()[i] == gt.values()[i] ? 1 : 0;
    }
  }
  return static_cast<double>(hit) / static_cast<double>(n);
}

double fwiou_unexplored(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  bool relax)
{
  check_inputs(pred, gt, explored);
  BitMask region = nonempty_region(gt, explored, relax);
  std::array<std::uint64_t, kNumClasses> tp{}, fp{}, fn{}, freq{};
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!region.values()[i]) {
      continue;
    }
    ++n;
    auto g = static_cast<std::size_t>(gt.values()[i]);
    auto p = static_cast<std::size_t>(pred.values()[i]);
    ++freq[g];
    if (g == p) {
      ++tp[g];
    } else {
      ++fn[g];
      ++fp[p];
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    if (freq[k] == 0) {
      continue;
    }
    double iou = static_cast<double>(tp[k]) / static_cast<double>(tp[k] + fp[k] + fn[k]);
    total += static_cast<double>(freq[k]) * iou;
  }
  return total / static_cast<double>(n);
}

Prf class_prf(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  ClassId cls, bool relax)
{
  check_inputs(pred, gt, explored);
  BitMask region = nonempty_region(gt, explored, relax);
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!region.values()[i]) {
      continue;
    }
    bool g = gt.values()[i] == cls;
    bool p = pred.values()[i] == cls;
    tp += g && p;
    fp += !g && p;
    fn += g && !p;
  }
  Prf out;
  out.recall = tp + fn == 0 ? (fp == 0 ? 1.0 : 0.0) :
    static_cast<double>(tp) / static_cast<double>(tp + fn);
  out.precision = tp + fp == 0 ? (fn == 0 ? 1.0 : 0.0) :
    static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp == 0) {
    out.f1 = fp + fn == 0 ? 1.0 : 0.0;
  } else {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

ClassPair make_class_pair(ClassId a, ClassId b)
{
  return a <= b ? ClassPair{a, b} : ClassPair{b, a};
}

AdjacencyGraph room_adjacency_graph(const LabelGrid & labels, const BitMask * restrict,
  int min_room_area)
{
  if (restrict) {
    require_same_plane(*restrict, labels, "restrict mask vs labels");
  }
  Grid<int> owner(labels.height(), labels.width(), -1);
  AdjacencyGraph graph;
  std::vector<int> node_of_component;
  int components = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Cell seed = labels.cell(i);
    if (!is_region_class(labels[seed]) || owner[seed] >= 0) {
      continue;
    }
    const int id = components++;
    RoomNode room{labels[seed], {}};
    std::deque<Cell> queue{seed};
    owner[seed] = id;
    bool touches_restrict = false;
    while (!queue.empty()) {
      Cell cur = queue.front();
      queue.pop_front();
      room.cells.push_back(cur);
      touches_restrict = touches_restrict || (restrict && (*restrict)[cur]);
      for (Cell d : kNeighbors4) {
        Cell n = cur + d;
        if (labels.contains(n) && owner[n] < 0 && labels[n] == room.cls) {
          owner[n] = id;
          queue.push_back(n);
        }
      }
    }
    bool keep = static_cast<int>(room.cells.size()) >= min_room_area &&
      (!restrict || touches_restrict);
    if (keep) {
      std::sort(room.cells.begin(), room.cells.end());
      node_of_component.push_back(static_cast<int>(graph.nodes.size()));
      graph.nodes.push_back(std::move(room));
    } else {
      node_of_component.push_back(-1);
    }
  }

  auto node_at = [&](Cell c) {
      return labels.contains(c) && owner[c] >= 0 ?
             node_of_component[static_cast<std::size_t>(owner[c])] : -1;
    };
  auto link = [&](int a, int b) {
      if (a >= 0 && b >= 0 && a != b) {
        graph.edges.insert(make_class_pair(graph.nodes[static_cast<std::size_t>(a)].cls,
          graph.nodes[static_cast<std::size_t>(b)].cls));
      }
    };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Cell cur = labels.cell(i);
    ClassId cls = labels[cur];
    if (cls == ClassId::kDoorway || cls == ClassId::kEntranceDoor) {
      std::vector<int> touching;
      for (Cell d : kNeighbors4) {
        touching.push_back(node_at(cur + d));
      }
      for (std::size_t a = 0; a < touching.size(); ++a) {
        for (std::size_t b = a + 1; b < touching.size(); ++b) {
          link(touching[a], touching[b]);
        }
      }
    } else if (int self = node_at(cur); self >= 0) {
      for (Cell d : kNeighbors4) {
        link(self, node_at(cur + d));
      }
    }
  }
  return graph;
}

double edge_set_f1(const std::set<ClassPair> & pred, const std::set<ClassPair> & gt)
{
  if (pred.empty() && gt.empty()) {
    return 1.0;
  }
  std::size_t common = 0;
  for (const auto & e : pred) {
    common += gt.count(e);
  }
  if (common == 0) {
    return 0.0;
  }
  double precision = static_cast<double>(common) / static_cast<double>(pred.size());
  double recall = static_cast<double>(common) / static_cast<double>(gt.size());
  return 2.0 * precision * recall / (precision + recall);
}

double structural_consistency(const LabelGrid & pred, const LabelGrid & gt,
  const BitMask & explored)
{
  check_inputs(pred, gt, explored);
  BitMask unexplored = mask_not(explored);
  return edge_set_f1(room_adjacency_graph(pred, &unexplored).edges,
    room_adjacency_graph(gt, &unexplored).edges);
}

EvalReport evaluate_frame(const LabelGrid & pred, const LabelGrid & gt, const BitMask & explored,
  const EvalOptions & opts)
{
  check_inputs(pred, gt, explored);
  EvalReport report;
  BitMask region = nonempty_region(gt, explored, opts.relax_region);
  report.evaluated_cells = count_set(region);
  report.pa = pa_unexplored(pred, gt, explored, opts.relax_region);
  report.fwiou = fwiou_unexplored(pred, gt, explored, opts.relax_region);
  BitMask prf_region = evaluation_region(gt, explored, opts.relax_prf);
  for (int k = 0; k < kNumClasses; ++k) {
    ClassId cls = class_from_index(k);
    report.per_class[static_cast<std::size_t>(k)] = class_prf(pred, gt, explored, cls,
      opts.relax_prf);
    bool present = false;
    for (std::size_t i = 0; i < prf_region.size() && !present; ++i) {
      present = prf_region.values()[i] && gt.values()[i] == cls;
    }
    report.present[static_cast<std::size_t>(k)] = present;
  }
  BitMask unexplored = mask_not(explored);
  report.sc = edge_set_f1(room_adjacency_graph(pred, &unexplored, opts.min_room_area).edges,
    room_adjacency_graph(gt, &unexplored, opts.min_room_area).edges);
  return report;
}

std::string report_text(const EvalReport & report)
{
  std::ostringstream out;
  out << "pa=" << format_real(report.pa) << "\n";
  out << "fwiou=" << format_real(report.fwiou) << "\n";
  out << "sc=" << format_real(report.sc) << "\n";
  out << "evaluated_cells=" << report.evaluated_cells << "\n";
  for (int k = 0; k < kNumClasses; ++k) {
    const Prf & prf = report.per_class[static_cast<std::size_t>(k)];
    auto name = std::string(class_name(class_from_index(k)));
    out << "present." << name << "=" << (report.present[static_cast<std::size_t>(k)] ? 1 : 0) <<
      "\n";
    out << "recall." << name << "=" << format_real(prf.recall) << "\n";
    out << "precision." << name << "=" << format_real(prf.precision) << "\n";
    out << "f1." << name << "=" << format_real(prf.f1) << "\n";
  }
  return out.str();
}

std::string report_row_header()
{
  std::string out = "pa fwiou sc evaluated_cells";
  for (int k = 0; k < kNumClasses; ++k) {
    auto name = std::string(class_name(class_from_index(k)));
    out += " recall." + name + " precision." + name + " f1." + name;
  }
  return out;
}

std::string report_row(const EvalReport & report)
{
  std::string out = format_real(report.pa) + " " + format_real(report.fwiou) + " " +
    format_real(report.sc) + " " + std::to_string(report.evaluated_cells);
  for (const Prf & prf : report.per_class) {
    out += " " + format_real(prf.recall) + " " + format_real(prf.precision) + " " +
      format_real(prf.f1);
  }
  return out;
}

EvalSummary summarize(const std::vector<EvalReport> & reports)
{
  if (reports.empty()) {
    fail(ErrorCode::kInvalidArgument, "no evaluation reports to summarize");
  }
  EvalSummary s;
  s.frames = reports.size();
  s.per_class.fill(Prf{0.0, 0.0, 0.0});
  for (const auto & r : reports) {
    s.pa += r.pa;
    s.fwiou += r.fwiou;
    s.sc += r.sc;
    s.min_pa = std::min(s.min_pa, r.pa);
    s.min_fwiou = std::min(s.min_fwiou, r.fwiou);
    s.min_sc = std::min(s.min_sc, r.sc);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      if (!r.present[k]) {
        continue;
      }
      const Prf & prf = r.per_class[k];
      ++s.present_frames[k];
      s.per_class[k].recall += prf.recall;
      s.per_class[k].precision += prf.precision;
      s.per_class[k].f1 += prf.f1;
      s.min_prf = std::min({s.min_prf, prf.recall, prf.precision, prf.f1});
    }
  }
  const double n = static_cast<double>(s.frames);
  s.pa /= n;
  s.fwiou /= n;
  s.sc /= n;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    if (s.present_frames[k] == 0) {
      s.per_class[k] = Prf{};
      continue;
    }
    const double m = static_cast<double>(s.present_frames[k]);
    s.per_class[k].recall /= m;
    s.per_class[k].precision /= m;
    s.per_class[k].f1 /= m;
  }
  return s;
}

std::string summary_text(const EvalSummary & s)
{
  std::ostringstream out;
  out << "frames=" << s.frames << "\n";
  out << "pa=" << format_real(s.pa) << "\n";
  out << "fwiou=" << format_real(s.fwiou) << "\n";
  out << "sc=" << format_real(s.sc) << "\n";
  out << "min_pa=" << format_real(s.min_pa) << "\n";
  out << "min_fwiou=" << format_real(s.min_fwiou) << "\n";
  out << "min_sc=" << format_real(s.min_sc) << "\n";
  out << "min_prf=" << format_real(s.min_prf) << "\n";
  for (int k = 0; k < kNumClasses; ++k) {
    auto i = static_cast<std::size_t>(k);
    if (s.present_frames[i] == 0) {
      continue;
    }
    auto name = std::string(class_name(class_from_index(k)));
    out << "recall." << name << "=" << format_real(s.per_class[i].recall) << "\n";
    out << "precision." << name << "=" << format_real(s.per_class[i].precision) << "\n";
    out << "f1." << name << "=" << format_real(s.per_class[i].f1) << "\n";
  }
  return out.str();
}

}  // namespace bevsim
