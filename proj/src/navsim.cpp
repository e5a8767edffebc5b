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


#include "bevsim/navsim.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <sstream>

#include "bevsim/rng.hpp"
#include "bevsim/text.hpp"

namespace bevsim
{

void validate_nav_config(const NavConfig & cfg)
{
  auto bad = [](const char * field, const std::string & msg) {
      fail(ErrorCode::kConfig, std::string(field) + ": " + msg);
    };
  if (!is_query_class(cfg.query)) {
    bad("query", "must be a room class (0-6)");
  }
  if (cfg.window < 1 || cfg.window % 2 == 0) {
    bad("window", "must be odd and >= 1, got " + std::to_string(cfg.window));
  }
  if (!(cfg.alpha >= 0.0)) {
    bad("alpha", "must be >= 0");
  }
  if (cfg.max_steps < 1) {
    bad("max_steps", "must be >= 1, got " + std::to_string(cfg.max_steps));
  }
  if (cfg.repredict_every < 1) {
    bad("repredict_every", "must be >= 1, got " + std::to_string(cfg.repredict_every));
  }
  if (cfg.radius < 1) {
    bad("radius", "must be >= 1, got " + std::to_string(cfg.radius));
  }
}

std::optional<int> shortest_path_len(const Floorplan & plan, Pose from,
  std::span<const Cell> targets)
{
  const auto & labels = plan.labels;
  BitMask goal(labels.height(), labels.width());
  for (Cell t : targets) {
    if (labels.contains(t)) {
      goal[t] = 1;
    }
  }
  if (!plan.is_free(from)) {
    return std::nullopt;
  }
  Grid<int> dist(labels.height(), labels.width(), -1);
  std::deque<Cell> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    if (goal[cur]) {
      return dist[cur];
    }
    for (Cell d : kNeighbors4) {
      Cell n = cur + d;
      if (plan.is_free(n) && dist[n] < 0) {
        dist[n] = dist[cur] + 1;
        queue.push_back(n);
      }
    }
  }
  return std::nullopt;
}

std::vector<Cell> cells_of_class(const LabelGrid & labels, ClassId cls)
{
  std::vector<Cell> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels.values()[i] == cls) {
      out.push_back(labels.cell(i));
    }
  }
  return out;
}

std::vector<double> score_frontiers(std::span<const Cell> frontiers, const RealGrid & area_prob,
  const BitMask & explored, std::span<const int> dists, const NavConfig & cfg)
{
  if (frontiers.empty()) {
    fail(ErrorCode::kInvalidArgument, "score_frontiers needs at least one frontier");
  }
  if (dists.size() != frontiers.size()) {
    fail(ErrorCode::kDimensionMismatch, "one distance per frontier required");
  }
  require_same_plane(area_prob, explored, "area_prob vs explored");
  const int half = cfg.window / 2;
  std::vector<double> out;
  out.reserve(frontiers.size());
  for (std::size_t i = 0; i < frontiers.size(); ++i) {
    Cell f = frontiers[i];
    double mass = 0.0;
    for (int r = std::max(0, f.row - half); r <= std::min(explored.height() - 1, f.row + half); ++r) {
      for (int c = std::max(0, f.col - half); c <= std::min(explored.width() - 1, f.col + half);
        ++c)
      {
        if (!explored.at(r, c)) {
          mass += area_prob.at(r, c);
        }
      }
    }
    out.push_back(mass / (1.0 + cfg.alpha * static_cast<double>(dists[i])));
  }
  return out;
}

std::size_t select_frontier(std::span<const Cell> frontiers, std::span<const double> utilities,
  std::span<const int> dists)
{
  if (frontiers.empty() || utilities.size() != frontiers.size() ||
    dists.size() != frontiers.size())
  {
    fail(ErrorCode::kInvalidArgument, "select_frontier needs matching non-empty inputs");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < frontiers.size(); ++i) {
    if (utilities[i] != utilities[best]) {
      if (utilities[i] > utilities[best]) {
        best = i;
      }
    } else if (dists[i] != dists[best]) {
      if (dists[i] < dists[best]) {
        best = i;
      }
    } else if (frontiers[i] < frontiers[best]) {
      best = i;
    }
  }
  return best;
}

EpisodeLog run_navigation_episode(const Floorplan & plan, Pose start, const NavConfig & cfg,
  Predictor * predictor)
{
  validate_nav_config(cfg);
  EpisodeLog log;
  log.start = start;
  log.query = cfg.query;
  auto targets = cells_of_class(plan.labels, cfg.query);
  log.target_absent = targets.empty();
  if (auto len = shortest_path_len(plan, start, targets)) {
    log.shortest = *len;
  }

  auto shared = std::make_shared<const Floorplan>(plan);
  ExplorationState state = begin_exploration(shared, start, cfg.radius);
  log.poses.push_back(start);
  RealGrid area(plan.labels.height(), plan.labels.width(), 0.0);

  while (true) {
    if (plan.at(state.pose()) == cfg.query) {
      log.success = true;
      break;
    }
    if (state.step() >= cfg.max_steps) {
      break;
    }
    auto frontiers = detect_frontiers(state.view.explored, state.view.obstacles_seen);
    if (frontiers.empty()) {
      break;
    }
    DistanceField field = explored_distances(state);
    std::vector<Cell> candidates;
    std::vector<int> dists;
    for (Cell f : frontiers) {
      if (field.reachable(f)) {
        candidates.push_back(f);
        dists.push_back(field.dist[f]);
      }
    }
    if (candidates.empty()) {
      fail(ErrorCode::kSimulationInvariant, "no reachable frontier at step " +
        std::to_string(state.step()));
    }
    if (predictor && state.step() % cfg.repredict_every == 0) {
      area = predictor->predict(state.view, cfg.query).area_prob;
      require_same_plane(area, plan.labels, "predictor output");
    }
    auto utilities = score_frontiers(candidates, area, state.view.explored, dists, cfg);
    std::size_t pick = select_frontier(candidates, utilities, dists);
    log.frontier_choices.push_back({state.step(), candidates[pick], utilities[pick]});
    state = advance_toward(state, field, candidates[pick], cfg.radius);
    log.poses.push_back(state.pose());
  }

  log.steps = state.step();
  BitMask reachable = reachable_free(plan, start);
  std::size_t total = count_set(reachable);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < reachable.size(); ++i) {
    seen += reachable.values()[i] && state.view.explored.values()[i];
  }
  log.exploration_ratio = static_cast<double>(seen) / static_cast<double>(total);
  if (log.success) {
    const double optimal = static_cast<double>(log.shortest);
    const double taken = static_cast<double>(log.steps);
    log.spl = std::max(taken, optimal) == 0.0 ? 1.0 : optimal / std::max(taken, optimal);
  }
  return log;
}

std::string format_episode(const EpisodeLog & log)
{
  std::ostringstream out;
  out << "plan=" << log.plan_id << " seed=" << log.episode_seed << " start=" <<
    format_cell(log.start) << " query=" << class_name(log.query) << " success=" <<
  (log.success ? 1 : 0) << " target_absent=" << (log.target_absent ? 1 : 0) << " steps=" <<
    log.steps << " exploration_ratio=" << format_real(log.exploration_ratio) << " spl=" <<
    format_real(log.spl) << " shortest=" << log.shortest << " poses=";
  for (std::size_t i = 0; i < log.poses.size(); ++i) {
    out << (i ? ";" : "") << format_cell(log.poses[i]);
  }
  out << " choices=";
  for (std::size_t i = 0; i < log.frontier_choices.size(); ++i) {
    const auto & ch = log.frontier_choices[i];
    out << (i ? ";" : "") << ch.step << ":" << format_cell(ch.frontier) << ":" <<
      format_real(ch.utility);
  }
  return out.str();
}

EpisodeLog parse_episode(std::string_view line)
{
  constexpr auto code = ErrorCode::kCorruptRecord;
  static const char * const kOrder[] = {"plan", "seed", "start", "query", "success",
    "target_absent", "steps", "exploration_ratio", "spl", "shortest", "poses", "choices"};
  auto fields = parse_fields(line, code);
  if (fields.size() != std::size(kOrder)) {
    fail(code, "episode line has " + std::to_string(fields.size()) + " fields, expected " +
      std::to_string(std::size(kOrder)));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].first != kOrder[i]) {
      fail(code, "episode field " + std::to_string(i) + " is '" + std::string(fields[i].first) +
        "', expected '" + kOrder[i] + "'");
    }
  }
  auto flag = [&](std::string_view v, const char * what) {
      auto n = parse_int(v, what, code);
      if (n != 0 && n != 1) {
        fail(code, std::string(what) + ": expected 0 or 1");
      }
      return n == 1;
    };
  EpisodeLog log;
  log.plan_id = static_cast<std::uint32_t>(parse_uint(fields[0].second, "plan", code));
  log.episode_seed = parse_uint(fields[1].second, "seed", code);
  log.start = parse_cell(fields[2].second, "start", code);
  auto q = class_from_name(fields[3].second);
  if (!q || !is_query_class(*q)) {
    fail(code, "query: unknown room class '" + std::string(fields[3].second) + "'");
  }
  log.query = *q;
  log.success = flag(fields[4].second, "success");
  log.target_absent = flag(fields[5].second, "target_absent");
  log.steps = static_cast<int>(parse_int(fields[6].second, "steps", code));
  log.exploration_ratio = parse_real(fields[7].second, "exploration_ratio", code);
  log.spl = parse_real(fields[8].second, "spl", code);
  log.shortest = static_cast<int>(parse_int(fields[9].second, "shortest", code));
  if (!fields[10].second.empty()) {
    for (auto p : split(fields[10].second, ';')) {
      log.poses.push_back(parse_cell(p, "poses", code));
    }
  }
  if (!fields[11].second.empty()) {
    for (auto ch : split(fields[11].second, ';')) {
      auto parts = split(ch, ':');
      if (parts.size() != 3) {
        fail(code, "choices: expected step:row,col:utility");
      }
      log.frontier_choices.push_back({static_cast<int>(parse_int(parts[0], "choices", code)),
          parse_cell(parts[1], "choices", code), parse_real(parts[2], "choices", code)});
    }
  }
  return log;
}

NavSummary aggregate(std::span<const EpisodeLog> logs)
{
  if (logs.empty()) {
    fail(ErrorCode::kInvalidArgument, "no episodes to aggregate");
  }
  NavSummary s;
  s.episodes = logs.size();
  for (const auto & log : logs) {
    s.mean_steps += log.steps;
    s.mean_exploration_ratio += log.exploration_ratio;
    s.mean_spl += log.spl;
    s.success_rate += log.success ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(logs.size());
  s.mean_steps /= n;
  s.mean_exploration_ratio /= n;
  s.mean_spl /= n;
  s.success_rate /= n;
  return s;
}

std::string format_summary(std::string_view arm, const NavSummary & s)
{
  return "arm=" + std::string(arm) + " episodes=" + std::to_string(s.episodes) + " steps=" +
         format_real(s.mean_steps) + " exploration_ratio=" + format_real(s.mean_exploration_ratio) +
         " spl=" + format_real(s.mean_spl) + " success_rate=" + format_real(s.success_rate);
}

PairedReport compare_arms(std::span<const EpisodeLog> baseline, std::span<const EpisodeLog> guided)
{
  if (baseline.size() != guided.size()) {
    fail(ErrorCode::kInvalidArgument, "paired arms differ in length: " +
      std::to_string(baseline.size()) + " vs " + std::to_string(guided.size()));
  }
  PairedReport report;
  report.baseline = aggregate(baseline);
  report.guided = aggregate(guided);
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    report.step_deltas.push_back(baseline[i].steps - guided[i].steps);
  }
  report.step_reduction = report.baseline.mean_steps == 0.0 ? 0.0 :
    (report.baseline.mean_steps - report.guided.mean_steps) / report.baseline.mean_steps;
  return report;
}

std::string format_paired(const PairedReport & report, std::string_view baseline_name,
  std::string_view guided_name)
{
  std::string out = format_summary(baseline_name, report.baseline) + "\n" +
    format_summary(guided_name, report.guided) + "\n";
  out += "step_reduction=" + format_real(report.step_reduction) + "\n";
  out += "step_deltas=";
  for (std::size_t i = 0; i < report.step_deltas.size(); ++i) {
    out += (i ? "," : "") + std::to_string(report.step_deltas[i]);
  }
  return out + "\n";
}

EpisodeSetup sample_episode(const Floorplan & plan, std::uint64_t seed)
{
  std::vector<ClassId> present;
  auto hist = class_histogram(plan.labels);
  for (int k = 0; k < kNumRegionClasses; ++k) {
    if (hist[static_cast<std::size_t>(k)] > 0) {
      present.push_back(class_from_index(k));
    }
  }
  if (present.empty()) {
    fail(ErrorCode::kInvalidArgument, "plan has no room cells");
  }
  Rng rng(seed);
  EpisodeSetup setup;
  setup.seed = seed;
  setup.query = present[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(present.size()) - 1))];
  BitMask reach = reachable_free(plan, cells_of_class(plan.labels, setup.query).front());
  std::vector<Cell> starts;
  for (std::size_t i = 0; i < reach.size(); ++i) {
    if (reach.values()[i] && plan.labels.values()[i] != setup.query) {
      starts.push_back(plan.labels.cell(i));
    }
  }
  if (starts.empty()) {
    fail(ErrorCode::kInvalidArgument, "no start cell outside the query class");
  }
  setup.start = starts[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(starts.size()) - 1))];
  return setup;
}

}  // namespace bevsim
