// Copyright 2026 The MxT Authors
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

#ifndef MXT_EVAL_METRIC_H_
#define MXT_EVAL_METRIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mxt/env/task.h"
#include "mxt/eval/rollout.h"

namespace mxt {

// Final distance of one goal in one evaluation episode.
struct GoalOutcome {
  std::string env_id;
  int goal_index = 0;
  uint64_t seed = 0;
  double final_distance = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;
};

struct EnvScore {
  std::string env_id;
  double normalized = 0.0;  // mean over seeds of the per-goal sum
  int episodes = 0;
};

struct MetricResult {
  std::vector<EnvScore> per_env;  // first-appearance order
  double mean = 0.0;              // unweighted over environments
  double subdomain_mean = 0.0;    // environments averaged per sub-domain first
  std::vector<GoalOutcome> outcomes;
  int episodes = 0;
};

// (d - d_min) / (d_max - d_min), unclamped. Config error if d_min >= d_max.
double NormalizedDistance(double d, double d_min, double d_max);

std::vector<GoalOutcome> Outcomes(const Trajectory& trajectory, const TaskSpec& task);

MetricResult NormalizedFinalDistance(std::span<const GoalOutcome> outcomes);

// 100 (d2 - d1) / d2; ordering error unless d1 < d2 and d2 > 0.
double PercentageImprovement(double d1, double d2);

// "ant_reach_4" -> "ant_reach"; variation suffixes are dropped.
std::string SubDomain(std::string_view env_id);

// Header: env_id,goal_index,seed,final_distance,normalized
std::string MetricCsv(const MetricResult& result);
// Per-goal rows of a report written by MetricCsv, grouped back by episode.
MetricResult ParseMetricCsv(std::string_view text);
std::string MetricSummary(const MetricResult& result);

}  // namespace mxt

#endif  // MXT_EVAL_METRIC_H_
