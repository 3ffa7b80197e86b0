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

#include "mxt/env/suite.h"

#include <cctype>
#include <utility>
#include <vector>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/common/rng.h"

namespace mxt {
namespace {

constexpr uint64_t kCalibrationStream = 0xca11b4a7e0000000ULL;

bool IsInteger(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

struct TaskAlias {
  std::string_view name;
  TaskKind kind;
  TwisterLayout layout;
};

constexpr TaskAlias kTaskAliases[] = {
    {"reach", TaskKind::kReach, TwisterLayout::kReachHandsup},
    {"reach_hard", TaskKind::kReachHard, TwisterLayout::kReachHandsup},
    {"touch", TaskKind::kTouch, TwisterLayout::kReachHandsup},
    {"push", TaskKind::kPush, TwisterLayout::kReachHandsup},
    {"twister", TaskKind::kTwister, TwisterLayout::kReachHandsup},
    {"reach_handsup", TaskKind::kTwister, TwisterLayout::kReachHandsup},
    {"reach_hard_handsup", TaskKind::kTwister, TwisterLayout::kReachHardHandsup},
    {"reach2_handsup", TaskKind::kTwister, TwisterLayout::kReach2Handsup},
    {"reach_handsup2", TaskKind::kTwister, TwisterLayout::kReachHandsup2},
};

[[noreturn]] void BadId(std::string_view id, const std::string& why) {
  throw Error(ErrorKind::kConfig, "bad env id '" + std::string(id) + "': " + why);
}

}  // namespace

EnvIdParts ParseEnvId(std::string_view env_id) {
  std::vector<std::string> tok = SplitString(env_id, '_');
  if (tok.size() < 3) BadId(env_id, "expected <blueprint>_<task>_<count>");
  EnvIdParts parts;
  try {
    parts.blueprint = ParseBlueprint(tok[0]);
  } catch (const Error&) {
    BadId(env_id, "unknown blueprint '" + tok[0] + "'");
  }
  size_t i = 1;
  std::string task;
  while (i < tok.size() && !IsInteger(tok[i])) {
    if (!task.empty()) task += "_";
    task += tok[i++];
  }
  if (i == tok.size()) BadId(env_id, "missing morphology count");
  parts.count = static_cast<int>(ParseInt(tok[i++]));
  bool found = false;
  for (const TaskAlias& alias : kTaskAliases) {
    if (alias.name == task) {
      parts.task_kind = alias.kind;
      parts.layout = alias.layout;
      found = true;
    }
  }
  if (!found) BadId(env_id, "unknown task '" + task + "'");
  parts.task_name = task;

  while (i < tok.size()) {
    Variation& v = parts.variation ? *parts.variation : parts.variation.emplace();
    const std::string& key = tok[i++];
    if (key == "missing") {
      if (i >= tok.size()) BadId(env_id, "missing leg index");
      v.missing = static_cast<int>(ParseInt(tok[i++]));
    } else if (key == "mass" || key == "size") {
      if (i + 3 > tok.size()) BadId(env_id, key + " needs three factors");
      std::array<double, 3> s{};
      for (int k = 0; k < 3; ++k) s[k] = ParseReal(tok[i++]);
      (key == "mass" ? v.mass_scales : v.size_scales) = s;
    } else {
      BadId(env_id, "unknown variation '" + key + "'");
    }
  }
  return parts;
}

void CalibrateDmax(TaskSpec& task, const MorphologyGraph& graph, int resets) {
  TaskSpec probe = task;
  for (size_t i = 0; i < probe.d_max.size(); ++i) {
    probe.d_max[i] = probe.d_min[i] + 1.0;
  }
  auto spec = EnvSpec::Create("calibration", graph, probe);
  std::vector<double> sum(task.goals.size(), 0.0);
  for (int r = 0; r < resets; ++r) {
    EnvState state = Reset(spec, HashCombine(kCalibrationStream, r));
    auto d = GoalDistances(state);
    for (size_t i = 0; i < d.size(); ++i) sum[i] += d[i];
  }
  for (size_t i = 0; i < sum.size(); ++i) {
    double mean = Canonical(sum[i] / resets);
    if (!(mean > task.d_min[i])) {
      throw Error(ErrorKind::kConfig,
                  "mean initial distance of goal " + std::to_string(i) +
                      " does not exceed d_min; the task starts solved");
    }
    task.d_max[i] = mean;
  }
}

std::shared_ptr<const EnvSpec> MakeEnvSpec(std::string_view env_id,
                                           int calibration_resets) {
  EnvIdParts parts = ParseEnvId(env_id);
  MorphologyGraph graph =
      GenerateMorphology(parts.blueprint, parts.count, parts.variation);
  TaskSpec task = MakeTask(parts.task_kind, graph, parts.layout);
  CalibrateDmax(task, graph, calibration_resets);
  return EnvSpec::Create(std::string(env_id), std::move(graph), std::move(task));
}

}  // namespace mxt
