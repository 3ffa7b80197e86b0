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

#ifndef MXT_ENV_SUITE_H_
#define MXT_ENV_SUITE_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mxt/env/env.h"
#include "mxt/env/task.h"
#include "mxt/morphology/morphology.h"

namespace mxt {

// Parsed form of ids like "ant_reach_4", "ant_reach_handsup_5",
// "ant_reach_hard_4_mass_0.5_1.0_3.0", "centipede_touch_3_missing_1".
struct EnvIdParts {
  Blueprint blueprint = Blueprint::kAnt;
  int count = 0;
  std::string task_name;  // as written in the id
  TaskKind task_kind = TaskKind::kReach;
  TwisterLayout layout = TwisterLayout::kReachHandsup;
  std::optional<Variation> variation;
};

EnvIdParts ParseEnvId(std::string_view env_id);

inline constexpr int kCalibrationResets = 1000;

// Sets d_max of every goal to its mean initial distance over `resets`
// sampled scenes.
void CalibrateDmax(TaskSpec& task, const MorphologyGraph& graph,
                   int resets = kCalibrationResets);

// Builds the morphology and desk-scale task named by `env_id`, with
// calibrated d_max.
std::shared_ptr<const EnvSpec> MakeEnvSpec(std::string_view env_id,
                                           int calibration_resets =
                                               kCalibrationResets);

}  // namespace mxt

#endif  // MXT_ENV_SUITE_H_
