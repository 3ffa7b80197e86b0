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

#ifndef MXT_ENV_TASK_H_
#define MXT_ENV_TASK_H_

#include <string>
#include <string_view>
#include <vector>

#include "mxt/morphology/morphology.h"

namespace mxt {

enum class TaskKind { kReach, kReachHard, kTouch, kTwister, kPush };
enum class GoalKind { kXyPosition, kZHeight, kBallContact, kBoxToTarget };

std::string_view TaskKindName(TaskKind kind);
TaskKind ParseTaskKind(std::string_view name);
std::string_view GoalKindName(GoalKind kind);
GoalKind ParseGoalKind(std::string_view name);

// Which body node a goal is measured on: the torso, or end effector k.
struct NodeSelector {
  bool torso = false;
  int end_effector = 0;

  static NodeSelector Torso() { return {true, 0}; }
  static NodeSelector EndEffector(int k) { return {false, k}; }

  int Resolve(const MorphologyGraph& graph) const;
  std::string Name() const;  // "torso" or "ee<k>"
  static NodeSelector Parse(std::string_view text);

  friend bool operator==(const NodeSelector&, const NodeSelector&) = default;
};

// Donut in the xy plane around (cx, cy), plus a height band.
struct GoalDistribution {
  double cx = 0.0;
  double cy = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;

  friend bool operator==(const GoalDistribution&,
                         const GoalDistribution&) = default;
};

struct GoalTemplate {
  GoalKind kind = GoalKind::kXyPosition;
  NodeSelector target;
  GoalDistribution distribution;

  friend bool operator==(const GoalTemplate&, const GoalTemplate&) = default;
};

struct TaskSpec {
  TaskKind kind = TaskKind::kReach;
  std::vector<GoalTemplate> goals;
  std::vector<double> d_min;  // m, per goal
  std::vector<double> d_max;  // m, per goal
  int episode_length = 500;

  int GoalCount() const { return static_cast<int>(goals.size()); }

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

// Throws a config error describing the first violated invariant.
void ValidateTask(const TaskSpec& task);
// Additionally checks that every goal target exists on the graph.
void ValidateTaskFor(const TaskSpec& task, const MorphologyGraph& graph);

std::string SerializeTask(const TaskSpec& task);
TaskSpec ParseTask(std::string_view text);

// Twister layouts; each letter pair is one goal on successive end effectors.
enum class TwisterLayout {
  kReachHandsup,       // xy, z
  kReachHardHandsup,   // far xy, z
  kReach2Handsup,      // xy, xy, z
  kReachHandsup2,      // xy, z, z
};

// Desk-scale task on `graph`: each xy annulus is centred on the base of its
// target chain and scaled to the chain radius; d_max is a placeholder until
// calibrated.
TaskSpec MakeTask(TaskKind kind, const MorphologyGraph& graph,
                  TwisterLayout layout = TwisterLayout::kReachHandsup);

}  // namespace mxt

#endif  // MXT_ENV_TASK_H_
