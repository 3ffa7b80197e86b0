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

#ifndef MXT_ENV_ENV_H_
#define MXT_ENV_ENV_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mxt/common/geometry.h"
#include "mxt/common/matrix.h"
#include "mxt/common/rng.h"
#include "mxt/control_graph/observation_spec.h"
#include "mxt/env/kinematics.h"
#include "mxt/env/task.h"
#include "mxt/morphology/morphology.h"

namespace mxt {

inline constexpr double kMaxJointSpeed = 2.0;  // rad/s at |action| = 1
inline constexpr double kDefaultDt = 0.01;     // s
inline constexpr double kBallRadius = 0.1;     // m
inline constexpr double kBoxRadius = 0.05;     // m, contact sphere

// One (morphology, task) pair.
struct EnvSpec {
  std::string env_id;
  MorphologyGraph graph;
  TaskSpec task;
  std::vector<int> goal_nodes;  // resolved task targets

  static std::shared_ptr<const EnvSpec> Create(std::string env_id,
                                               MorphologyGraph graph,
                                               TaskSpec task);
};

// Value type; Step returns a new state.
struct EnvState {
  std::shared_ptr<const EnvSpec> spec;
  std::vector<double> joint_angles;
  std::vector<double> prev_joint_angles;  // equals joint_angles at reset
  double last_dt = 0.0;                   // 0 at reset
  std::vector<Vec3> goals;                // unused coordinates are 0
  std::optional<Vec3> ball_pos;
  std::optional<Vec3> box_pos;
  int step_count = 0;
  Rng rng;

  const MorphologyGraph& graph() const { return spec->graph; }
  const TaskSpec& task() const { return spec->task; }
  bool Done() const { return step_count >= spec->task.episode_length; }
};

struct SampledScene {
  std::vector<Vec3> goals;
  std::optional<Vec3> ball_pos;
  std::optional<Vec3> box_pos;
};

// xy goals: angle ~ U[0, 2pi), radius ~ U[r_lo, r_hi]; z goals ~ U[z_lo, z_hi].
std::vector<Vec3> SampleGoals(const TaskSpec& task, const MorphologyGraph& graph,
                              uint64_t seed);
// The box starts at the target's distance from the annulus center, 0.25 to
// 0.5 rad to either side of the target bearing.
SampledScene SampleScene(const TaskSpec& task, const MorphologyGraph& graph,
                         uint64_t seed);

// Joint angles at reset: the midpoint of every actuator range.
std::vector<double> RestPose(const MorphologyGraph& graph);

EnvState Reset(std::shared_ptr<const EnvSpec> spec, uint64_t seed);

// Actions outside [-1, 1] are clamped. Throws an episode-over error once
// step_count reaches the episode length.
EnvState Step(const EnvState& state, std::span<const double> actions,
              double dt = kDefaultDt);

// Quasi-static push; the box is an upright cylinder, so overlap is measured
// in the xy plane. Returns the new box center.
Vec3 ResolvePushContact(const Vec3& node_pos, double node_radius,
                        const Vec3& box_pos, double box_radius);

double GoalDistance(const EnvState& state, int goal_index);
double GoalDistance(const EnvState& state, const KinematicState& kin,
                    int goal_index);
std::vector<double> GoalDistances(const EnvState& state);
bool AllGoalsMet(const EnvState& state);

// Per-node feature rows in canonical flag order.
Matrix LocalObservations(const EnvState& state, const ObservationSpec& spec);

}  // namespace mxt

#endif  // MXT_ENV_ENV_H_
