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

#include "mxt/env/expert.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mxt {
namespace {

constexpr double kSlowdownRadius = 0.2;
constexpr double kBearingTolerance = 0.1;

// Planar error vector from `to` to `from`.
Vec3 PlanarGradient(const Vec3& from, const Vec3& to) {
  return {from.x - to.x, from.y - to.y, 0.0};
}

// Unit direction far from the goal, linear in the error inside the slowdown
// radius.
Vec3 Saturate(const Vec3& e) {
  return (1.0 / std::max(e.Norm(), kSlowdownRadius)) * e;
}

// Planar error toward an aim point that first sits behind the box, then past
// it along the push direction. An effector not yet behind the box retracts
// toward the chain base and swings around inside it.
Vec3 PushError(const Vec3& effector, double effector_radius, const Vec3& box,
               const Vec3& target, const Vec3& base) {
  Vec3 dir = PlanarGradient(target, box);
  if (dir.Norm() > 0.0) dir = (1.0 / dir.Norm()) * dir;
  double standoff = effector_radius + kBoxRadius + 0.05;
  Vec3 staging = box - standoff * dir;
  Vec3 rel{effector.x - box.x, effector.y - box.y, 0.0};
  Vec3 aim = staging;
  if (Dot(rel, dir) < -0.5 * standoff) {
    if (PlanarGradient(effector, staging).Norm() < 0.6 * standoff) {
      aim = box + 0.1 * dir;
    }
  } else {
    Vec3 out = PlanarGradient(effector, base);
    Vec3 to_staging = PlanarGradient(staging, base);
    double r = PlanarGradient(box, base).Norm() - 1.5 * standoff;
    double bearing_gap = std::abs(std::remainder(
        std::atan2(out.y, out.x) - std::atan2(to_staging.y, to_staging.x),
        2.0 * std::numbers::pi));
    if (bearing_gap < kBearingTolerance && out.Norm() <= to_staging.Norm()) {
      aim = staging;
    } else if (out.Norm() > r + 0.02) {
      aim = base + (r / out.Norm()) * out;
    } else if (to_staging.Norm() > 0.0) {
      aim = base + (r / to_staging.Norm()) * to_staging;
    }
  }
  aim.z = 0.0;
  return PlanarGradient(effector, aim);
}

}  // namespace

std::vector<double> ScriptedExpert(const EnvState& state, double gain) {
  const MorphologyGraph& graph = state.graph();
  const TaskSpec& task = state.task();
  const int dofs = graph.ActionDimension();
  KinematicState kin = ComputeKinematics(graph, state.joint_angles);
  std::vector<double> drive(dofs, 0.0);

  for (int i = 0; i < task.GoalCount(); ++i) {
    if (GoalDistance(state, kin, i) <= task.d_min[i]) continue;
    int node = state.spec->goal_nodes[i];
    const Vec3& p = kin.poses[node].position;
    const Vec3& goal = state.goals[i];
    Vec3 grad;
    switch (task.goals[i].kind) {
      case GoalKind::kXyPosition:
        grad = PlanarGradient(p, goal);
        break;
      case GoalKind::kZHeight:
        grad = {0.0, 0.0, p.z - goal.z};
        break;
      case GoalKind::kBallContact: {
        Vec3 d = p - *state.ball_pos;
        double n = d.Norm();
        grad = n > 0.0 ? (GoalDistance(state, kin, i) / n) * d : Vec3{};
        break;
      }
      case GoalKind::kBoxToTarget:
        grad = PushError(p, graph.nodes[node].radius, *state.box_pos, goal,
                         {task.goals[i].distribution.cx,
                          task.goals[i].distribution.cy, 0.0});
        break;
    }
    grad = Saturate(grad);
    std::vector<Vec3> jac = PositionJacobian(graph, kin, node);
    for (int j = 0; j < dofs; ++j) drive[j] += Dot(jac[j], grad);
  }

  std::vector<double> actions(dofs);
  for (int j = 0; j < dofs; ++j) {
    actions[j] = std::clamp(-gain * drive[j], -1.0, 1.0);
  }
  return actions;
}

}  // namespace mxt
