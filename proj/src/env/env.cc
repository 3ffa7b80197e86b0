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

#include "mxt/env/env.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mxt/common/error.h"

namespace mxt {
namespace {

Vec3 AngularVelocity(const Quat& now, const Quat& before, double dt) {
  Quat dq = now * before.Conjugate();
  if (dq.w < 0.0) dq = {-dq.w, -dq.x, -dq.y, -dq.z};
  Vec3 v{dq.x, dq.y, dq.z};
  double s = v.Norm();
  if (s == 0.0) return {};
  double angle = 2.0 * std::atan2(s, dq.w);
  return (angle / (s * dt)) * v;
}

constexpr double kBoxArcLo = 0.25;
constexpr double kBoxArcHi = 0.5;

double PlanarDistance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

std::shared_ptr<const EnvSpec> EnvSpec::Create(std::string env_id,
                                               MorphologyGraph graph,
                                               TaskSpec task) {
  auto violations = Validate(graph);
  if (!violations.empty()) {
    throw Error(ErrorKind::kConfig,
                env_id + ": invalid morphology: " + violations.front());
  }
  ValidateTaskFor(task, graph);
  auto spec = std::make_shared<EnvSpec>();
  spec->env_id = std::move(env_id);
  spec->graph = std::move(graph);
  spec->task = std::move(task);
  for (const GoalTemplate& g : spec->task.goals) {
    spec->goal_nodes.push_back(g.target.Resolve(spec->graph));
  }
  return spec;
}

SampledScene SampleScene(const TaskSpec& task, const MorphologyGraph& graph,
                         uint64_t seed) {
  (void)graph;
  Rng rng(seed);
  SampledScene scene;
  for (const GoalTemplate& g : task.goals) {
    const GoalDistribution& d = g.distribution;
    double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    double radius = rng.Uniform(d.r_lo, d.r_hi);
    double z = rng.Uniform(d.z_lo, d.z_hi);
    Vec3 xy{d.cx + radius * std::cos(angle), d.cy + radius * std::sin(angle),
            0.0};
    switch (g.kind) {
      case GoalKind::kXyPosition:
      case GoalKind::kBoxToTarget:
        scene.goals.push_back(xy);
        break;
      case GoalKind::kZHeight:
        scene.goals.push_back({0.0, 0.0, z});
        break;
      case GoalKind::kBallContact:
        scene.goals.push_back({xy.x, xy.y, z});
        scene.ball_pos = scene.goals.back();
        break;
    }
  }
  for (size_t i = 0; i < task.goals.size(); ++i) {
    const GoalDistribution& d = task.goals[i].distribution;
    if (task.goals[i].kind != GoalKind::kBoxToTarget) continue;
    const Vec3& target = scene.goals[i];
    double side = rng.Uniform() < 0.5 ? -1.0 : 1.0;
    double angle = std::atan2(target.y - d.cy, target.x - d.cx) +
                   side * rng.Uniform(kBoxArcLo, kBoxArcHi);
    double radius = std::hypot(target.x - d.cx, target.y - d.cy);
    scene.box_pos = Vec3{d.cx + radius * std::cos(angle),
                         d.cy + radius * std::sin(angle), 0.0};
    break;
  }
  return scene;
}

std::vector<Vec3> SampleGoals(const TaskSpec& task, const MorphologyGraph& graph,
                              uint64_t seed) {
  return SampleScene(task, graph, seed).goals;
}

std::vector<double> RestPose(const MorphologyGraph& graph) {
  std::vector<double> angles;
  for (const JointEdge& e : graph.edges) {
    for (const Actuator& a : e.actuators) {
      angles.push_back(0.5 * (a.range_lo + a.range_hi));
    }
  }
  return angles;
}

EnvState Reset(std::shared_ptr<const EnvSpec> spec, uint64_t seed) {
  EnvState state;
  SampledScene scene = SampleScene(spec->task, spec->graph, seed);
  state.joint_angles = RestPose(spec->graph);
  state.prev_joint_angles = state.joint_angles;
  state.goals = std::move(scene.goals);
  state.ball_pos = scene.ball_pos;
  state.box_pos = scene.box_pos;
  state.rng = Rng(seed).Fork(1);
  state.spec = std::move(spec);
  return state;
}

Vec3 ResolvePushContact(const Vec3& node_pos, double node_radius,
                        const Vec3& box_pos, double box_radius) {
  double dist = PlanarDistance(box_pos, node_pos);
  double overlap = node_radius + box_radius - dist;
  if (overlap <= 0.0) return box_pos;
  Vec3 normal{box_pos.x - node_pos.x, box_pos.y - node_pos.y, 0.0};
  double len = normal.Norm();
  if (len == 0.0) return box_pos;
  return box_pos + (overlap / len) * normal;
}

EnvState Step(const EnvState& state, std::span<const double> actions,
              double dt) {
  const MorphologyGraph& graph = state.graph();
  if (state.Done()) {
    throw Error(ErrorKind::kEpisodeOver,
                "episode finished after " + std::to_string(state.step_count) +
                    " steps");
  }
  if (static_cast<int>(actions.size()) != graph.ActionDimension()) {
    throw Error(ErrorKind::kShape,
                "action count " + std::to_string(actions.size()) +
                    " != action dimension " +
                    std::to_string(graph.ActionDimension()));
  }
  EnvState next = state;
  next.prev_joint_angles = state.joint_angles;
  next.last_dt = dt;
  for (const JointEdge& e : graph.edges) {
    int dof = graph.nodes[e.child_id].dof_index;
    for (const Actuator& act : e.actuators) {
      double a = std::clamp(actions[dof], -1.0, 1.0);
      double q = state.joint_angles[dof] + act.gear * a * kMaxJointSpeed * dt;
      next.joint_angles[dof] = std::clamp(q, act.range_lo, act.range_hi);
      ++dof;
    }
  }
  if (next.box_pos) {
    auto poses = ForwardKinematics(graph, next.joint_angles);
    Vec3 box = *next.box_pos;
    for (int i = 0; i < graph.NodeCount(); ++i) {
      box = ResolvePushContact(poses[i].position, graph.nodes[i].radius, box,
                               kBoxRadius);
    }
    next.box_pos = box;
  }
  ++next.step_count;
  return next;
}

double GoalDistance(const EnvState& state, const KinematicState& kin,
                    int goal_index) {
  const TaskSpec& task = state.task();
  if (goal_index < 0 || goal_index >= task.GoalCount()) {
    throw Error(ErrorKind::kIndex, "goal index " + std::to_string(goal_index) +
                                       " out of range");
  }
  int node = state.spec->goal_nodes[goal_index];
  const Vec3& p = kin.poses[node].position;
  const Vec3& goal = state.goals[goal_index];
  switch (task.goals[goal_index].kind) {
    case GoalKind::kXyPosition:
      return PlanarDistance(p, goal);
    case GoalKind::kZHeight:
      return std::abs(p.z - goal.z);
    case GoalKind::kBallContact: {
      double gap = (p - *state.ball_pos).Norm() -
                   state.graph().nodes[node].radius - kBallRadius;
      return std::max(0.0, gap);
    }
    case GoalKind::kBoxToTarget:
      return PlanarDistance(*state.box_pos, goal);
  }
  return 0.0;
}

double GoalDistance(const EnvState& state, int goal_index) {
  return GoalDistance(state, ComputeKinematics(state.graph(), state.joint_angles),
                      goal_index);
}

std::vector<double> GoalDistances(const EnvState& state) {
  KinematicState kin = ComputeKinematics(state.graph(), state.joint_angles);
  std::vector<double> out;
  for (int i = 0; i < state.task().GoalCount(); ++i) {
    out.push_back(GoalDistance(state, kin, i));
  }
  return out;
}

bool AllGoalsMet(const EnvState& state) {
  auto d = GoalDistances(state);
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] > state.task().d_min[i]) return false;
  }
  return true;
}

Matrix LocalObservations(const EnvState& state, const ObservationSpec& spec) {
  const MorphologyGraph& graph = state.graph();
  const int n = graph.NodeCount();
  const double dofs = static_cast<double>(graph.ActionDimension());
  std::vector<Pose> now = ForwardKinematics(graph, state.joint_angles);
  std::vector<Pose> before = ForwardKinematics(graph, state.prev_joint_angles);
  const double dt = state.last_dt;

  Matrix obs(n, spec.width());
  for (int i = 0; i < n; ++i) {
    std::span<double> row = obs.Row(i);
    const ModuleNode& node = graph.nodes[i];
    const Pose& pose = now[i];
    auto put = [&](ObsFlag flag, int slot, double value) {
      row[spec.Offset(flag) + slot] = value;
    };
    if (spec.Has(ObsFlag::kP)) {
      for (int k = 0; k < 3; ++k) put(ObsFlag::kP, k, pose.position[k]);
    }
    if (spec.Has(ObsFlag::kV) && dt > 0.0) {
      Vec3 v = (1.0 / dt) * (pose.position - before[i].position);
      for (int k = 0; k < 3; ++k) put(ObsFlag::kV, k, v[k]);
    }
    if (spec.Has(ObsFlag::kQ)) {
      auto q = pose.orientation.ToArray();
      for (int k = 0; k < 4; ++k) put(ObsFlag::kQ, k, q[k]);
    }
    if (spec.Has(ObsFlag::kA) && dt > 0.0) {
      Vec3 w = AngularVelocity(pose.orientation, before[i].orientation, dt);
      for (int k = 0; k < 3; ++k) put(ObsFlag::kA, k, w[k]);
    }
    if (spec.Has(ObsFlag::kId)) put(ObsFlag::kId, 0, static_cast<double>(i) / n);
    if (spec.Has(ObsFlag::kM)) {
      put(ObsFlag::kM, 0, node.radius);
      put(ObsFlag::kM, 1, node.length);
      put(ObsFlag::kM, 2, node.mass);
      put(ObsFlag::kM, 3, node.inertia);
      bool limb = node.kind == ModuleKind::kLimbSegment;
      put(ObsFlag::kM, 6, limb ? 0.0 : 1.0);
      put(ObsFlag::kM, 7, limb ? 1.0 : 0.0);
    }
    if (i == 0) continue;  // joint-derived slots stay zero on the root

    const JointEdge& edge = graph.edges[graph.ParentEdgeIndex(i)];
    for (size_t k = 0; k < edge.actuators.size(); ++k) {
      int dof = node.dof_index + static_cast<int>(k);
      const Actuator& act = edge.actuators[k];
      int slot = static_cast<int>(k);
      if (spec.Has(ObsFlag::kJa)) put(ObsFlag::kJa, slot, state.joint_angles[dof]);
      if (spec.Has(ObsFlag::kJr)) {
        put(ObsFlag::kJr, 2 * slot, act.range_lo);
        put(ObsFlag::kJr, 2 * slot + 1, act.range_hi);
      }
      if (spec.Has(ObsFlag::kJv) && dt > 0.0) {
        put(ObsFlag::kJv, slot,
            (state.joint_angles[dof] - state.prev_joint_angles[dof]) / dt);
      }
    }
    const Pose& parent = now[edge.parent_id];
    if (spec.Has(ObsFlag::kRp)) {
      Vec3 rel = parent.orientation.Conjugate().Rotate(pose.position -
                                                       parent.position);
      for (int k = 0; k < 3; ++k) put(ObsFlag::kRp, k, rel[k]);
    }
    if (spec.Has(ObsFlag::kRr)) {
      auto rq = (parent.orientation.Conjugate() * pose.orientation).ToArray();
      for (int k = 0; k < 4; ++k) put(ObsFlag::kRr, k, rq[k]);
    }
    if (spec.Has(ObsFlag::kM)) {
      put(ObsFlag::kM, 4, edge.actuators.front().gear);
      put(ObsFlag::kM, 5, node.dof_index / dofs);
    }
  }
  return obs;
}

}  // namespace mxt
