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

#include "mxt/env/kinematics.h"

#include <cmath>
#include <string>

#include "mxt/common/error.h"

namespace mxt {

ChainWorkspace ChainWorkspaceOf(const MorphologyGraph& graph,
                                std::span<const double> rest_angles,
                                int node_id) {
  std::vector<int> path = graph.PathFromRoot(node_id);
  ChainWorkspace ws;
  if (path.size() < 2) return ws;
  KinematicState kin = ComputeKinematics(graph, rest_angles);
  ws.base = kin.joint_origins[path[1]];
  for (size_t i = 1; i < path.size(); ++i) {
    const ModuleNode& n = graph.nodes[path[i]];
    ws.radius += n.length + (i > 1 ? n.attach_offset.Norm() : 0.0);
  }
  return ws;
}

std::vector<int> TopologicalOrder(const MorphologyGraph& graph) {
  const int n = graph.NodeCount();
  std::vector<std::vector<int>> children(n);
  for (const JointEdge& e : graph.edges) children[e.parent_id].push_back(e.child_id);
  std::vector<int> order;
  order.reserve(n);
  order.push_back(0);
  for (size_t i = 0; i < order.size(); ++i) {
    for (int c : children[order[i]]) order.push_back(c);
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorKind::kValue, "morphology graph is not a rooted tree");
  }
  return order;
}

KinematicState ComputeKinematics(const MorphologyGraph& graph,
                                 std::span<const double> joint_angles) {
  const int dofs = graph.ActionDimension();
  if (static_cast<int>(joint_angles.size()) != dofs) {
    throw Error(ErrorKind::kShape,
                "joint angle count " + std::to_string(joint_angles.size()) +
                    " != action dimension " + std::to_string(dofs));
  }
  const int n = graph.NodeCount();
  KinematicState kin;
  kin.poses.resize(n);
  kin.joint_origins.resize(n);
  kin.actuator_axes.resize(dofs);
  kin.actuator_node.resize(dofs, -1);

  for (int id : TopologicalOrder(graph)) {
    const ModuleNode& node = graph.nodes[id];
    if (id == 0) {
      kin.joint_origins[0] = Vec3{};
      kin.poses[0].orientation = Quat{};
      kin.poses[0].position =
          kin.poses[0].orientation.Rotate(Vec3{node.length, 0.0, 0.0});
      continue;
    }
    const JointEdge& edge = graph.edges[graph.ParentEdgeIndex(id)];
    const Pose& parent = kin.poses[edge.parent_id];
    Vec3 origin = parent.position + parent.orientation.Rotate(node.attach_offset);
    Quat frame = parent.orientation;
    const Vec3& off = node.attach_offset;
    if (off.PlanarNorm() > 0.0) {
      frame = frame * Quat::AxisAngle({0.0, 0.0, 1.0}, std::atan2(off.y, off.x));
    }
    for (size_t k = 0; k < edge.actuators.size(); ++k) {
      int dof = node.dof_index + static_cast<int>(k);
      const Actuator& act = edge.actuators[k];
      kin.actuator_axes[dof] = frame.Rotate(act.axis);
      kin.actuator_node[dof] = id;
      frame = frame * Quat::AxisAngle(act.axis, joint_angles[dof]);
    }
    kin.joint_origins[id] = origin;
    kin.poses[id].orientation = frame;
    kin.poses[id].position = origin + frame.Rotate(Vec3{node.length, 0.0, 0.0});
  }
  return kin;
}

std::vector<Pose> ForwardKinematics(const MorphologyGraph& graph,
                                    std::span<const double> joint_angles) {
  return ComputeKinematics(graph, joint_angles).poses;
}

std::vector<Vec3> PositionJacobian(const MorphologyGraph& graph,
                                   const KinematicState& kin, int node_id) {
  std::vector<Vec3> jac(kin.actuator_axes.size());
  const Vec3& p = kin.poses[node_id].position;
  for (int m : graph.PathFromRoot(node_id)) {
    if (m == 0) continue;
    const JointEdge& edge = graph.edges[graph.ParentEdgeIndex(m)];
    for (size_t k = 0; k < edge.actuators.size(); ++k) {
      int dof = graph.nodes[m].dof_index + static_cast<int>(k);
      jac[dof] = Cross(kin.actuator_axes[dof], p - kin.joint_origins[m]);
    }
  }
  return jac;
}

}  // namespace mxt
