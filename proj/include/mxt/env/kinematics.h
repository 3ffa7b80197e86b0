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

#ifndef MXT_ENV_KINEMATICS_H_
#define MXT_ENV_KINEMATICS_H_

#include <span>
#include <vector>

#include "mxt/common/geometry.h"
#include "mxt/morphology/morphology.h"

namespace mxt {

struct Pose {
  Vec3 position;     // segment tip, m
  Quat orientation;  // world from node frame
};

// Poses plus the per-actuator world axes and joint origins needed for
// Jacobians. Actuator j is located at joint_origin[node of j].
struct KinematicState {
  std::vector<Pose> poses;
  std::vector<Vec3> joint_origins;   // per node; root is the origin
  std::vector<Vec3> actuator_axes;   // per global dof, world frame
  std::vector<int> actuator_node;    // per global dof, owning child node
};

// The root is fixed at the origin with identity orientation. A child frame is
// the parent pose translated by attach_offset (parent frame), yawed to face
// along the horizontal direction of a non-zero offset, rotated about each
// actuator axis in turn, then translated by (length, 0, 0). A node's pose is
// its segment tip; its children attach there.
KinematicState ComputeKinematics(const MorphologyGraph& graph,
                                 std::span<const double> joint_angles);

std::vector<Pose> ForwardKinematics(const MorphologyGraph& graph,
                                    std::span<const double> joint_angles);

// d position(node) / d angle, one column per global dof. Dofs outside the
// node's root path have zero columns.
std::vector<Vec3> PositionJacobian(const MorphologyGraph& graph,
                                   const KinematicState& kin, int node_id);

// Base and radius of the serial chain ending at `node_id`: the base is the
// rest-pose origin of the first joint on the root path, the radius the sum of
// segment lengths and offsets past it.
struct ChainWorkspace {
  Vec3 base;
  double radius = 0.0;
};
ChainWorkspace ChainWorkspaceOf(const MorphologyGraph& graph,
                                std::span<const double> rest_angles,
                                int node_id);

// Parent-before-child ordering of node ids.
std::vector<int> TopologicalOrder(const MorphologyGraph& graph);

}  // namespace mxt

#endif  // MXT_ENV_KINEMATICS_H_
