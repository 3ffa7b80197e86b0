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

#ifndef MXT_MORPHOLOGY_MORPHOLOGY_H_
#define MXT_MORPHOLOGY_MORPHOLOGY_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mxt/common/geometry.h"

namespace mxt {

enum class ModuleKind { kTorso, kBody, kLimbSegment };

std::string_view ModuleKindName(ModuleKind kind);
ModuleKind ParseModuleKind(std::string_view name);

struct ModuleNode {
  int node_id = 0;
  ModuleKind kind = ModuleKind::kTorso;
  double radius = 0.0;   // m
  double length = 0.0;   // m
  double mass = 0.0;     // kg
  double inertia = 0.0;  // kg m^2, scalar principal approximation
  Vec3 attach_offset;    // m, in the parent frame
  // Global actuator index of the first actuator on the parent edge; -1 for
  // the root.
  int dof_index = -1;

  friend bool operator==(const ModuleNode&, const ModuleNode&) = default;
};

struct Actuator {
  Vec3 axis;  // unit, in the child frame before this actuator's rotation
  double range_lo = 0.0;  // rad
  double range_hi = 0.0;  // rad
  double gear = 1.0;

  friend bool operator==(const Actuator&, const Actuator&) = default;
};

struct JointEdge {
  int parent_id = 0;
  int child_id = 0;
  std::vector<Actuator> actuators;  // 1 to 3 entries

  friend bool operator==(const JointEdge&, const JointEdge&) = default;
};

struct Variation {
  std::optional<int> missing;  // leg index
  std::array<double, 3> mass_scales = {1.0, 1.0, 1.0};
  std::array<double, 3> size_scales = {1.0, 1.0, 1.0};

  friend bool operator==(const Variation&, const Variation&) = default;
};

enum class Blueprint { kAnt, kClaw, kCentipede, kWorm };

std::string_view BlueprintName(Blueprint blueprint);
Blueprint ParseBlueprint(std::string_view name);

// Acyclic tree of body modules. Edges are stored in child-id order, so the
// parent edge of node i (i > 0) is edges[i - 1] for every graph built here.
struct MorphologyGraph {
  std::vector<ModuleNode> nodes;
  std::vector<JointEdge> edges;
  std::string blueprint_tag;  // e.g. "ant_4"
  std::optional<Variation> variation;

  int ActionDimension() const;
  int NodeCount() const { return static_cast<int>(nodes.size()); }
  // Index into edges of the edge whose child is node_id, or -1.
  int ParentEdgeIndex(int node_id) const;
  int Parent(int node_id) const;
  std::vector<int> Children(int node_id) const;
  // Legs in order of their proximal node id; each leg lists node ids from
  // proximal to distal.
  std::vector<std::vector<int>> Legs() const;
  // End effector of leg k (its distal-most node). For legless graphs, k = 0
  // names the last body of the chain.
  int EndEffector(int k) const;
  // Root-to-node path, root first.
  std::vector<int> PathFromRoot(int node_id) const;
  // Sum of attach offsets and lengths along the longest root-to-leaf path.
  double ReachRadius() const;

  friend bool operator==(const MorphologyGraph&,
                         const MorphologyGraph&) = default;
};

// Default module geometry.
struct BlueprintGeometry {
  double torso_radius = 0.25;
  double body_length = 0.5;
  double segment_length = 0.4;
  double segment_radius = 0.08;
  double mass = 1.0;
  double inertia = 0.01;
  double gear = 1.0;
};

MorphologyGraph GenerateMorphology(
    Blueprint blueprint, int count,
    const std::optional<Variation>& variation = std::nullopt,
    const BlueprintGeometry& geometry = {});

MorphologyGraph ApplyMissing(const MorphologyGraph& graph, int leg_index);
MorphologyGraph ApplyMassScaling(const MorphologyGraph& graph,
                                 const std::array<double, 3>& scales);
MorphologyGraph ApplySizeScaling(const MorphologyGraph& graph,
                                 const std::array<double, 3>& scales);

std::vector<std::string> Validate(const MorphologyGraph& graph);

std::string SerializeMorphology(const MorphologyGraph& graph);
MorphologyGraph ParseMorphology(std::string_view text);

}  // namespace mxt

#endif  // MXT_MORPHOLOGY_MORPHOLOGY_H_
