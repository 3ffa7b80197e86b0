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

#include "mxt/morphology/morphology.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"

namespace mxt {
namespace {

constexpr Vec3 kYawAxis{0.0, 0.0, 1.0};
constexpr Vec3 kPitchAxis{0.0, 1.0, 0.0};
constexpr double kSpineRange = 0.5;
constexpr double kPitchLo = -1.0;
constexpr double kPitchHi = 2.0;

Actuator MakeActuator(const Vec3& axis, double lo, double hi, double gear) {
  return {axis, Canonical(lo), Canonical(hi), Canonical(gear)};
}

Actuator HipYaw(const BlueprintGeometry& g) {
  return MakeActuator(kYawAxis, -std::numbers::pi, std::numbers::pi, g.gear);
}

Actuator Pitch(const BlueprintGeometry& g) {
  return MakeActuator(kPitchAxis, kPitchLo, kPitchHi, g.gear);
}

class Builder {
 public:
  explicit Builder(const BlueprintGeometry& g) : g_(g) {}

  int AddRoot() {
    graph_.nodes.push_back({0, ModuleKind::kTorso, Canonical(g_.torso_radius),
                            0.0, Canonical(g_.mass), Canonical(g_.inertia),
                            Vec3{}, -1});
    return 0;
  }

  int AddNode(int parent, ModuleKind kind, double radius, double length,
              const Vec3& offset, std::vector<Actuator> actuators) {
    int id = graph_.NodeCount();
    graph_.nodes.push_back(
        {id, kind, Canonical(radius), Canonical(length), Canonical(g_.mass),
         Canonical(g_.inertia),
         Vec3{Canonical(offset.x), Canonical(offset.y), Canonical(offset.z)},
         next_dof_});
    next_dof_ += static_cast<int>(actuators.size());
    graph_.edges.push_back({parent, id, std::move(actuators)});
    return id;
  }

  // A leg of `segments` limb modules hanging off `parent` at angle `theta`
  // around it, at the parent's surface.
  void AddLeg(int parent, double theta, double attach_radius, int segments,
              bool two_dof_hip) {
    Vec3 offset{attach_radius * std::cos(theta), attach_radius * std::sin(theta),
                0.0};
    std::vector<Actuator> hip = {HipYaw(g_)};
    if (two_dof_hip) hip.push_back(Pitch(g_));
    int prev = AddNode(parent, ModuleKind::kLimbSegment, g_.segment_radius,
                       g_.segment_length, offset, std::move(hip));
    for (int s = 1; s < segments; ++s) {
      prev = AddNode(prev, ModuleKind::kLimbSegment, g_.segment_radius,
                     g_.segment_length, Vec3{}, {Pitch(g_)});
    }
  }

  int AddSpineBody(int parent) {
    return AddNode(parent, ModuleKind::kBody, g_.torso_radius, g_.body_length,
                   Vec3{},
                   {MakeActuator(kYawAxis, -kSpineRange, kSpineRange, g_.gear)});
  }

  MorphologyGraph Take() { return std::move(graph_); }

 private:
  BlueprintGeometry g_;
  MorphologyGraph graph_;
  int next_dof_ = 0;
};

void CheckScales(const std::array<double, 3>& scales, std::string_view what) {
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::kValue, std::string(what) +
                                         " scale factors must be positive, got " +
                                         FormatReal(s));
    }
  }
}

enum class Tier { kTrunk = 0, kProximal = 1, kDistal = 2 };

Tier TierOf(const MorphologyGraph& graph, int node_id) {
  const ModuleNode& node = graph.nodes[node_id];
  if (node.kind != ModuleKind::kLimbSegment) return Tier::kTrunk;
  int parent = graph.Parent(node_id);
  if (parent < 0 || graph.nodes[parent].kind != ModuleKind::kLimbSegment) {
    return Tier::kProximal;
  }
  return Tier::kDistal;
}

void ReassignDofs(MorphologyGraph& graph) {
  int dof = 0;
  for (ModuleNode& node : graph.nodes) node.dof_index = -1;
  for (const JointEdge& edge : graph.edges) {
    if (edge.child_id >= 0 && edge.child_id < graph.NodeCount()) {
      graph.nodes[edge.child_id].dof_index = dof;
    }
    dof += static_cast<int>(edge.actuators.size());
  }
}

Variation& EnsureVariation(MorphologyGraph& graph) {
  if (!graph.variation) graph.variation = Variation{};
  return *graph.variation;
}

std::string FormatTriple(const std::array<double, 3>& v) {
  return FormatReal(v[0]) + "," + FormatReal(v[1]) + "," + FormatReal(v[2]);
}

}  // namespace

std::string_view ModuleKindName(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::kTorso: return "torso";
    case ModuleKind::kBody: return "body";
    case ModuleKind::kLimbSegment: return "limb_segment";
  }
  return "?";
}

ModuleKind ParseModuleKind(std::string_view name) {
  if (name == "torso") return ModuleKind::kTorso;
  if (name == "body") return ModuleKind::kBody;
  if (name == "limb_segment") return ModuleKind::kLimbSegment;
  throw Error(ErrorKind::kParse, "unknown module kind '" + std::string(name) + "'");
}

std::string_view BlueprintName(Blueprint blueprint) {
  switch (blueprint) {
    case Blueprint::kAnt: return "ant";
    case Blueprint::kClaw: return "claw";
    case Blueprint::kCentipede: return "centipede";
    case Blueprint::kWorm: return "worm";
  }
  return "?";
}

Blueprint ParseBlueprint(std::string_view name) {
  if (name == "ant") return Blueprint::kAnt;
  if (name == "claw") return Blueprint::kClaw;
  if (name == "centipede") return Blueprint::kCentipede;
  if (name == "worm") return Blueprint::kWorm;
  throw Error(ErrorKind::kValue, "unknown blueprint '" + std::string(name) + "'");
}

int MorphologyGraph::ActionDimension() const {
  int total = 0;
  for (const JointEdge& e : edges) total += static_cast<int>(e.actuators.size());
  return total;
}

int MorphologyGraph::ParentEdgeIndex(int node_id) const {
  if (node_id >= 1 && node_id - 1 < static_cast<int>(edges.size()) &&
      edges[node_id - 1].child_id == node_id) {
    return node_id - 1;
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].child_id == node_id) return static_cast<int>(i);
  }
  return -1;
}

int MorphologyGraph::Parent(int node_id) const {
  int e = ParentEdgeIndex(node_id);
  return e < 0 ? -1 : edges[e].parent_id;
}

std::vector<int> MorphologyGraph::Children(int node_id) const {
  std::vector<int> out;
  for (const JointEdge& e : edges) {
    if (e.parent_id == node_id) out.push_back(e.child_id);
  }
  return out;
}

std::vector<std::vector<int>> MorphologyGraph::Legs() const {
  std::vector<std::vector<int>> legs;
  for (const ModuleNode& node : nodes) {
    if (node.kind != ModuleKind::kLimbSegment) continue;
    int parent = Parent(node.node_id);
    if (parent < 0 || nodes[parent].kind == ModuleKind::kLimbSegment) continue;
    std::vector<int> leg = {node.node_id};
    while (true) {
      int next = -1;
      for (int c : Children(leg.back())) {
        if (nodes[c].kind == ModuleKind::kLimbSegment) {
          next = c;
          break;
        }
      }
      if (next < 0) break;
      leg.push_back(next);
    }
    legs.push_back(std::move(leg));
  }
  return legs;
}

int MorphologyGraph::EndEffector(int k) const {
  auto legs = Legs();
  if (legs.empty()) {
    if (k != 0) {
      throw Error(ErrorKind::kIndex, blueprint_tag + " has no legs; only "
                                     "end effector 0 (chain tip) exists");
    }
    return NodeCount() - 1;
  }
  if (k < 0 || k >= static_cast<int>(legs.size())) {
    throw Error(ErrorKind::kIndex, "end effector " + std::to_string(k) +
                                       " out of range for " + blueprint_tag);
  }
  return legs[k].back();
}

std::vector<int> MorphologyGraph::PathFromRoot(int node_id) const {
  std::vector<int> path;
  for (int n = node_id; n >= 0; n = Parent(n)) {
    path.push_back(n);
    if (path.size() > nodes.size()) {
      throw Error(ErrorKind::kValue, "cycle in morphology graph");
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double MorphologyGraph::ReachRadius() const {
  std::vector<double> reach(nodes.size(), 0.0);
  double best = 0.0;
  for (const ModuleNode& node : nodes) {
    double r = node.length;
    int parent = Parent(node.node_id);
    if (parent >= 0) r += reach[parent] + node.attach_offset.Norm();
    reach[node.node_id] = r;
    best = std::max(best, r);
  }
  return best;
}

MorphologyGraph GenerateMorphology(Blueprint blueprint, int count,
                                   const std::optional<Variation>& variation,
                                   const BlueprintGeometry& geometry) {
  bool legged = blueprint == Blueprint::kAnt || blueprint == Blueprint::kClaw;
  const int lo = 2;
  int hi = legged ? 6 : 7;
  if (count < lo || count > hi) {
    throw Error(ErrorKind::kRange,
                std::string(BlueprintName(blueprint)) + " count " +
                    std::to_string(count) + " outside [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  }

  Builder b(geometry);
  int root = b.AddRoot();
  switch (blueprint) {
    case Blueprint::kAnt:
    case Blueprint::kClaw: {
      bool claw = blueprint == Blueprint::kClaw;
      for (int k = 0; k < count; ++k) {
        double theta = 2.0 * std::numbers::pi * k / count;
        b.AddLeg(root, theta, geometry.torso_radius, claw ? 3 : 2, claw);
      }
      break;
    }
    case Blueprint::kCentipede: {
      int body = root;
      for (int i = 0; i < count; ++i) {
        if (i > 0) body = b.AddSpineBody(body);
        b.AddLeg(body, 0.5 * std::numbers::pi, geometry.torso_radius, 2, false);
        b.AddLeg(body, -0.5 * std::numbers::pi, geometry.torso_radius, 2, false);
      }
      break;
    }
    case Blueprint::kWorm: {
      int body = root;
      for (int i = 1; i < count; ++i) body = b.AddSpineBody(body);
      break;
    }
  }

  MorphologyGraph graph = b.Take();
  graph.blueprint_tag =
      std::string(BlueprintName(blueprint)) + "_" + std::to_string(count);
  if (variation) {
    if (variation->missing) graph = ApplyMissing(graph, *variation->missing);
    graph = ApplyMassScaling(graph, variation->mass_scales);
    graph = ApplySizeScaling(graph, variation->size_scales);
    graph.variation = variation;
  }
  return graph;
}

MorphologyGraph ApplyMissing(const MorphologyGraph& graph, int leg_index) {
  auto legs = graph.Legs();
  if (legs.empty()) {
    throw Error(ErrorKind::kUnsupported,
                graph.blueprint_tag + " has no legs to remove a module from");
  }
  if (leg_index < 0 || leg_index >= static_cast<int>(legs.size())) {
    throw Error(ErrorKind::kVariation,
                "missing-leg index " + std::to_string(leg_index) +
                    " not below leg count " + std::to_string(legs.size()));
  }
  const std::vector<int>& leg = legs[leg_index];
  if (leg.size() < 2) {
    throw Error(ErrorKind::kVariation, "leg " + std::to_string(leg_index) +
                                           " has a single segment");
  }
  int removed = leg.back();
  auto remap = [removed](int id) { return id > removed ? id - 1 : id; };

  MorphologyGraph out;
  out.blueprint_tag = graph.blueprint_tag;
  out.variation = graph.variation;
  for (const ModuleNode& node : graph.nodes) {
    if (node.node_id == removed) continue;
    ModuleNode copy = node;
    copy.node_id = remap(node.node_id);
    out.nodes.push_back(copy);
  }
  for (const JointEdge& edge : graph.edges) {
    if (edge.child_id == removed) continue;
    JointEdge copy = edge;
    copy.parent_id = remap(edge.parent_id);
    copy.child_id = remap(edge.child_id);
    out.edges.push_back(std::move(copy));
  }
  ReassignDofs(out);
  EnsureVariation(out).missing = leg_index;
  return out;
}

MorphologyGraph ApplyMassScaling(const MorphologyGraph& graph,
                                 const std::array<double, 3>& scales) {
  CheckScales(scales, "mass");
  MorphologyGraph out = graph;
  for (ModuleNode& node : out.nodes) {
    double s = scales[static_cast<int>(TierOf(graph, node.node_id))];
    node.mass = Canonical(node.mass * s);
    node.inertia = Canonical(node.inertia * s);
  }
  if (scales != std::array<double, 3>{1.0, 1.0, 1.0} || out.variation) {
    EnsureVariation(out).mass_scales = scales;
  }
  return out;
}

MorphologyGraph ApplySizeScaling(const MorphologyGraph& graph,
                                 const std::array<double, 3>& scales) {
  CheckScales(scales, "size");
  MorphologyGraph out = graph;
  for (ModuleNode& node : out.nodes) {
    double s = scales[static_cast<int>(TierOf(graph, node.node_id))];
    node.length = Canonical(node.length * s);
    node.radius = Canonical(node.radius * s);
  }
  if (scales != std::array<double, 3>{1.0, 1.0, 1.0} || out.variation) {
    EnsureVariation(out).size_scales = scales;
  }
  return out;
}

std::vector<std::string> Validate(const MorphologyGraph& graph) {
  std::vector<std::string> violations;
  const int n = graph.NodeCount();
  if (n == 0) {
    violations.push_back("empty graph");
    return violations;
  }
  if (graph.nodes[0].kind != ModuleKind::kTorso) {
    violations.push_back("node 0 is not a torso");
  }
  for (int i = 0; i < n; ++i) {
    const ModuleNode& node = graph.nodes[i];
    std::string who = "node " + std::to_string(i);
    if (node.node_id != i) violations.push_back(who + ": node ids not dense");
    if (!(node.radius > 0.0)) violations.push_back(who + ": radius must be > 0");
    if (!(node.length >= 0.0)) violations.push_back(who + ": length must be >= 0");
    if (!(node.mass > 0.0)) violations.push_back(who + ": mass must be > 0");
    if (!(node.inertia > 0.0)) violations.push_back(who + ": inertia must be > 0");
  }

  bool tree = static_cast<int>(graph.edges.size()) == n - 1;
  std::vector<int> parent_count(n, 0);
  for (const JointEdge& e : graph.edges) {
    if (e.parent_id < 0 || e.parent_id >= n || e.child_id < 0 ||
        e.child_id >= n) {
      violations.push_back("edge " + std::to_string(e.parent_id) + "->" +
                           std::to_string(e.child_id) + " names a missing node");
      tree = false;
      continue;
    }
    if (e.child_id == 0 || e.parent_id == e.child_id) tree = false;
    if (++parent_count[e.child_id] > 1) tree = false;
  }
  if (tree) {
    // Every node must reach the root.
    std::vector<int> parent(n, -1);
    for (const JointEdge& e : graph.edges) parent[e.child_id] = e.parent_id;
    for (int i = 1; i < n && tree; ++i) {
      int steps = 0;
      int cur = i;
      while (cur != 0 && cur >= 0 && steps <= n) {
        cur = parent[cur];
        ++steps;
      }
      if (cur != 0) tree = false;
    }
  }
  if (!tree) violations.push_back("not a tree rooted at node 0");

  int dof = 0;
  for (const JointEdge& e : graph.edges) {
    std::string who =
        "edge " + std::to_string(e.parent_id) + "->" + std::to_string(e.child_id);
    int k = static_cast<int>(e.actuators.size());
    if (k < 1 || k > 3) {
      violations.push_back(who + ": actuator count " + std::to_string(k) +
                           " outside [1, 3]");
    }
    for (const Actuator& a : e.actuators) {
      if (!(a.range_lo < a.range_hi)) {
        violations.push_back(who + ": empty joint range");
      }
      if (std::abs(a.axis.Norm() - 1.0) > 1e-9) {
        violations.push_back(who + ": actuator axis is not unit norm");
      }
      if (!(a.gear > 0.0)) violations.push_back(who + ": gear must be > 0");
    }
    if (e.child_id >= 0 && e.child_id < n &&
        graph.nodes[e.child_id].dof_index != dof) {
      violations.push_back(who + ": dof_index " +
                           std::to_string(graph.nodes[e.child_id].dof_index) +
                           " breaks edge-order numbering (expected " +
                           std::to_string(dof) + ")");
    }
    dof += k;
  }
  if (graph.nodes[0].dof_index != -1) {
    violations.push_back("root dof_index must be -1");
  }
  return violations;
}

std::string SerializeMorphology(const MorphologyGraph& graph) {
  std::ostringstream out;
  out << "morphology " << graph.blueprint_tag << " nodes=" << graph.NodeCount()
      << " edges=" << graph.edges.size() << "\n";
  if (graph.variation) {
    const Variation& v = *graph.variation;
    out << "variation missing="
        << (v.missing ? std::to_string(*v.missing) : std::string("-"))
        << " mass=" << FormatTriple(v.mass_scales)
        << " size=" << FormatTriple(v.size_scales) << "\n";
  }
  for (const ModuleNode& node : graph.nodes) {
    out << "node " << node.node_id << " " << ModuleKindName(node.kind) << " "
        << FormatReal(node.radius) << " " << FormatReal(node.length) << " "
        << FormatReal(node.mass) << " " << FormatReal(node.inertia) << " "
        << FormatReal(node.attach_offset.x) << " "
        << FormatReal(node.attach_offset.y) << " "
        << FormatReal(node.attach_offset.z) << "\n";
  }
  for (const JointEdge& edge : graph.edges) {
    out << "edge " << edge.parent_id << " " << edge.child_id << " "
        << edge.actuators.size() << "\n";
    for (const Actuator& a : edge.actuators) {
      out << "act " << FormatReal(a.axis.x) << " " << FormatReal(a.axis.y) << " "
          << FormatReal(a.axis.z) << " " << FormatReal(a.range_lo) << " "
          << FormatReal(a.range_hi) << " " << FormatReal(a.gear) << "\n";
    }
  }
  return out.str();
}

namespace {

struct LineCursor {
  std::vector<std::pair<int, std::vector<std::string_view>>> lines;
  size_t next = 0;

  bool Done() const { return next >= lines.size(); }
};

[[noreturn]] void ParseFail(int line, const std::string& message) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message);
}

std::string_view KeyValue(int line, std::string_view token,
                          std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() <= key.size() ||
      token[key.size()] != '=') {
    ParseFail(line, "expected '" + std::string(key) + "=...'");
  }
  return token.substr(key.size() + 1);
}

std::array<double, 3> ParseTriple(int line, std::string_view text) {
  auto parts = SplitString(text, ',');
  if (parts.size() != 3) ParseFail(line, "expected three comma-separated values");
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = ParseReal(parts[i]);
  return out;
}

}  // namespace

MorphologyGraph ParseMorphology(std::string_view text) {
  LineCursor cur;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty()) cur.lines.emplace_back(line_no, std::move(tokens));
    if (end == text.size()) break;
    start = end + 1;
  }

  auto wrap = [](int line, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kParse) throw;
      std::string msg = e.what();
      if (msg.rfind("parse error: line ", 0) == 0) throw;
      ParseFail(line, msg.substr(std::string("parse error: ").size()));
    }
  };

  if (cur.Done()) ParseFail(line_no, "missing 'morphology' header");
  MorphologyGraph graph;
  int n_nodes = 0;
  int n_edges = 0;
  {
    auto& [ln, tok] = cur.lines[cur.next++];
    if (tok[0] != "morphology" || tok.size() != 4) {
      ParseFail(ln, "expected 'morphology <tag> nodes=<N> edges=<M>'");
    }
    graph.blueprint_tag = std::string(tok[1]);
    wrap(ln, [&] {
      n_nodes = static_cast<int>(ParseInt(KeyValue(ln, tok[2], "nodes")));
      n_edges = static_cast<int>(ParseInt(KeyValue(ln, tok[3], "edges")));
      return 0;
    });
    if (n_nodes < 1 || n_edges < 0) ParseFail(ln, "invalid node/edge counts");
  }
  if (!cur.Done() && cur.lines[cur.next].second[0] == "variation") {
    auto& [ln, tok] = cur.lines[cur.next++];
    if (tok.size() != 4) ParseFail(ln, "expected 'variation missing= mass= size='");
    wrap(ln, [&] {
      Variation v;
      std::string_view missing = KeyValue(ln, tok[1], "missing");
      if (missing != "-") v.missing = static_cast<int>(ParseInt(missing));
      v.mass_scales = ParseTriple(ln, KeyValue(ln, tok[2], "mass"));
      v.size_scales = ParseTriple(ln, KeyValue(ln, tok[3], "size"));
      graph.variation = v;
      return 0;
    });
  }
  for (int i = 0; i < n_nodes; ++i) {
    if (cur.Done() || cur.lines[cur.next].second[0] != "node") {
      ParseFail(cur.Done() ? line_no : cur.lines[cur.next].first,
                "node section truncated: expected " + std::to_string(n_nodes) +
                    " node lines, found " + std::to_string(i));
    }
    auto& [ln, tok] = cur.lines[cur.next++];
    if (tok.size() != 10) ParseFail(ln, "node line needs 9 fields");
    wrap(ln, [&] {
      ModuleNode node;
      node.node_id = static_cast<int>(ParseInt(tok[1]));
      node.kind = ParseModuleKind(tok[2]);
      node.radius = ParseReal(tok[3]);
      node.length = ParseReal(tok[4]);
      node.mass = ParseReal(tok[5]);
      node.inertia = ParseReal(tok[6]);
      node.attach_offset = {ParseReal(tok[7]), ParseReal(tok[8]),
                            ParseReal(tok[9])};
      graph.nodes.push_back(node);
      return 0;
    });
  }
  for (int i = 0; i < n_edges; ++i) {
    if (cur.Done() || cur.lines[cur.next].second[0] != "edge") {
      ParseFail(cur.Done() ? line_no : cur.lines[cur.next].first,
                "edge section truncated: expected " + std::to_string(n_edges) +
                    " edge lines, found " + std::to_string(i));
    }
    auto& [ln, tok] = cur.lines[cur.next++];
    if (tok.size() != 4) ParseFail(ln, "edge line needs 3 fields");
    JointEdge edge;
    int k = 0;
    wrap(ln, [&] {
      edge.parent_id = static_cast<int>(ParseInt(tok[1]));
      edge.child_id = static_cast<int>(ParseInt(tok[2]));
      k = static_cast<int>(ParseInt(tok[3]));
      return 0;
    });
    if (k < 0 || k > 3) ParseFail(ln, "actuator count must be within [0, 3]");
    for (int a = 0; a < k; ++a) {
      if (cur.Done() || cur.lines[cur.next].second[0] != "act") {
        ParseFail(cur.Done() ? line_no : cur.lines[cur.next].first,
                  "act section truncated for edge at line " +
                      std::to_string(ln) + ": expected " + std::to_string(k) +
                      " act lines, found " + std::to_string(a));
      }
      auto& [aln, atok] = cur.lines[cur.next++];
      if (atok.size() != 7) ParseFail(aln, "act line needs 6 fields");
      wrap(aln, [&] {
        edge.actuators.push_back(
            {Vec3{ParseReal(atok[1]), ParseReal(atok[2]), ParseReal(atok[3])},
             ParseReal(atok[4]), ParseReal(atok[5]), ParseReal(atok[6])});
        return 0;
      });
    }
    graph.edges.push_back(std::move(edge));
  }
  if (!cur.Done()) {
    ParseFail(cur.lines[cur.next].first,
              "unexpected line '" + std::string(cur.lines[cur.next].second[0]) +
                  "' after declared sections");
  }
  ReassignDofs(graph);
  return graph;
}

}  // namespace mxt
