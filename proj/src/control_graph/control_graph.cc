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

#include "mxt/control_graph/control_graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mxt/common/error.h"

namespace mxt {
namespace {

void CheckInputs(const Matrix& obs, std::span<const GoalInput> goals,
                 const MorphologyGraph& graph, const ObservationSpec& spec) {
  if (static_cast<int>(obs.rows) != graph.NodeCount() ||
      static_cast<int>(obs.cols) != spec.width()) {
    throw Error(ErrorKind::kShape,
                "observations are " + std::to_string(obs.rows) + "x" +
                    std::to_string(obs.cols) + ", expected " +
                    std::to_string(graph.NodeCount()) + "x" +
                    std::to_string(spec.width()));
  }
  if (goals.size() > static_cast<size_t>(kMaxGoals)) {
    throw Error(ErrorKind::kValue, "at most " + std::to_string(kMaxGoals) +
                                       " goals, got " +
                                       std::to_string(goals.size()));
  }
  for (size_t g = 0; g < goals.size(); ++g) {
    if (goals[g].node < 0 || goals[g].node >= graph.NodeCount()) {
      throw Error(ErrorKind::kIndex, "goal " + std::to_string(g) +
                                         " targets node " +
                                         std::to_string(goals[g].node) +
                                         " of a " +
                                         std::to_string(graph.NodeCount()) +
                                         "-node graph");
    }
  }
}

void FillActuators(ControlGraph& cg, const MorphologyGraph& graph) {
  int rows = cg.NodeCount();
  cg.action_mask = Matrix(rows, kActionSlots);
  cg.actuator_map.assign(rows, {-1, -1, -1});
  for (const JointEdge& e : graph.edges) {
    const ModuleNode& child = graph.nodes[e.child_id];
    for (size_t k = 0; k < e.actuators.size(); ++k) {
      cg.actuator_map[e.child_id][k] = child.dof_index + static_cast<int>(k);
      cg.action_mask(e.child_id, k) = 1.0;
    }
  }
}

ControlGraph Skeleton(CgVariant variant, const Matrix& obs,
                      std::span<const GoalInput> goals,
                      const MorphologyGraph& graph,
                      const ObservationSpec& spec, int goal_rows,
                      int frame_width) {
  ControlGraph cg;
  cg.variant = variant;
  cg.n_body_nodes = graph.NodeCount();
  cg.n_goal_nodes = goal_rows;
  cg.n_goals = static_cast<int>(goals.size());
  cg.obs_width = spec.width();
  cg.frame_width = frame_width;
  int rows = cg.n_body_nodes + goal_rows;
  cg.node_features = Matrix(rows, frame_width);
  cg.target_indicator = Matrix(rows, kMaxGoals);
  for (int r = 0; r < cg.n_body_nodes; ++r) {
    std::copy(obs.Row(r).begin(), obs.Row(r).end(),
              cg.node_features.Row(r).begin());
  }
  FillActuators(cg, graph);
  cg.parents.assign(rows, -1);
  for (int r = 0; r < cg.n_body_nodes; ++r) cg.parents[r] = graph.Parent(r);
  return cg;
}

}  // namespace

std::string_view CgVariantName(CgVariant variant) {
  return variant == CgVariant::kV1 ? "v1" : "v2";
}

CgVariant ParseCgVariant(std::string_view name) {
  if (name == "v1") return CgVariant::kV1;
  if (name == "v2") return CgVariant::kV2;
  throw Error(ErrorKind::kConfig, "unknown control graph '" +
                                      std::string(name) + "' (v1 or v2)");
}

int ControlGraph::IndicatorOffset() const {
  return variant == CgVariant::kV1 ? obs_width + kGoalWidth * kMaxGoals
                                   : obs_width;
}

bool ControlGraph::IsIndicatorColumn(int col) const {
  int c = col % frame_width;
  int lo = IndicatorOffset();
  return c >= lo && c < lo + kMaxGoals;
}

ControlGraph BuildCgV1(const Matrix& observations,
                       std::span<const GoalInput> goals,
                       const MorphologyGraph& graph,
                       const ObservationSpec& spec) {
  CheckInputs(observations, goals, graph, spec);
  int width = spec.width() + kGoalWidth * kMaxGoals + kMaxGoals;
  ControlGraph cg =
      Skeleton(CgVariant::kV1, observations, goals, graph, spec, 0, width);
  int ind = cg.IndicatorOffset();
  for (size_t g = 0; g < goals.size(); ++g) {
    int row = goals[g].node;
    int slot = spec.width() + kGoalWidth * static_cast<int>(g);
    for (int k = 0; k < kGoalWidth; ++k) {
      cg.node_features(row, slot + k) = goals[g].value[k];
    }
    cg.node_features(row, ind + g) = 1.0;
    cg.target_indicator(row, g) = 1.0;
  }
  return cg;
}

ControlGraph BuildCgV2(const Matrix& observations,
                       std::span<const GoalInput> goals,
                       const MorphologyGraph& graph,
                       const ObservationSpec& spec) {
  CheckInputs(observations, goals, graph, spec);
  int goal_rows = static_cast<int>(goals.size());
  ControlGraph cg = Skeleton(CgVariant::kV2, observations, goals, graph, spec,
                             goal_rows, spec.width() + kMaxGoals);
  int ind = cg.IndicatorOffset();
  int p = spec.Has(ObsFlag::kP) ? spec.Offset(ObsFlag::kP) : 0;
  int p_width = std::min(kGoalWidth, spec.width() - p);
  for (int g = 0; g < goal_rows; ++g) {
    int goal_row = cg.n_body_nodes + g;
    for (int k = 0; k < p_width; ++k) {
      cg.node_features(goal_row, p + k) = goals[g].value[k];
    }
    for (int row : {goals[g].node, goal_row}) {
      cg.node_features(row, ind + g) = 1.0;
      cg.target_indicator(row, g) = 1.0;
    }
  }
  return cg;
}

ControlGraph BuildCg(CgVariant variant, const Matrix& observations,
                     std::span<const GoalInput> goals,
                     const MorphologyGraph& graph,
                     const ObservationSpec& spec) {
  return variant == CgVariant::kV1
             ? BuildCgV1(observations, goals, graph, spec)
             : BuildCgV2(observations, goals, graph, spec);
}

ControlGraph StackHistory(std::span<const ControlGraph> frames, int depth) {
  if (depth < 1) {
    throw Error(ErrorKind::kValue,
                "history depth must be >= 1, got " + std::to_string(depth));
  }
  if (frames.empty()) throw Error(ErrorKind::kShape, "no frames to stack");
  const ControlGraph& newest = frames.back();
  if (newest.history_depth != 1) {
    throw Error(ErrorKind::kShape, "frames are already stacked");
  }
  for (const ControlGraph& f : frames) {
    if (f.variant != newest.variant || f.NodeCount() != newest.NodeCount() ||
        f.FeatureWidth() != newest.FeatureWidth() || f.history_depth != 1) {
      throw Error(ErrorKind::kShape,
                  "history frames differ in shape or variant");
    }
  }
  ControlGraph out = newest;
  const size_t width = newest.node_features.cols;
  out.history_depth = depth;
  out.node_features = Matrix(newest.node_features.rows, width * depth);
  int available = std::min<int>(depth, static_cast<int>(frames.size()));
  for (int i = 0; i < available; ++i) {
    const ControlGraph& f = frames[frames.size() - available + i];
    size_t block = static_cast<size_t>(depth - available + i) * width;
    for (size_t r = 0; r < out.node_features.rows; ++r) {
      std::copy(f.node_features.Row(r).begin(), f.node_features.Row(r).end(),
                out.node_features.Row(r).begin() + block);
    }
  }
  return out;
}

std::vector<double> ExtractActions(const ControlGraph& cg, const Matrix& slots) {
  if (slots.rows != static_cast<size_t>(cg.NodeCount()) ||
      slots.cols != static_cast<size_t>(kActionSlots)) {
    throw Error(ErrorKind::kShape, "slot output must be " +
                                       std::to_string(cg.NodeCount()) + "x" +
                                       std::to_string(kActionSlots));
  }
  int dofs = 0;
  for (const auto& row : cg.actuator_map) {
    for (int d : row) dofs = std::max(dofs, d + 1);
  }
  std::vector<double> actions(dofs, 0.0);
  for (size_t r = 0; r < slots.rows; ++r) {
    for (int k = 0; k < kActionSlots; ++k) {
      int d = cg.actuator_map[r][k];
      if (d >= 0) actions[d] = slots(r, k);
    }
  }
  return actions;
}

Matrix ScatterActions(const ControlGraph& cg, std::span<const double> actions) {
  Matrix slots(cg.NodeCount(), kActionSlots);
  for (int r = 0; r < cg.NodeCount(); ++r) {
    for (int k = 0; k < kActionSlots; ++k) {
      int d = cg.actuator_map[r][k];
      if (d < 0) continue;
      if (d >= static_cast<int>(actions.size())) {
        throw Error(ErrorKind::kShape,
                    "action vector has " + std::to_string(actions.size()) +
                        " entries, dof " + std::to_string(d) + " needed");
      }
      slots(r, k) = actions[d];
    }
  }
  return slots;
}

double MuLaw(double x) {
  double a = std::min(std::abs(x), kMuLawM);
  double y = std::log1p(a * kMuLawMu) / std::log1p(kMuLawM * kMuLawMu);
  return x < 0 ? -y : (x > 0 ? y : 0.0);
}

double MuLawInverse(double y) {
  double a = std::min(std::abs(y), 1.0);
  double x = std::expm1(a * std::log1p(kMuLawM * kMuLawMu)) / kMuLawMu;
  return y < 0 ? -x : (y > 0 ? x : 0.0);
}

int Quantize(double y, int n_bins) {
  if (n_bins < 2) {
    throw Error(ErrorKind::kValue, "need at least 2 bins");
  }
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::kValue, "cannot quantize a non-finite value");
  }
  double k = std::floor((std::clamp(y, -1.0, 1.0) + 1.0) * n_bins / 2.0);
  return std::clamp(static_cast<int>(k), 0, n_bins - 1);
}

double Dequantize(int bin, DequantizeMode mode, int n_bins) {
  if (n_bins < 2) throw Error(ErrorKind::kValue, "need at least 2 bins");
  if (bin < 0 || bin >= n_bins) {
    throw Error(ErrorKind::kIndex, "bin " + std::to_string(bin) +
                                       " outside [0, " +
                                       std::to_string(n_bins) + ")");
  }
  auto center = [n_bins](int k) {
    return -1.0 + (2.0 * k + 1.0) / n_bins;
  };
  if (mode == DequantizeMode::kCenter) return center(bin);
  int lo = std::max(bin - 1, 0);
  int hi = std::min(bin + 1, n_bins - 1);
  double sum = 0.0;
  for (int k = lo; k <= hi; ++k) sum += center(k);
  return sum / (hi - lo + 1);
}

TokenGrid TokenizeCg(const ControlGraph& cg, int n_bins) {
  TokenGrid grid{cg.node_features.rows, cg.node_features.cols, {}};
  grid.tokens.resize(cg.node_features.data.size());
  for (size_t r = 0; r < grid.rows; ++r) {
    for (size_t c = 0; c < grid.cols; ++c) {
      double v = cg.node_features(r, c);
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kValue, "non-finite feature at row " +
                                           std::to_string(r) + ", column " +
                                           std::to_string(c));
      }
      bool raw = cg.IsIndicatorColumn(static_cast<int>(c));
      grid.tokens[r * grid.cols + c] = Quantize(raw ? v : MuLaw(v), n_bins);
    }
  }
  return grid;
}

double DetokenizeValue(int token, const ControlGraph& layout, int col,
                       DequantizeMode mode, int n_bins) {
  double y = Dequantize(token, mode, n_bins);
  return layout.IsIndicatorColumn(col) ? y : MuLawInverse(y);
}

Matrix DetokenizeCg(const TokenGrid& grid, const ControlGraph& layout,
                    DequantizeMode mode, int n_bins) {
  Matrix out(grid.rows, grid.cols);
  for (size_t r = 0; r < grid.rows; ++r) {
    for (size_t c = 0; c < grid.cols; ++c) {
      out(r, c) = DetokenizeValue(grid(r, c), layout, static_cast<int>(c),
                                  mode, n_bins);
    }
  }
  return out;
}

}  // namespace mxt
