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

#ifndef MXT_CONTROL_GRAPH_CONTROL_GRAPH_H_
#define MXT_CONTROL_GRAPH_CONTROL_GRAPH_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "mxt/common/geometry.h"
#include "mxt/common/matrix.h"
#include "mxt/control_graph/observation_spec.h"
#include "mxt/morphology/morphology.h"

namespace mxt {

enum class CgVariant { kV1, kV2 };

std::string_view CgVariantName(CgVariant variant);
CgVariant ParseCgVariant(std::string_view name);

inline constexpr int kMaxGoals = 3;
inline constexpr int kGoalWidth = 3;
inline constexpr int kActionSlots = 3;

// A goal value padded to three coordinates and the body row it targets.
struct GoalInput {
  Vec3 value;
  int node = 0;
};

// Row layout per frame:
//   v1: [obs | goal slots (3 per goal, kMaxGoals goals) | indicators]
//   v2: [obs | indicators]; goal rows follow the body rows and hold the goal
//       value in the p slots (or the first obs slots when p is disabled).
// With history, frames are concatenated oldest first.
struct ControlGraph {
  CgVariant variant = CgVariant::kV1;
  Matrix node_features;
  int n_body_nodes = 0;
  int n_goal_nodes = 0;
  int n_goals = 0;
  int obs_width = 0;
  int frame_width = 0;
  int history_depth = 1;
  Matrix target_indicator;  // rows x kMaxGoals
  Matrix action_mask;       // rows x kActionSlots
  std::vector<std::array<int, kActionSlots>> actuator_map;  // dof or -1
  std::vector<int> parents;  // tree parent per row; -1 for root and goal rows

  int NodeCount() const { return static_cast<int>(node_features.rows); }
  int FeatureWidth() const { return static_cast<int>(node_features.cols); }
  int IndicatorOffset() const;  // within a frame
  bool IsIndicatorColumn(int col) const;

  friend bool operator==(const ControlGraph&, const ControlGraph&) = default;
};

ControlGraph BuildCgV1(const Matrix& observations, std::span<const GoalInput> goals,
                       const MorphologyGraph& graph,
                       const ObservationSpec& spec);
ControlGraph BuildCgV2(const Matrix& observations, std::span<const GoalInput> goals,
                       const MorphologyGraph& graph,
                       const ObservationSpec& spec);
ControlGraph BuildCg(CgVariant variant, const Matrix& observations,
                     std::span<const GoalInput> goals,
                     const MorphologyGraph& graph, const ObservationSpec& spec);

// `frames` is oldest first. Keeps the newest `depth` frames and zero-fills
// the missing older ones.
ControlGraph StackHistory(std::span<const ControlGraph> frames, int depth);

// Scatters per-row slot outputs (rows x kActionSlots) into the morphology's
// action vector.
std::vector<double> ExtractActions(const ControlGraph& cg, const Matrix& slots);
// Inverse of ExtractActions; unmapped slots are 0.
Matrix ScatterActions(const ControlGraph& cg, std::span<const double> actions);

inline constexpr double kMuLawMu = 100.0;
inline constexpr double kMuLawM = 256.0;
inline constexpr int kDefaultBins = 1024;

// sgn(x) log(|x| mu + 1) / log(M mu + 1), with |x| clamped to M.
double MuLaw(double x);
double MuLawInverse(double y);

enum class DequantizeMode { kCenter, kAverageWindow };

// Bin k covers [-1 + 2k/n, -1 + 2(k+1)/n); 1.0 goes to the last bin and
// values outside [-1, 1] are clamped.
int Quantize(double y, int n_bins = kDefaultBins);
double Dequantize(int bin, DequantizeMode mode = DequantizeMode::kCenter,
                  int n_bins = kDefaultBins);

struct TokenGrid {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<int> tokens;

  int operator()(size_t r, size_t c) const { return tokens[r * cols + c]; }

  friend bool operator==(const TokenGrid&, const TokenGrid&) = default;
};

// Feature entries go through MuLaw then Quantize; indicator columns are
// quantized raw.
TokenGrid TokenizeCg(const ControlGraph& cg, int n_bins = kDefaultBins);
Matrix DetokenizeCg(const TokenGrid& grid, const ControlGraph& layout,
                    DequantizeMode mode = DequantizeMode::kCenter,
                    int n_bins = kDefaultBins);
// Value a token stands for in column `col` of `layout`.
double DetokenizeValue(int token, const ControlGraph& layout, int col,
                       DequantizeMode mode = DequantizeMode::kCenter,
                       int n_bins = kDefaultBins);

}  // namespace mxt

#endif  // MXT_CONTROL_GRAPH_CONTROL_GRAPH_H_
