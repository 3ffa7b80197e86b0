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

#ifndef MXT_NN_POLICY_H_
#define MXT_NN_POLICY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mxt/control_graph/control_graph.h"
#include "mxt/nn/autodiff.h"
#include "mxt/nn/tensor.h"

namespace mxt {

enum class Arch { kMlp, kGnn, kTransformer };
enum class TokenMode { kNone, kD, kDA, kC };

std::string_view ArchName(Arch arch);
Arch ParseArch(std::string_view name);
std::string_view TokenModeName(TokenMode mode);
TokenMode ParseTokenMode(std::string_view name);

struct PolicyConfig {
  Arch arch = Arch::kTransformer;
  CgVariant cg = CgVariant::kV2;
  TokenMode token = TokenMode::kNone;
  int embed = 256;
  int attn_hidden = 512;
  int heads = 2;
  int layers = 3;
  int mlp_hidden = 1024;
  int mlp_layers = 2;
  int gnn_hidden = 256;
  int gnn_layers = 3;
  bool use_pe = true;
  bool use_embed_ln = false;
  int max_nodes = 32;
  int feature_width = 0;  // per-row width including stacked history
  int history = 1;
  int bins = kDefaultBins;
  std::string obs = "base_set";

  // "transformer_tokenized" when a token mode is set.
  std::string ArchTag() const;
  bool Discrete() const { return token == TokenMode::kD || token == TokenMode::kDA; }
  int OutputWidth() const { return Discrete() ? kActionSlots * bins : kActionSlots; }

  // Throws a config error for inconsistent dimensions.
  void Validate() const;
  // One `key = value` per line, fixed key order.
  std::string Serialize() const;
  static PolicyConfig Parse(std::string_view text);

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct PolicyParams {
  PolicyConfig config;
  ParamSet params;
};

PolicyParams InitParams(const PolicyConfig& config, uint64_t seed);

// Rows of several control graphs stacked; segment s holds graph s.
struct PolicyBatch {
  CgVariant variant = CgVariant::kV1;
  Segments segments;
  Tensor features;  // rows x feature_width
  Tensor mask;      // rows x kActionSlots
  std::vector<std::vector<int>> neighbors;  // tree neighbours, global rows
};

// Tokenized configs see the centre-detokenized features.
PolicyBatch MakeBatch(std::span<const ControlGraph* const> graphs,
                      const PolicyConfig& config);
PolicyBatch MakeBatch(const ControlGraph& graph, const PolicyConfig& config);
// Token input for the tokenized transformer; `layout` supplies the
// indicator columns.
PolicyBatch MakeTokenBatch(const TokenGrid& grid, const ControlGraph& layout,
                           const PolicyConfig& config);

// Records the network on `tape`. Output is rows x OutputWidth(): masked tanh
// slots for continuous heads, raw logits for D / DA. When `maps` is non-null
// the attention probabilities are stored as [layer][head][segment].
Var Forward(Tape& tape, const PolicyConfig& config, const PolicyBatch& batch,
            AttentionMaps* maps = nullptr);

// Per-row action slots (rows x kActionSlots) with masked slots set to 0.
Tensor DecodeSlots(const PolicyConfig& config, const Tensor& output,
                   const Tensor& mask);

// Convenience inference on one or several graphs.
Tensor PredictSlots(const PolicyParams& policy, const PolicyBatch& batch,
                    AttentionMaps* maps = nullptr);
std::vector<double> Act(const PolicyParams& policy, const ControlGraph& graph);
std::vector<std::vector<double>> ActBatch(
    const PolicyParams& policy, std::span<const ControlGraph* const> graphs);

}  // namespace mxt

#endif  // MXT_NN_POLICY_H_
