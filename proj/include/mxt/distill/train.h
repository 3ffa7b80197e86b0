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

#ifndef MXT_DISTILL_TRAIN_H_
#define MXT_DISTILL_TRAIN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mxt/control_graph/control_graph.h"
#include "mxt/distill/dataset.h"
#include "mxt/nn/autodiff.h"
#include "mxt/nn/policy.h"

namespace mxt {

struct TrainConfig {
  double learning_rate = 3e-4;
  int batch_size = 256;
  double grad_clip = 0.1;
  int steps = 5000;
  uint64_t seed = 0;
  int log_every = 100;
  int probe_size = 512;  // examples in the fixed loss probe

  void Validate() const;
};

// One control graph with the expert action scattered into slot layout.
struct Example {
  int env_index = 0;
  ControlGraph cg;
  Tensor target;  // rows x kActionSlots
};

// Builds one example per transition; history frames come from the
// preceding steps of the same episode.
std::vector<Example> BuildExamples(const TransitionDataset& dataset,
                                   CgVariant variant, int history);

// Records the forward pass and the behaviour-cloning loss: masked MSE for
// continuous heads, cross-entropy over Quantize(MuLaw(a)) for D / DA.
Var RecordBcLoss(Tape& tape, const PolicyConfig& config, const PolicyBatch& batch,
                 const Tensor& target);

PolicyBatch BatchOf(std::span<const Example* const> examples,
                    const PolicyConfig& config, Tensor* target);

// Mean loss over `examples`; throws a value error when empty.
double BcLoss(const PolicyParams& policy, std::span<const Example* const> examples);

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;

struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  int t = 0;
};

void AdamStep(ParamSet& params, const std::vector<Tensor>& grads, AdamState& state,
              double learning_rate);

// Scales `grads` so their global L2 norm is at most `max_norm`; returns the
// norm before scaling.
double ClipGlobalNorm(std::vector<Tensor>& grads, double max_norm);

struct LossPoint {
  int step = 0;
  double loss = 0.0;
};

struct TrainResult {
  // Step 0 holds the first batch loss before any update; later points hold
  // the mean batch loss of the preceding log_every steps.
  std::vector<LossPoint> curve;
  double init_loss = 0.0;   // probe loss before training
  double final_loss = 0.0;  // probe loss after training
  std::vector<double> clipped_norms;  // per step, after clipping
};

TrainResult Train(PolicyParams& policy, std::span<const Example> examples,
                  const TrainConfig& config);

// Same loop as Train, starting from a copy of `checkpoint`.
TrainResult Finetune(const PolicyParams& checkpoint, std::span<const Example> examples,
                     const TrainConfig& config, PolicyParams* tuned);

// Checks that the dataset's graphs fit `policy` before training.
void CheckCompatible(const PolicyConfig& policy, std::span<const Example> examples);

std::string LossCurveCsv(const TrainResult& result);

}  // namespace mxt

#endif  // MXT_DISTILL_TRAIN_H_
