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

#ifndef MXT_DISTILL_DATASET_H_
#define MXT_DISTILL_DATASET_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mxt/common/geometry.h"
#include "mxt/common/matrix.h"
#include "mxt/control_graph/observation_spec.h"
#include "mxt/env/env.h"

namespace mxt {

inline constexpr uint32_t kDatasetFormatVersion = 1;
inline constexpr int kDefaultTransitionsPerEnv = 12000;
// Zero-action steps kept after the expert first meets every goal.
inline constexpr int kHoldSteps = 10;

struct Transition {
  uint32_t step = 0;  // index within its episode
  Matrix observations;
  std::vector<double> actions;
  std::vector<Vec3> goals;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct EnvDataset {
  std::shared_ptr<const EnvSpec> env;
  ObservationSpec obs;
  std::vector<Transition> transitions;
};

struct TransitionDataset {
  uint32_t format_version = kDatasetFormatVersion;
  std::vector<EnvDataset> environments;

  size_t TransitionCount() const;
};

struct GenerationStats {
  std::string env_id;
  int attempts = 0;
  int successes = 0;
  int transitions = 0;

  double SuccessRate() const {
    return attempts == 0 ? 0.0 : static_cast<double>(successes) / attempts;
  }
};

// Rolls the scripted expert on fresh seeds and keeps goal-reaching episodes,
// each up to its first success plus kHoldSteps. Values are rounded to the
// file precision so an in-memory dataset equals its reloaded copy.
TransitionDataset GenerateDataset(
    std::span<const std::shared_ptr<const EnvSpec>> envs, const ObservationSpec& obs,
    double expert_gain, int transitions_per_env, uint64_t seed,
    std::vector<GenerationStats>* stats = nullptr);

std::vector<uint8_t> EncodeDataset(const TransitionDataset& dataset);
TransitionDataset DecodeDataset(std::span<const uint8_t> bytes);
void WriteDataset(const std::string& path, const TransitionDataset& dataset);
TransitionDataset ReadDataset(const std::string& path);

}  // namespace mxt

#endif  // MXT_DISTILL_DATASET_H_
