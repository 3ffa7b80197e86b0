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

#ifndef MXT_EVAL_ROLLOUT_H_
#define MXT_EVAL_ROLLOUT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mxt/env/env.h"
#include "mxt/nn/policy.h"

namespace mxt {

struct Trajectory {
  std::string env_id;
  uint64_t seed = 0;
  std::vector<std::vector<double>> joint_angles;  // steps + 1 states
  std::vector<std::vector<double>> actions;       // steps
  std::vector<std::vector<double>> distances;     // steps + 1, per goal

  const std::vector<double>& FinalDistances() const { return distances.back(); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

inline constexpr int kDefaultEvalSeeds = 64;

// Reset seeds of evaluation episodes; disjoint from the dataset streams.
std::vector<uint64_t> EvalSeeds(uint64_t base, int count = kDefaultEvalSeeds);

using ActionFn = std::function<std::vector<double>(const EnvState&)>;

// Runs min(steps, episode_length) steps.
Trajectory Rollout(const ActionFn& act, std::shared_ptr<const EnvSpec> env,
                   uint64_t seed, int steps);

// One episode per seed, stepped in lockstep so every step is one batched
// forward pass. Observations follow the policy's obs set, variant and history.
std::vector<Trajectory> RolloutPolicy(const PolicyParams& policy,
                                      std::shared_ptr<const EnvSpec> env,
                                      std::span<const uint64_t> seeds, int steps);

// Per-step attention of a transformer policy along one episode.
struct AttentionReport {
  std::vector<AttentionMaps> steps;  // [step][layer][head][0]
  // v2 only: mean over layers, heads and query rows of the probability
  // placed on goal rows.
  std::optional<std::vector<double>> goal_mass;
};

AttentionReport AttentionAlongRollout(const PolicyParams& policy,
                                      std::shared_ptr<const EnvSpec> env,
                                      uint64_t seed, int steps);

// Tensor-table bytes with one tensor per step, layer and head named
// "attn/<step>/<layer>/<head>".
std::vector<uint8_t> EncodeAttention(const AttentionReport& report);

}  // namespace mxt

#endif  // MXT_EVAL_ROLLOUT_H_
