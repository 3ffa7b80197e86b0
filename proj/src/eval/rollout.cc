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

#include "mxt/eval/rollout.h"

#include <algorithm>

#include "mxt/common/error.h"
#include "mxt/common/rng.h"
#include "mxt/control_graph/observe.h"
#include "mxt/distill/checkpoint.h"

namespace mxt {
namespace {

constexpr uint64_t kEvalStream = 0x6576616c;  // "eval"

void RecordState(Trajectory& t, const EnvState& s) {
  t.joint_angles.push_back(s.joint_angles);
  t.distances.push_back(GoalDistances(s));
}

int Horizon(const EnvSpec& env, int steps) {
  if (steps < 0) throw Error(ErrorKind::kValue, "negative rollout length");
  return std::min(steps, env.task.episode_length);
}

}  // namespace

std::vector<uint64_t> EvalSeeds(uint64_t base, int count) {
  std::vector<uint64_t> seeds;
  for (int k = 0; k < count; ++k) {
    seeds.push_back(HashCombine(HashCombine(base, kEvalStream), k));
  }
  return seeds;
}

Trajectory Rollout(const ActionFn& act, std::shared_ptr<const EnvSpec> env,
                   uint64_t seed, int steps) {
  const int horizon = Horizon(*env, steps);
  Trajectory t{env->env_id, seed, {}, {}, {}};
  EnvState state = Reset(env, seed);
  RecordState(t, state);
  for (int i = 0; i < horizon; ++i) {
    std::vector<double> a = act(state);
    if (static_cast<int>(a.size()) != env->graph.ActionDimension()) {
      throw Error(ErrorKind::kShape, env->env_id + ": policy produced " +
                                         std::to_string(a.size()) + " actions, expected " +
                                         std::to_string(env->graph.ActionDimension()));
    }
    state = Step(state, a);
    t.actions.push_back(std::move(a));
    RecordState(t, state);
  }
  return t;
}

std::vector<Trajectory> RolloutPolicy(const PolicyParams& policy,
                                      std::shared_ptr<const EnvSpec> env,
                                      std::span<const uint64_t> seeds, int steps) {
  const int horizon = Horizon(*env, steps);
  const ObservationSpec obs = ObservationSpec::Parse(policy.config.obs);
  std::vector<EnvState> states;
  std::vector<HistoryWindow> windows;
  std::vector<Trajectory> out;
  for (uint64_t seed : seeds) {
    states.push_back(Reset(env, seed));
    windows.emplace_back(policy.config.history);
    out.push_back({env->env_id, seed, {}, {}, {}});
    RecordState(out.back(), states.back());
  }
  std::vector<ControlGraph> graphs(seeds.size());
  std::vector<const ControlGraph*> ptrs(seeds.size());
  for (int i = 0; i < horizon && !seeds.empty(); ++i) {
    for (size_t k = 0; k < seeds.size(); ++k) {
      windows[k].Push(ObserveCg(states[k], obs, policy.config.cg));
      graphs[k] = windows[k].Stacked();
      ptrs[k] = &graphs[k];
    }
    std::vector<std::vector<double>> actions = ActBatch(policy, ptrs);
    for (size_t k = 0; k < seeds.size(); ++k) {
      states[k] = Step(states[k], actions[k]);
      out[k].actions.push_back(std::move(actions[k]));
      RecordState(out[k], states[k]);
    }
  }
  return out;
}

AttentionReport AttentionAlongRollout(const PolicyParams& policy,
                                      std::shared_ptr<const EnvSpec> env,
                                      uint64_t seed, int steps) {
  if (policy.config.arch != Arch::kTransformer) {
    throw Error(ErrorKind::kUnsupported, "attention export needs a transformer policy");
  }
  const int horizon = Horizon(*env, steps);
  const ObservationSpec obs = ObservationSpec::Parse(policy.config.obs);
  const bool v2 = policy.config.cg == CgVariant::kV2;
  AttentionReport report;
  if (v2) report.goal_mass.emplace();
  EnvState state = Reset(env, seed);
  HistoryWindow window(policy.config.history);
  for (int i = 0; i < horizon; ++i) {
    window.Push(ObserveCg(state, obs, policy.config.cg));
    ControlGraph cg = window.Stacked();
    AttentionMaps maps;
    Tensor slots = PredictSlots(policy, MakeBatch(cg, policy.config), &maps);
    Matrix m(slots.rows(), kActionSlots);
    m.data = slots.data;
    if (v2) {
      double mass = 0.0;
      int count = 0;
      for (const auto& layer : maps) {
        for (const auto& head : layer) {
          const Tensor& p = head[0];
          for (int r = 0; r < p.rows(); ++r) {
            for (int c = cg.n_body_nodes; c < p.cols(); ++c) mass += p(r, c);
            ++count;
          }
        }
      }
      report.goal_mass->push_back(count == 0 ? 0.0 : mass / count);
    }
    report.steps.push_back(std::move(maps));
    state = Step(state, ExtractActions(cg, m));
  }
  return report;
}

std::vector<uint8_t> EncodeAttention(const AttentionReport& report) {
  TensorTable table;
  for (size_t s = 0; s < report.steps.size(); ++s) {
    for (size_t l = 0; l < report.steps[s].size(); ++l) {
      for (size_t h = 0; h < report.steps[s][l].size(); ++h) {
        table.names.push_back("attn/" + std::to_string(s) + "/" + std::to_string(l) +
                              "/" + std::to_string(h));
        table.tensors.push_back(report.steps[s][l][h][0]);
      }
    }
  }
  return EncodeTensorTable(table);
}

}  // namespace mxt
