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

#include "mxt/distill/dataset.h"

#include <cstring>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/common/rng.h"
#include "mxt/control_graph/observe.h"
#include "mxt/env/expert.h"
#include "mxt/morphology/morphology.h"

namespace mxt {
namespace {

constexpr char kMagic[] = "CGDS";
constexpr int kMinAttemptsBeforeGiveUp = 50;

double FilePrecision(double v) {
  volatile float f = static_cast<float>(v);
  return f;
}

void WriteFloats(ByteWriter& w, std::span<const double> values) {
  w.U32(static_cast<uint32_t>(values.size()));
  for (double v : values) w.F32(static_cast<float>(v));
}

std::vector<double> ReadFloats(ByteReader& r) {
  uint32_t n = r.U32();
  if (n > r.remaining() / 4) {
    throw Error(ErrorKind::kCorruption, "array length exceeds the file");
  }
  std::vector<double> out(n);
  for (double& v : out) v = r.F32();
  return out;
}

Transition Record(const EnvState& state, const ObservationSpec& obs,
                  const std::vector<double>& actions) {
  Transition t;
  t.step = static_cast<uint32_t>(state.step_count);
  t.observations = LocalObservations(state, obs);
  for (double& v : t.observations.data) v = FilePrecision(v);
  for (double a : actions) t.actions.push_back(FilePrecision(a));
  for (const GoalInput& g : GoalInputs(state)) {
    t.goals.push_back({FilePrecision(g.value.x), FilePrecision(g.value.y),
                       FilePrecision(g.value.z)});
  }
  return t;
}

// One expert episode. Returns the steps up to the first success plus the
// hold tail, or nothing when the goals are never met.
std::vector<Transition> ExpertEpisode(std::shared_ptr<const EnvSpec> env,
                                      const ObservationSpec& obs, double gain,
                                      uint64_t seed) {
  EnvState state = Reset(env, seed);
  std::vector<Transition> steps;
  int hold = -1;
  while (!state.Done()) {
    if (hold < 0 && AllGoalsMet(state)) hold = kHoldSteps;
    std::vector<double> action = ScriptedExpert(state, gain);
    steps.push_back(Record(state, obs, action));
    if (hold == 0) return steps;
    if (hold > 0) --hold;
    state = Step(state, action);
  }
  if (hold >= 0) return steps;
  return {};
}

}  // namespace

size_t TransitionDataset::TransitionCount() const {
  size_t n = 0;
  for (const EnvDataset& e : environments) n += e.transitions.size();
  return n;
}

TransitionDataset GenerateDataset(
    std::span<const std::shared_ptr<const EnvSpec>> envs, const ObservationSpec& obs,
    double expert_gain, int transitions_per_env, uint64_t seed,
    std::vector<GenerationStats>* stats) {
  if (transitions_per_env <= 0) {
    throw Error(ErrorKind::kValue, "transitions per environment must be positive");
  }
  TransitionDataset dataset;
  for (size_t e = 0; e < envs.size(); ++e) {
    const auto& env = envs[e];
    EnvDataset out{env, obs, {}};
    GenerationStats st{env->env_id, 0, 0, 0};
    const uint64_t env_seed = HashCombine(seed, e);
    while (static_cast<int>(out.transitions.size()) < transitions_per_env) {
      uint64_t episode_seed = HashCombine(env_seed, static_cast<uint64_t>(st.attempts));
      std::vector<Transition> steps =
          ExpertEpisode(env, obs, expert_gain, episode_seed);
      ++st.attempts;
      if (!steps.empty()) {
        ++st.successes;
        size_t room = transitions_per_env - out.transitions.size();
        if (steps.size() > room) steps.resize(room);
        for (Transition& t : steps) out.transitions.push_back(std::move(t));
      }
      int failures = st.attempts - st.successes;
      if (st.attempts >= kMinAttemptsBeforeGiveUp && 2 * failures > st.attempts &&
          static_cast<int>(out.transitions.size()) < transitions_per_env) {
        break;
      }
    }
    if (2 * (st.attempts - st.successes) > st.attempts) {
      throw Error(ErrorKind::kDataQuality,
                  env->env_id + ": the expert met the goals in only " +
                      std::to_string(st.successes) + " of " +
                      std::to_string(st.attempts) + " episodes");
    }
    st.transitions = static_cast<int>(out.transitions.size());
    if (stats != nullptr) stats->push_back(st);
    dataset.environments.push_back(std::move(out));
  }
  return dataset;
}

std::vector<uint8_t> EncodeDataset(const TransitionDataset& dataset) {
  ByteWriter w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(dataset.format_version);
  w.U32(static_cast<uint32_t>(dataset.environments.size()));
  for (const EnvDataset& e : dataset.environments) {
    w.String(e.env->env_id);
    w.String(SerializeMorphology(e.env->graph));
    w.String(SerializeTask(e.env->task));
    w.U16(e.obs.mask());
    w.U32(static_cast<uint32_t>(e.transitions.size()));
    for (const Transition& t : e.transitions) {
      w.U32(t.step);
      w.U32(static_cast<uint32_t>(t.observations.rows));
      WriteFloats(w, t.observations.data);
      WriteFloats(w, t.actions);
      std::vector<double> goals;
      for (const Vec3& g : t.goals) goals.insert(goals.end(), {g.x, g.y, g.z});
      WriteFloats(w, goals);
    }
  }
  return std::move(w.data());
}

TransitionDataset DecodeDataset(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorKind::kCorruption, "not a control graph dataset (bad magic)");
  }
  TransitionDataset dataset;
  dataset.format_version = r.U32();
  if (dataset.format_version != kDatasetFormatVersion) {
    throw Error(ErrorKind::kCorruption, "unsupported dataset version " +
                                            std::to_string(dataset.format_version));
  }
  uint32_t n_envs = r.U32();
  for (uint32_t e = 0; e < n_envs; ++e) {
    std::string env_id = r.String();
    MorphologyGraph graph = ParseMorphology(r.String());
    TaskSpec task = ParseTask(r.String());
    EnvDataset env{EnvSpec::Create(env_id, std::move(graph), std::move(task)),
                   ObservationSpec::FromMask(r.U16()), {}};
    const int n_nodes = env.env->graph.NodeCount();
    const int n_actions = env.env->graph.ActionDimension();
    const int n_goals = env.env->task.GoalCount();
    uint32_t count = r.U32();
    for (uint32_t i = 0; i < count; ++i) {
      Transition t;
      t.step = r.U32();
      uint32_t rows = r.U32();
      std::vector<double> obs = ReadFloats(r);
      if (static_cast<int>(rows) != n_nodes ||
          obs.size() != static_cast<size_t>(rows) * env.obs.width()) {
        throw Error(ErrorKind::kCorruption, env_id + ": observation block has the wrong size");
      }
      t.observations = Matrix(rows, env.obs.width());
      t.observations.data = std::move(obs);
      t.actions = ReadFloats(r);
      if (static_cast<int>(t.actions.size()) != n_actions) {
        throw Error(ErrorKind::kCorruption, env_id + ": action length " +
                                                std::to_string(t.actions.size()) +
                                                " != " + std::to_string(n_actions));
      }
      std::vector<double> goals = ReadFloats(r);
      if (static_cast<int>(goals.size()) != 3 * n_goals) {
        throw Error(ErrorKind::kCorruption, env_id + ": goal block has the wrong size");
      }
      for (int g = 0; g < n_goals; ++g) {
        t.goals.push_back({goals[3 * g], goals[3 * g + 1], goals[3 * g + 2]});
      }
      env.transitions.push_back(std::move(t));
    }
    dataset.environments.push_back(std::move(env));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorKind::kCorruption, "trailing bytes after the last environment");
  }
  return dataset;
}

void WriteDataset(const std::string& path, const TransitionDataset& dataset) {
  WriteFileBytes(path, EncodeDataset(dataset));
}

TransitionDataset ReadDataset(const std::string& path) {
  return DecodeDataset(ReadFileBytes(path));
}

}  // namespace mxt
