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

#include "mxt/distill/train.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/common/rng.h"

namespace mxt {
namespace {

Tensor ToTensor(const Matrix& m) {
  Tensor t(static_cast<int>(m.rows), static_cast<int>(m.cols));
  t.data = m.data;
  return t;
}

std::vector<Tensor> ZerosLike(const ParamSet& params) {
  std::vector<Tensor> out;
  out.reserve(params.values.size());
  for (const Tensor& v : params.values) out.emplace_back(v.rows(), v.cols());
  return out;
}

std::vector<const Example*> Pointers(std::span<const Example> examples,
                                     std::span<const size_t> indices) {
  std::vector<const Example*> out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(&examples[i]);
  return out;
}

double GlobalNorm(const std::vector<Tensor>& grads) {
  double sq = 0.0;
  for (const Tensor& g : grads) {
    for (double v : g.data) sq += v * v;
  }
  return std::sqrt(sq);
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || batch_size <= 0 || !(grad_clip > 0.0) || steps < 0 ||
      log_every <= 0 || probe_size <= 0) {
    throw Error(ErrorKind::kConfig,
                "training settings must be positive (steps may be 0)");
  }
}

std::vector<Example> BuildExamples(const TransitionDataset& dataset,
                                   CgVariant variant, int history) {
  if (history < 1) throw Error(ErrorKind::kConfig, "history must be at least 1");
  std::vector<Example> out;
  for (size_t e = 0; e < dataset.environments.size(); ++e) {
    const EnvDataset& env = dataset.environments[e];
    const auto& ts = env.transitions;
    std::vector<ControlGraph> frames;
    frames.reserve(ts.size());
    for (const Transition& t : ts) {
      std::vector<GoalInput> goals;
      for (size_t g = 0; g < t.goals.size(); ++g) {
        goals.push_back({t.goals[g], env.env->goal_nodes[g]});
      }
      frames.push_back(BuildCg(variant, t.observations, goals, env.env->graph, env.obs));
    }
    for (size_t i = 0; i < ts.size(); ++i) {
      std::vector<ControlGraph> window;
      int back = 0;
      while (back + 1 < history && back < static_cast<int>(i) &&
             ts[i - back - 1].step + back + 1 == ts[i].step) {
        ++back;
      }
      for (int k = back; k >= 0; --k) window.push_back(frames[i - k]);
      Example ex;
      ex.env_index = static_cast<int>(e);
      ex.cg = StackHistory(window, history);
      ex.target = ToTensor(ScatterActions(ex.cg, ts[i].actions));
      out.push_back(std::move(ex));
    }
  }
  return out;
}

PolicyBatch BatchOf(std::span<const Example* const> examples,
                    const PolicyConfig& config, Tensor* target) {
  if (examples.empty()) throw Error(ErrorKind::kValue, "empty batch");
  std::vector<const ControlGraph*> graphs;
  graphs.reserve(examples.size());
  size_t rows = 0;
  for (const Example* ex : examples) {
    graphs.push_back(&ex->cg);
    rows += ex->target.rows();
  }
  PolicyBatch batch = MakeBatch(graphs, config);
  if (target != nullptr) {
    *target = Tensor(static_cast<int>(rows), kActionSlots);
    size_t at = 0;
    for (const Example* ex : examples) {
      std::copy(ex->target.data.begin(), ex->target.data.end(),
                target->data.begin() + at);
      at += ex->target.size();
    }
  }
  return batch;
}

Var RecordBcLoss(Tape& tape, const PolicyConfig& config, const PolicyBatch& batch,
                 const Tensor& target) {
  Var out = Forward(tape, config, batch);
  tape.SetScope("loss");
  if (!config.Discrete()) {
    return tape.MaskedMse(out, target, batch.mask, batch.segments);
  }
  std::vector<int> classes(target.size());
  for (size_t i = 0; i < target.size(); ++i) {
    classes[i] = Quantize(MuLaw(target.data[i]), config.bins);
  }
  return tape.MaskedCrossEntropy(out, classes, batch.mask, config.bins, batch.segments);
}

double BcLoss(const PolicyParams& policy, std::span<const Example* const> examples) {
  Tensor target;
  PolicyBatch batch = BatchOf(examples, policy.config, &target);
  Tape tape(&policy.params);
  return tape.value(RecordBcLoss(tape, policy.config, batch, target))(0, 0);
}

void AdamStep(ParamSet& params, const std::vector<Tensor>& grads, AdamState& state,
              double learning_rate) {
  if (state.m.empty()) {
    state.m = ZerosLike(params);
    state.v = ZerosLike(params);
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(kAdamBeta1, state.t);
  const double c2 = 1.0 - std::pow(kAdamBeta2, state.t);
  for (size_t i = 0; i < params.values.size(); ++i) {
    std::vector<double>& p = params.values[i].data;
    const std::vector<double>& g = grads[i].data;
    std::vector<double>& m = state.m[i].data;
    std::vector<double>& v = state.v[i].data;
    for (size_t j = 0; j < p.size(); ++j) {
      m[j] = kAdamBeta1 * m[j] + (1.0 - kAdamBeta1) * g[j];
      v[j] = kAdamBeta2 * v[j] + (1.0 - kAdamBeta2) * g[j] * g[j];
      p[j] -= learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + kAdamEps);
    }
  }
}

double ClipGlobalNorm(std::vector<Tensor>& grads, double max_norm) {
  double norm = GlobalNorm(grads);
  if (norm > max_norm) {
    double scale = max_norm / norm;
    for (Tensor& g : grads) {
      for (double& v : g.data) v *= scale;
    }
  }
  return norm;
}

void CheckCompatible(const PolicyConfig& policy, std::span<const Example> examples) {
  policy.Validate();
  if (examples.empty()) throw Error(ErrorKind::kValue, "dataset is empty");
  for (const Example& ex : examples) {
    if (ex.cg.variant != policy.cg) {
      throw Error(ErrorKind::kConfig,
                  "dataset graphs are " + std::string(CgVariantName(ex.cg.variant)) +
                      ", policy expects " + std::string(CgVariantName(policy.cg)));
    }
    if (ex.cg.FeatureWidth() != policy.feature_width) {
      throw Error(ErrorKind::kConfig,
                  "graph rows have width " + std::to_string(ex.cg.FeatureWidth()) +
                      ", policy expects " + std::to_string(policy.feature_width));
    }
    bool bounded = policy.arch == Arch::kMlp ||
                   (policy.arch == Arch::kTransformer && policy.use_pe);
    if (bounded && ex.cg.NodeCount() > policy.max_nodes) {
      throw Error(ErrorKind::kConfig,
                  "graph with " + std::to_string(ex.cg.NodeCount()) +
                      " rows exceeds max_nodes " + std::to_string(policy.max_nodes));
    }
  }
}

TrainResult Train(PolicyParams& policy, std::span<const Example> examples,
                  const TrainConfig& config) {
  config.Validate();
  CheckCompatible(policy.config, examples);
  const size_t n = examples.size();
  TrainResult result;

  std::vector<size_t> probe(n);
  std::iota(probe.begin(), probe.end(), size_t{0});
  Rng probe_rng(HashCombine(config.seed, 0x70726f6265ULL));
  probe_rng.Shuffle(probe);
  probe.resize(std::min<size_t>(n, config.probe_size));
  const std::vector<const Example*> probe_set = Pointers(examples, probe);
  try {
    result.init_loss = BcLoss(policy, probe_set);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNumeric) throw;
    throw Error(ErrorKind::kNumeric, std::string("step 0: ") + e.what());
  }

  Rng rng(config.seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  rng.Shuffle(order);
  size_t cursor = 0;
  const size_t batch_size = std::min<size_t>(n, config.batch_size);
  auto next_batch = [&] {
    std::vector<size_t> idx;
    idx.reserve(batch_size);
    while (idx.size() < batch_size) {
      if (cursor == n) {
        rng.Shuffle(order);
        cursor = 0;
      }
      idx.push_back(order[cursor++]);
    }
    return Pointers(examples, idx);
  };

  AdamState adam;
  double window_sum = 0.0;
  int window_count = 0;
  if (config.steps == 0) {
    result.curve.push_back({0, BcLoss(policy, next_batch())});
  }
  for (int step = 0; step < config.steps; ++step) {
    std::vector<const Example*> batch_examples = next_batch();
    Tensor target;
    PolicyBatch batch = BatchOf(batch_examples, policy.config, &target);
    Tape tape(&policy.params);
    Var loss;
    try {
      loss = RecordBcLoss(tape, policy.config, batch, target);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNumeric) throw;
      throw Error(ErrorKind::kNumeric, "step " + std::to_string(step) + ": " + e.what());
    }
    double value = tape.value(loss)(0, 0);
    std::vector<Tensor> grads = ZerosLike(policy.params);
    tape.Backward(loss, &grads);
    for (const Tensor& g : grads) {
      if (!g.AllFinite()) {
        throw Error(ErrorKind::kNumeric,
                    "step " + std::to_string(step) + ": non-finite gradient");
      }
    }
    ClipGlobalNorm(grads, config.grad_clip);
    result.clipped_norms.push_back(GlobalNorm(grads));
    AdamStep(policy.params, grads, adam, config.learning_rate);
    if (step == 0) result.curve.push_back({0, value});
    window_sum += value;
    ++window_count;
    if ((step + 1) % config.log_every == 0) {
      result.curve.push_back({step + 1, window_sum / window_count});
      window_sum = 0.0;
      window_count = 0;
    }
  }
  result.final_loss = BcLoss(policy, probe_set);
  return result;
}

TrainResult Finetune(const PolicyParams& checkpoint, std::span<const Example> examples,
                     const TrainConfig& config, PolicyParams* tuned) {
  *tuned = checkpoint;
  return Train(*tuned, examples, config);
}

std::string LossCurveCsv(const TrainResult& result) {
  std::ostringstream out;
  out << "step,loss\n";
  for (const LossPoint& p : result.curve) {
    out << p.step << "," << FormatReal(p.loss) << "\n";
  }
  return out.str();
}

}  // namespace mxt
