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

#include "mxt/nn/policy.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/common/rng.h"

namespace mxt {
namespace {

Tensor Glorot(int fan_in, int fan_out, Rng& rng) {
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor t(fan_in, fan_out);
  for (double& v : t.data) v = rng.Uniform(-limit, limit);
  return t;
}

void AddLinear(ParamSet& ps, const std::string& prefix, int in, int out,
               Rng& rng, const std::string& w = "w", const std::string& b = "b") {
  ps.Add(prefix + "/" + w, Glorot(in, out, rng));
  ps.Add(prefix + "/" + b, Tensor(1, out));
}

void AddNorm(ParamSet& ps, const std::string& prefix, int width) {
  ps.Add(prefix + "/gamma", Tensor(1, width, 1.0));
  ps.Add(prefix + "/beta", Tensor(1, width));
}

std::string LayerName(int l) { return "layer" + std::to_string(l); }

bool ParseFlag(std::string_view key, std::string_view value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw Error(ErrorKind::kConfig, "bad value '" + std::string(value) +
                                      "' for " + std::string(key) +
                                      " (on or off)");
}

int ParsePositive(std::string_view key, std::string_view value) {
  long long v = 0;
  try {
    v = ParseInt(value);
  } catch (const Error&) {
    throw Error(ErrorKind::kConfig, "bad integer '" + std::string(value) +
                                        "' for " + std::string(key));
  }
  if (v < 0 || v > (1 << 30)) {
    throw Error(ErrorKind::kConfig, std::string(key) + " out of range");
  }
  return static_cast<int>(v);
}

class Net {
 public:
  Net(Tape& tape, const PolicyConfig& config, const PolicyBatch& batch)
      : t_(tape), config_(config), batch_(batch) {}

  Var Linear(Var x, const std::string& prefix, const std::string& w = "w",
             const std::string& b = "b") {
    return t_.AddBias(t_.MatMul(x, t_.Param(prefix + "/" + w)),
                      t_.Param(prefix + "/" + b));
  }

  Var Norm(Var x, const std::string& prefix) {
    return t_.LayerNorm(x, t_.Param(prefix + "/gamma"), t_.Param(prefix + "/beta"));
  }

  Var Mlp() {
    const int segs = batch_.segments.Count();
    const int width = config_.feature_width;
    Tensor flat(segs, config_.max_nodes * width);
    std::vector<int> src_row(batch_.segments.TotalRows());
    std::vector<int> src_col(src_row.size());
    for (int g = 0; g < segs; ++g) {
      if (batch_.segments.Size(g) > config_.max_nodes) {
        throw Error(ErrorKind::kShape,
                    "graph with " + std::to_string(batch_.segments.Size(g)) +
                        " rows is wider than the configured " +
                        std::to_string(config_.max_nodes));
      }
      for (int i = 0; i < batch_.segments.Size(g); ++i) {
        int r = batch_.segments.Begin(g) + i;
        auto row = batch_.features.Row(r);
        std::copy(row.begin(), row.end(), flat.Row(g).begin() + i * width);
        src_row[r] = g;
        src_col[r] = i * kActionSlots;
      }
    }
    Var h = t_.Constant(std::move(flat));
    for (int i = 0; i < config_.mlp_layers; ++i) {
      t_.SetScope("mlp/hidden" + std::to_string(i));
      h = t_.Relu(Linear(h, "mlp", "w" + std::to_string(i), "b" + std::to_string(i)));
    }
    t_.SetScope("mlp/out");
    std::string last = std::to_string(config_.mlp_layers);
    Var out = t_.Tanh(Linear(h, "mlp", "w" + last, "b" + last));
    out = t_.Gather(out, src_row, src_col, kActionSlots);
    return t_.MulConst(out, batch_.mask);
  }

  Var Gnn(Var s) {
    if (batch_.variant != CgVariant::kV1) {
      throw Error(ErrorKind::kUnsupported,
                  "the GNN policy reads v1 control graphs only");
    }
    t_.SetScope("gnn/in");
    Var h = Linear(s, "gnn", "in_w", "in_b");
    for (int r = 0; r < config_.gnn_layers; ++r) {
      std::string p = "gnn/r" + std::to_string(r);
      t_.SetScope(p);
      Var self = t_.MatMul(h, t_.Param(p + "/w_self"));
      Var msg = t_.MatMul(t_.NeighborSum(h, batch_.neighbors), t_.Param(p + "/w_msg"));
      h = t_.Relu(t_.AddBias(t_.Add(self, msg), t_.Param(p + "/b")));
    }
    t_.SetScope("decode");
    return t_.MulConst(t_.Tanh(Linear(h, "decode")), batch_.mask);
  }

  Var Transformer(Var s, AttentionMaps* maps) {
    t_.SetScope("embed");
    Var z = t_.Relu(Linear(s, "embed"));
    if (config_.use_embed_ln) {
      t_.SetScope("embed_ln");
      z = Norm(z, "embed_ln");
    }
    if (config_.use_pe) {
      t_.SetScope("pe");
      z = t_.AddSegmentRows(z, t_.Param("pe"), batch_.segments);
    }
    if (maps != nullptr) maps->assign(config_.layers, {});
    for (int l = 0; l < config_.layers; ++l) {
      std::string p = LayerName(l);
      t_.SetScope(p + "/attention");
      Var q = Linear(z, p, "wq", "bq");
      Var k = Linear(z, p, "wk", "bk");
      Var v = Linear(z, p, "wv", "bv");
      Var a = t_.SegmentAttention(q, k, v, batch_.segments, config_.heads,
                                  maps != nullptr ? &(*maps)[l] : nullptr);
      Var z1 = Norm(t_.Add(Linear(a, p, "wo", "bo"), z), p + "/ln1");
      t_.SetScope(p + "/mlp");
      Var m = Linear(t_.Relu(Linear(z1, p, "w1", "b1")), p, "w2", "b2");
      z = Norm(t_.Add(m, z1), p + "/ln2");
    }
    t_.SetScope("decode");
    Var out = Linear(t_.ConcatCols({z, s}), "decode");
    if (config_.Discrete()) return out;
    return t_.MulConst(t_.Tanh(out), batch_.mask);
  }

 private:
  Tape& t_;
  const PolicyConfig& config_;
  const PolicyBatch& batch_;
};

void AppendGraph(PolicyBatch& batch, const ControlGraph& cg, const Matrix& features,
                 const PolicyConfig& config) {
  if (static_cast<int>(features.cols) != config.feature_width) {
    throw Error(ErrorKind::kShape,
                "control graph rows have width " + std::to_string(features.cols) +
                    ", policy expects " + std::to_string(config.feature_width));
  }
  const int base = batch.segments.TotalRows();
  const int n = cg.NodeCount();
  batch.segments.offsets.push_back(base + n);
  batch.neighbors.resize(base + n);
  for (int r = 0; r < n; ++r) {
    int p = r < static_cast<int>(cg.parents.size()) ? cg.parents[r] : -1;
    if (p < 0) continue;
    batch.neighbors[base + r].push_back(base + p);
    batch.neighbors[base + p].push_back(base + r);
  }
  batch.features.data.insert(batch.features.data.end(), features.data.begin(),
                             features.data.end());
  batch.features.shape[0] += n;
  batch.mask.data.insert(batch.mask.data.end(), cg.action_mask.data.begin(),
                         cg.action_mask.data.end());
  batch.mask.shape[0] += n;
}

PolicyBatch EmptyBatch(const PolicyConfig& config, CgVariant variant) {
  PolicyBatch batch;
  batch.variant = variant;
  batch.features = Tensor(0, config.feature_width);
  batch.mask = Tensor(0, kActionSlots);
  return batch;
}

Matrix Detokenized(const ControlGraph& cg, const PolicyConfig& config) {
  return DetokenizeCg(TokenizeCg(cg, config.bins), cg, DequantizeMode::kCenter,
                      config.bins);
}

}  // namespace

std::string_view ArchName(Arch arch) {
  switch (arch) {
    case Arch::kMlp: return "mlp";
    case Arch::kGnn: return "gnn";
    case Arch::kTransformer: return "transformer";
  }
  return "?";
}

Arch ParseArch(std::string_view name) {
  if (name == "mlp") return Arch::kMlp;
  if (name == "gnn") return Arch::kGnn;
  if (name == "transformer") return Arch::kTransformer;
  throw Error(ErrorKind::kConfig, "unknown architecture '" + std::string(name) + "'");
}

std::string_view TokenModeName(TokenMode mode) {
  switch (mode) {
    case TokenMode::kNone: return "none";
    case TokenMode::kD: return "d";
    case TokenMode::kDA: return "da";
    case TokenMode::kC: return "c";
  }
  return "?";
}

TokenMode ParseTokenMode(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "none") return TokenMode::kNone;
  if (lower == "d") return TokenMode::kD;
  if (lower == "da") return TokenMode::kDA;
  if (lower == "c") return TokenMode::kC;
  throw Error(ErrorKind::kConfig, "unknown token variant '" + std::string(name) + "'");
}

std::string PolicyConfig::ArchTag() const {
  if (arch == Arch::kTransformer && token != TokenMode::kNone) {
    return "transformer_tokenized";
  }
  return std::string(ArchName(arch));
}

void PolicyConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::kConfig, what);
  };
  require(feature_width > 0, "feature_width must be positive");
  require(max_nodes > 0, "max_nodes must be positive");
  require(history > 0, "history must be positive");
  require(bins >= 2, "bins must be at least 2");
  switch (arch) {
    case Arch::kMlp:
      require(mlp_hidden > 0 && mlp_layers > 0, "mlp dimensions must be positive");
      break;
    case Arch::kGnn:
      require(gnn_hidden > 0 && gnn_layers > 0, "gnn dimensions must be positive");
      require(cg == CgVariant::kV1, "the GNN policy pairs with control graph v1");
      break;
    case Arch::kTransformer:
      require(embed > 0 && attn_hidden > 0 && heads > 0 && layers > 0,
              "transformer dimensions must be positive");
      require(embed % heads == 0, "embed " + std::to_string(embed) +
                                      " is not divisible by " +
                                      std::to_string(heads) + " heads");
      break;
  }
  require(token == TokenMode::kNone || arch == Arch::kTransformer,
          "token variants need the transformer");
}

std::string PolicyConfig::Serialize() const {
  std::ostringstream out;
  out << "arch = " << ArchName(arch) << "\n"
      << "cg = " << CgVariantName(cg) << "\n"
      << "token = " << TokenModeName(token) << "\n"
      << "embed = " << embed << "\n"
      << "attn_hidden = " << attn_hidden << "\n"
      << "heads = " << heads << "\n"
      << "layers = " << layers << "\n"
      << "mlp_hidden = " << mlp_hidden << "\n"
      << "mlp_layers = " << mlp_layers << "\n"
      << "gnn_hidden = " << gnn_hidden << "\n"
      << "gnn_layers = " << gnn_layers << "\n"
      << "use_pe = " << (use_pe ? "on" : "off") << "\n"
      << "use_embed_ln = " << (use_embed_ln ? "on" : "off") << "\n"
      << "max_nodes = " << max_nodes << "\n"
      << "feature_width = " << feature_width << "\n"
      << "history = " << history << "\n"
      << "bins = " << bins << "\n"
      << "obs = " << obs << "\n";
  return out.str();
}

PolicyConfig PolicyConfig::Parse(std::string_view text) {
  PolicyConfig c;
  for (const std::string& raw : SplitString(text, '\n')) {
    std::string_view line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kConfig, "expected key = value, got '" +
                                          std::string(line) + "'");
    }
    std::string_view key = Trim(line.substr(0, eq));
    std::string_view value = Trim(line.substr(eq + 1));
    if (key == "arch") c.arch = ParseArch(value);
    else if (key == "cg") {
      try {
        c.cg = ParseCgVariant(value);
      } catch (const Error& e) {
        throw Error(ErrorKind::kConfig, e.what());
      }
    }
    else if (key == "token") c.token = ParseTokenMode(value);
    else if (key == "embed") c.embed = ParsePositive(key, value);
    else if (key == "attn_hidden") c.attn_hidden = ParsePositive(key, value);
    else if (key == "heads") c.heads = ParsePositive(key, value);
    else if (key == "layers") c.layers = ParsePositive(key, value);
    else if (key == "mlp_hidden") c.mlp_hidden = ParsePositive(key, value);
    else if (key == "mlp_layers") c.mlp_layers = ParsePositive(key, value);
    else if (key == "gnn_hidden") c.gnn_hidden = ParsePositive(key, value);
    else if (key == "gnn_layers") c.gnn_layers = ParsePositive(key, value);
    else if (key == "use_pe") c.use_pe = ParseFlag(key, value);
    else if (key == "use_embed_ln") c.use_embed_ln = ParseFlag(key, value);
    else if (key == "max_nodes") c.max_nodes = ParsePositive(key, value);
    else if (key == "feature_width") c.feature_width = ParsePositive(key, value);
    else if (key == "history") c.history = ParsePositive(key, value);
    else if (key == "bins") c.bins = ParsePositive(key, value);
    else if (key == "obs") c.obs = std::string(value);
    else throw Error(ErrorKind::kConfig, "unknown policy key '" + std::string(key) + "'");
  }
  return c;
}

PolicyParams InitParams(const PolicyConfig& config, uint64_t seed) {
  config.Validate();
  PolicyParams out{config, {}};
  ParamSet& ps = out.params;
  Rng rng(seed);
  const int f = config.feature_width;
  switch (config.arch) {
    case Arch::kMlp: {
      int in = config.max_nodes * f;
      for (int i = 0; i < config.mlp_layers; ++i) {
        AddLinear(ps, "mlp", in, config.mlp_hidden, rng, "w" + std::to_string(i),
                  "b" + std::to_string(i));
        in = config.mlp_hidden;
      }
      std::string last = std::to_string(config.mlp_layers);
      AddLinear(ps, "mlp", in, config.max_nodes * kActionSlots, rng, "w" + last,
                "b" + last);
      break;
    }
    case Arch::kGnn: {
      const int g = config.gnn_hidden;
      AddLinear(ps, "gnn", f, g, rng, "in_w", "in_b");
      for (int r = 0; r < config.gnn_layers; ++r) {
        std::string p = "gnn/r" + std::to_string(r);
        ps.Add(p + "/w_self", Glorot(g, g, rng));
        ps.Add(p + "/w_msg", Glorot(g, g, rng));
        ps.Add(p + "/b", Tensor(1, g));
      }
      AddLinear(ps, "decode", g, kActionSlots, rng);
      break;
    }
    case Arch::kTransformer: {
      const int e = config.embed;
      AddLinear(ps, "embed", f, e, rng);
      if (config.use_embed_ln) AddNorm(ps, "embed_ln", e);
      if (config.use_pe) {
        Tensor pe(config.max_nodes, e);
        for (double& v : pe.data) v = rng.Normal(0.0, 0.02);
        ps.Add("pe", std::move(pe));
      }
      for (int l = 0; l < config.layers; ++l) {
        std::string p = LayerName(l);
        AddLinear(ps, p, e, e, rng, "wq", "bq");
        AddLinear(ps, p, e, e, rng, "wk", "bk");
        AddLinear(ps, p, e, e, rng, "wv", "bv");
        AddLinear(ps, p, e, e, rng, "wo", "bo");
        AddNorm(ps, p + "/ln1", e);
        AddLinear(ps, p, e, config.attn_hidden, rng, "w1", "b1");
        AddLinear(ps, p, config.attn_hidden, e, rng, "w2", "b2");
        AddNorm(ps, p + "/ln2", e);
      }
      AddLinear(ps, "decode", e + f, config.OutputWidth(), rng);
      break;
    }
  }
  return out;
}

PolicyBatch MakeBatch(std::span<const ControlGraph* const> graphs,
                      const PolicyConfig& config) {
  if (graphs.empty()) throw Error(ErrorKind::kValue, "empty batch");
  PolicyBatch batch = EmptyBatch(config, graphs[0]->variant);
  for (const ControlGraph* cg : graphs) {
    if (cg->variant != batch.variant) {
      throw Error(ErrorKind::kShape, "batch mixes control graph variants");
    }
    if (config.token != TokenMode::kNone) {
      AppendGraph(batch, *cg, Detokenized(*cg, config), config);
    } else {
      AppendGraph(batch, *cg, cg->node_features, config);
    }
  }
  return batch;
}

PolicyBatch MakeBatch(const ControlGraph& graph, const PolicyConfig& config) {
  const ControlGraph* one[] = {&graph};
  return MakeBatch(std::span<const ControlGraph* const>(one), config);
}

PolicyBatch MakeTokenBatch(const TokenGrid& grid, const ControlGraph& layout,
                           const PolicyConfig& config) {
  if (grid.rows != layout.node_features.rows || grid.cols != layout.node_features.cols) {
    throw Error(ErrorKind::kShape, "token grid does not match its layout");
  }
  PolicyBatch batch = EmptyBatch(config, layout.variant);
  AppendGraph(batch, layout,
              DetokenizeCg(grid, layout, DequantizeMode::kCenter, config.bins), config);
  return batch;
}

Var Forward(Tape& tape, const PolicyConfig& config, const PolicyBatch& batch,
            AttentionMaps* maps) {
  if (batch.features.cols() != config.feature_width ||
      batch.features.rows() != batch.segments.TotalRows()) {
    throw Error(ErrorKind::kShape, "batch does not match the policy input width");
  }
  tape.SetScope("input");
  Var s = tape.Constant(batch.features);
  Net net(tape, config, batch);
  switch (config.arch) {
    case Arch::kMlp: return net.Mlp();
    case Arch::kGnn: return net.Gnn(s);
    case Arch::kTransformer: return net.Transformer(s, maps);
  }
  throw Error(ErrorKind::kConfig, "unknown architecture");
}

Tensor DecodeSlots(const PolicyConfig& config, const Tensor& output,
                   const Tensor& mask) {
  if (!config.Discrete()) {
    Tensor out = output;
    for (size_t i = 0; i < out.size(); ++i) out.data[i] *= mask.data[i];
    return out;
  }
  const DequantizeMode mode = config.token == TokenMode::kDA
                                  ? DequantizeMode::kAverageWindow
                                  : DequantizeMode::kCenter;
  Tensor out(output.rows(), kActionSlots);
  for (int r = 0; r < output.rows(); ++r) {
    for (int k = 0; k < kActionSlots; ++k) {
      if (mask(r, k) == 0.0) continue;
      const double* row = &output.data[static_cast<size_t>(r) * output.cols() +
                                       k * config.bins];
      int best = static_cast<int>(std::max_element(row, row + config.bins) - row);
      out(r, k) = MuLawInverse(Dequantize(best, mode, config.bins));
    }
  }
  return out;
}

Tensor PredictSlots(const PolicyParams& policy, const PolicyBatch& batch,
                    AttentionMaps* maps) {
  Tape tape(&policy.params);
  Var out = Forward(tape, policy.config, batch, maps);
  return DecodeSlots(policy.config, tape.value(out), batch.mask);
}

std::vector<std::vector<double>> ActBatch(
    const PolicyParams& policy, std::span<const ControlGraph* const> graphs) {
  PolicyBatch batch = MakeBatch(graphs, policy.config);
  Tensor slots = PredictSlots(policy, batch);
  std::vector<std::vector<double>> actions;
  actions.reserve(graphs.size());
  for (size_t g = 0; g < graphs.size(); ++g) {
    int begin = batch.segments.Begin(static_cast<int>(g));
    int n = batch.segments.Size(static_cast<int>(g));
    Matrix m(n, kActionSlots);
    std::copy(slots.data.begin() + static_cast<size_t>(begin) * kActionSlots,
              slots.data.begin() + static_cast<size_t>(begin + n) * kActionSlots,
              m.data.begin());
    actions.push_back(ExtractActions(*graphs[g], m));
  }
  return actions;
}

std::vector<double> Act(const PolicyParams& policy, const ControlGraph& graph) {
  const ControlGraph* one[] = {&graph};
  return ActBatch(policy, std::span<const ControlGraph* const>(one))[0];
}

}  // namespace mxt
