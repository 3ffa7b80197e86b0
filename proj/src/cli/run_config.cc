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

#include "mxt/cli/run_config.h"

#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"

namespace mxt {
namespace {

struct KeySpec {
  std::string_view key;
  std::string_view desk;
  std::string_view full;  // empty: same as desk
};

constexpr KeySpec kKeys[] = {
    {"ablate_history", "", ""},
    {"ablate_obs", "", ""},
    {"ablate_pe", "", ""},
    {"ablate_token", "", ""},
    {"arch", "transformer", ""},
    {"attn_hidden", "128", "512"},
    {"batch", "64", "256"},
    {"bins", "1024", ""},
    {"calibration_resets", "1000", ""},
    {"cg", "v2", ""},
    {"checkpoint", "", ""},
    {"clip", "0.1", ""},
    {"dataset", "", ""},
    {"embed", "64", "256"},
    {"embed_ln", "off", ""},
    {"envs", "ant_reach_3,ant_reach_5,ant_reach_handsup_3,ant_reach_handsup_5", ""},
    {"eval_seeds", "64", ""},
    {"eval_steps", "500", ""},
    {"expert_gain", "10", ""},
    {"gnn_hidden", "256", ""},
    {"gnn_layers", "3", ""},
    {"heads", "2", ""},
    {"history", "1", ""},
    {"holdout_counts", "4", ""},
    {"holdout_task", "reach_hard", ""},
    {"layers", "2", "3"},
    {"log_every", "100", ""},
    {"lr", "0.0003", ""},
    {"max_nodes", "32", ""},
    {"mlp_hidden", "1024", ""},
    {"mlp_layers", "2", ""},
    {"obs", "base_set", ""},
    {"out", "out", ""},
    {"pe", "on", ""},
    {"preset", "desk", ""},
    {"probe", "512", ""},
    {"seed", "0", ""},
    {"split", "indist", ""},
    {"steps", "5000", "100000"},
    {"token", "none", ""},
    {"transitions", "12000", ""},
};

const KeySpec* Find(std::string_view key) {
  for (const KeySpec& k : kKeys) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

}  // namespace

const std::vector<std::string>& RunConfig::Keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const KeySpec& k : kKeys) out.emplace_back(k.key);
    return out;
  }();
  return keys;
}

RunConfig RunConfig::Parse(std::string_view text) {
  RunConfig config;
  std::vector<std::string> lines = SplitString(text, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    line = line.substr(0, line.find('#'));
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kConfig,
                  "line " + std::to_string(i + 1) + ": expected 'key = value'");
    }
    config.Set(std::string(Trim(line.substr(0, eq))),
               std::string(Trim(line.substr(eq + 1))));
  }
  return config;
}

RunConfig RunConfig::Load(const std::string& path) { return Parse(ReadFileText(path)); }

void RunConfig::Set(const std::string& key, const std::string& value) {
  if (Find(key) == nullptr) throw Error(ErrorKind::kConfig, "unknown key '" + key + "'");
  if (key == "preset" && value != "desk" && value != "full") {
    throw Error(ErrorKind::kConfig, "preset must be desk or full");
  }
  explicit_[key] = value;
}

std::string RunConfig::Get(const std::string& key) const {
  const KeySpec* spec = Find(key);
  if (spec == nullptr) throw Error(ErrorKind::kConfig, "unknown key '" + key + "'");
  auto it = explicit_.find(key);
  if (it != explicit_.end()) return it->second;
  if (key != "preset" && Get("preset") == "full" && !spec->full.empty()) {
    return std::string(spec->full);
  }
  return std::string(spec->desk);
}

long long RunConfig::GetInt(const std::string& key) const {
  try {
    return ParseInt(Get(key));
  } catch (const Error&) {
    throw Error(ErrorKind::kConfig, key + " must be an integer, got '" + Get(key) + "'");
  }
}

double RunConfig::GetReal(const std::string& key) const {
  try {
    return ParseReal(Get(key));
  } catch (const Error&) {
    throw Error(ErrorKind::kConfig, key + " must be a number, got '" + Get(key) + "'");
  }
}

bool RunConfig::GetSwitch(const std::string& key) const {
  std::string v = Get(key);
  if (v == "on") return true;
  if (v == "off") return false;
  throw Error(ErrorKind::kConfig, key + " must be on or off, got '" + v + "'");
}

std::vector<std::string> RunConfig::GetList(const std::string& key) const {
  std::vector<std::string> out;
  std::string v = Get(key);
  if (Trim(v).empty()) return out;
  for (const std::string& item : SplitString(v, ',')) out.emplace_back(Trim(item));
  return out;
}

std::string RunConfig::Serialize() const {
  std::ostringstream out;
  for (const KeySpec& k : kKeys) out << k.key << " = " << Get(std::string(k.key)) << "\n";
  return out.str();
}

uint64_t RunConfig::Seed() const {
  long long s = GetInt("seed");
  if (s < 0) throw Error(ErrorKind::kConfig, "seed must be non-negative");
  return static_cast<uint64_t>(s);
}

std::string RunConfig::OutDir() const { return Get("out"); }

std::string RunConfig::DatasetPath() const {
  std::string p = Get("dataset");
  return p.empty() ? JoinPath(OutDir(), "dataset.cgds") : p;
}

std::string RunConfig::CheckpointPath() const {
  std::string p = Get("checkpoint");
  return p.empty() ? JoinPath(OutDir(), "checkpoint.cgck") : p;
}

ObservationSpec RunConfig::Obs() const {
  try {
    return ObservationSpec::Parse(Get("obs"));
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, std::string("obs: ") + e.what());
  }
}

PolicyConfig RunConfig::Policy(int feature_width) const {
  PolicyConfig c;
  try {
    c.arch = ParseArch(Get("arch"));
    c.cg = ParseCgVariant(Get("cg"));
    c.token = ParseTokenMode(Get("token"));
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  c.embed = static_cast<int>(GetInt("embed"));
  c.attn_hidden = static_cast<int>(GetInt("attn_hidden"));
  c.heads = static_cast<int>(GetInt("heads"));
  c.layers = static_cast<int>(GetInt("layers"));
  c.mlp_hidden = static_cast<int>(GetInt("mlp_hidden"));
  c.mlp_layers = static_cast<int>(GetInt("mlp_layers"));
  c.gnn_hidden = static_cast<int>(GetInt("gnn_hidden"));
  c.gnn_layers = static_cast<int>(GetInt("gnn_layers"));
  c.use_pe = GetSwitch("pe");
  c.use_embed_ln = GetSwitch("embed_ln");
  c.max_nodes = static_cast<int>(GetInt("max_nodes"));
  c.feature_width = feature_width;
  c.history = static_cast<int>(GetInt("history"));
  c.bins = static_cast<int>(GetInt("bins"));
  c.obs = Obs().Name();
  c.Validate();
  return c;
}

TrainConfig RunConfig::Training() const {
  TrainConfig t;
  t.learning_rate = GetReal("lr");
  t.batch_size = static_cast<int>(GetInt("batch"));
  t.grad_clip = GetReal("clip");
  t.steps = static_cast<int>(GetInt("steps"));
  t.seed = Seed();
  t.log_every = static_cast<int>(GetInt("log_every"));
  t.probe_size = static_cast<int>(GetInt("probe"));
  t.Validate();
  return t;
}

SplitPlan RunConfig::Split() const {
  HoldoutRule rule;
  rule.counts.clear();
  for (const std::string& c : GetList("holdout_counts")) {
    try {
      rule.counts.push_back(static_cast<int>(ParseInt(c)));
    } catch (const Error&) {
      throw Error(ErrorKind::kConfig, "holdout_counts: '" + c + "' is not an integer");
    }
  }
  rule.task = Get("holdout_task");
  std::vector<std::string> envs = GetList("envs");
  return SplitEnvironments(envs, ParseSplitKind(Get("split")), rule);
}

}  // namespace mxt
