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

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mxt/cli/commands.h"
#include "mxt/common/error.h"

namespace {

struct Flags {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> sets;
  std::string compare;
};

void AddRunFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "run config file (key = value lines)");
  const std::vector<std::pair<std::string, std::string>> keyed = {
      {"--seed", "seed"},   {"--out", "out"},         {"--arch", "arch"},
      {"--cg", "cg"},       {"--token", "token"},     {"--pe", "pe"},
      {"--history", "history"}, {"--transitions", "transitions"},
      {"--steps", "steps"}, {"--split", "split"},     {"--dataset", "dataset"},
      {"--checkpoint", "checkpoint"}};
  for (const auto& [flag, key] : keyed) {
    cmd->add_option_function<std::string>(
        flag, [&flags, key = key](const std::string& v) { flags.overrides[key] = v; },
        "sets " + key);
  }
  cmd->add_option("--set", flags.sets, "extra key=value override")->take_all();
}

mxt::RunConfig Resolve(const Flags& flags) {
  mxt::RunConfig config;
  if (!flags.config_path.empty()) config = mxt::RunConfig::Load(flags.config_path);
  for (const std::string& kv : flags.sets) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw mxt::Error(mxt::ErrorKind::kUsage, "--set expects key=value, got '" + kv + "'");
    }
    config.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& [key, value] : flags.overrides) config.Set(key, value);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control-graph behaviour distillation"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* gen = app.add_subcommand("gen-data", "generate expert datasets");
  CLI::App* distill = app.add_subcommand("distill", "train a policy on a dataset");
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint on the test split");
  CLI::App* ablate = app.add_subcommand("ablate", "run the ablation cross product");
  for (CLI::App* cmd : {gen, distill, eval, ablate}) AddRunFlags(cmd, flags);
  eval->add_option("--compare", flags.compare, "baseline metric report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    mxt::RunConfig config = Resolve(flags);
    if (gen->parsed()) {
      mxt::GenDataReport r = mxt::CmdGenData(config);
      std::printf("wrote %s (%zu environments)\n", r.dataset_path.c_str(), r.stats.size());
    } else if (distill->parsed()) {
      mxt::DistillReport r = mxt::CmdDistill(config);
      std::printf("wrote %s (loss %.6g -> %.6g)\n", r.checkpoint_path.c_str(),
                  r.train.init_loss, r.train.final_loss);
    } else if (eval->parsed()) {
      mxt::EvalReport r = mxt::CmdEval(config, flags.compare);
      std::printf("mean normalized distance %.6g over %d episodes\n", r.metric.mean,
                  r.metric.episodes);
    } else if (ablate->parsed()) {
      std::vector<mxt::AblationRow> rows = mxt::CmdAblate(config);
      std::printf("%s", mxt::AblationCsv(rows).c_str());
    }
  } catch (const mxt::Error& e) {
    std::fprintf(stderr, "mxt: %s\n", e.what());
    return mxt::ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mxt: %s\n", e.what());
    return 2;
  }
  return 0;
}
