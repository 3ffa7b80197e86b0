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

#include "mxt/cli/commands.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/distill/checkpoint.h"
#include "mxt/env/suite.h"
#include "mxt/eval/rollout.h"

namespace mxt {
namespace {

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "cannot create output directory '" + dir + "'");
  }
}

std::vector<std::shared_ptr<const EnvSpec>> MakeEnvs(const std::vector<std::string>& ids,
                                                     const RunConfig& config) {
  const int resets = static_cast<int>(config.GetInt("calibration_resets"));
  std::vector<std::shared_ptr<const EnvSpec>> envs;
  for (const std::string& id : ids) envs.push_back(MakeEnvSpec(id, resets));
  return envs;
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void WriteResolved(const RunConfig& config, const std::string& command) {
  WriteFileText(JoinPath(config.OutDir(), command + ".config"), config.Serialize());
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kConfig:
    case ErrorKind::kUnsupported:
      return 1;
    default:
      return 2;
  }
}

GenDataReport CmdGenData(const RunConfig& config) {
  SplitPlan split = config.Split();
  const ObservationSpec obs = config.Obs();
  const int n = static_cast<int>(config.GetInt("transitions"));
  EnsureDir(config.OutDir());
  GenDataReport report;
  TransitionDataset dataset =
      GenerateDataset(MakeEnvs(split.train, config), obs, config.GetReal("expert_gain"), n,
                      config.Seed(), &report.stats);
  std::vector<uint8_t> bytes = EncodeDataset(dataset);
  report.dataset_path = config.DatasetPath();
  WriteFileBytes(report.dataset_path, bytes);
  report.checksum = Fnv1a64(bytes);

  std::ostringstream m;
  m << "dataset=" << report.dataset_path << "\n"
    << "format_version=" << dataset.format_version << "\n"
    << "fnv1a64=" << Hex64(report.checksum) << "\n"
    << "seed=" << config.Seed() << "\n"
    << "obs=" << obs.Name() << "\n"
    << "split=" << SplitKindName(split.kind) << "\n"
    << "environments=" << report.stats.size() << "\n";
  for (const GenerationStats& s : report.stats) {
    m << "env." << s.env_id << ".transitions=" << s.transitions << "\n"
      << "env." << s.env_id << ".attempts=" << s.attempts << "\n"
      << "env." << s.env_id << ".success_rate=" << FormatReal(s.SuccessRate()) << "\n";
  }
  report.manifest_path = JoinPath(config.OutDir(), "manifest.txt");
  WriteFileText(report.manifest_path, m.str());
  WriteResolved(config, "gen-data");
  return report;
}

DistillReport CmdDistill(const RunConfig& config) {
  TransitionDataset dataset = ReadDataset(config.DatasetPath());
  if (dataset.environments.empty()) {
    throw Error(ErrorKind::kDataQuality, "dataset has no environments");
  }
  const ObservationSpec obs = dataset.environments.front().obs;
  if (config.IsSet("obs") && !(config.Obs() == obs)) {
    throw Error(ErrorKind::kConfig, "config obs " + config.Obs().Name() +
                                        " differs from the dataset's " + obs.Name());
  }
  const int history = static_cast<int>(config.GetInt("history"));
  const CgVariant cg = config.Policy(1).cg;
  std::vector<Example> examples = BuildExamples(dataset, cg, history);
  if (examples.empty()) throw Error(ErrorKind::kDataQuality, "dataset has no transitions");
  PolicyConfig pc = config.Policy(examples.front().cg.FeatureWidth());
  pc.obs = obs.Name();
  CheckCompatible(pc, examples);
  TrainConfig tc = config.Training();

  EnsureDir(config.OutDir());
  PolicyParams policy = InitParams(pc, config.Seed());
  DistillReport report;
  report.train = Train(policy, examples, tc);
  report.checkpoint_path = config.CheckpointPath();
  SaveCheckpoint(report.checkpoint_path, policy);
  report.loss_path = JoinPath(config.OutDir(), "loss.csv");
  WriteFileText(report.loss_path, LossCurveCsv(report.train));
  std::ostringstream s;
  s << "arch=" << pc.ArchTag() << "\n"
    << "cg=" << CgVariantName(pc.cg) << "\n"
    << "examples=" << examples.size() << "\n"
    << "steps=" << tc.steps << "\n"
    << "init_loss=" << FormatReal(report.train.init_loss) << "\n"
    << "final_loss=" << FormatReal(report.train.final_loss) << "\n";
  WriteFileText(JoinPath(config.OutDir(), "train.txt"), s.str());
  WriteResolved(config, "distill");
  return report;
}

EvalReport CmdEval(const RunConfig& config, const std::string& compare) {
  std::optional<MetricResult> baseline;
  if (!compare.empty()) {
    if (!std::filesystem::is_regular_file(compare)) {
      throw Error(ErrorKind::kUsage, "baseline report '" + compare + "' does not exist");
    }
    baseline = ParseMetricCsv(ReadFileText(compare));
  }
  PolicyParams policy = LoadCheckpoint(config.CheckpointPath());
  SplitPlan split = config.Split();
  const int count = static_cast<int>(config.GetInt("eval_seeds"));
  const int steps = static_cast<int>(config.GetInt("eval_steps"));
  if (count <= 0) throw Error(ErrorKind::kConfig, "eval_seeds must be positive");
  std::vector<uint64_t> seeds = EvalSeeds(config.Seed(), count);

  std::vector<GoalOutcome> outcomes;
  for (const auto& env : MakeEnvs(split.test, config)) {
    for (const Trajectory& t : RolloutPolicy(policy, env, seeds, steps)) {
      std::vector<GoalOutcome> o = Outcomes(t, env->task);
      outcomes.insert(outcomes.end(), o.begin(), o.end());
    }
  }
  EnsureDir(config.OutDir());
  EvalReport report;
  report.metric = NormalizedFinalDistance(outcomes);
  report.metric_path = JoinPath(config.OutDir(), "metric.csv");
  WriteFileText(report.metric_path, MetricCsv(report.metric));

  std::ostringstream s;
  s << "# mean_normalized_distance: unweighted mean over environments\n"
    << "# subdomain_mean_normalized_distance: environments averaged within each "
       "sub-domain first\n"
    << "checkpoint=" << config.CheckpointPath() << "\n"
    << "arch=" << policy.config.ArchTag() << "\n"
    << "split=" << SplitKindName(split.kind) << "\n"
    << "seeds=" << count << "\n"
    << MetricSummary(report.metric);
  if (baseline) {
    report.baseline_mean = baseline->mean;
    s << "baseline=" << compare << "\n"
      << "baseline_mean_normalized_distance=" << FormatReal(baseline->mean) << "\n";
    if (report.metric.mean < baseline->mean && baseline->mean > 0.0) {
      report.improvement_pct = PercentageImprovement(report.metric.mean, baseline->mean);
      s << "improvement_pct=" << FormatReal(*report.improvement_pct) << "\n";
    } else {
      s << "improvement_pct=none\n";
    }
  }
  report.summary_path = JoinPath(config.OutDir(), "summary.txt");
  WriteFileText(report.summary_path, s.str());
  WriteResolved(config, "eval");
  return report;
}

std::vector<AblationRow> CmdAblate(const RunConfig& config) {
  const std::vector<std::string> axis_keys = {"ablate_obs", "ablate_pe", "ablate_token",
                                              "ablate_history"};
  const std::vector<std::string> targets = {"obs", "pe", "token", "history"};
  std::vector<std::vector<std::string>> axes(axis_keys.size());
  bool any = false;
  for (size_t a = 0; a < axis_keys.size(); ++a) {
    if (config.IsSet(axis_keys[a])) {
      axes[a] = config.GetList(axis_keys[a]);
      if (axes[a].empty()) {
        throw Error(ErrorKind::kUsage, axis_keys[a] + " lists no values");
      }
      any = true;
    } else {
      axes[a] = {config.Get(targets[a])};
    }
  }
  if (!any) throw Error(ErrorKind::kUsage, "no ablation axis is set");

  size_t cells = 1;
  for (const auto& axis : axes) cells *= axis.size();
  EnsureDir(config.OutDir());
  std::vector<AblationRow> rows;
  for (size_t cell = 0; cell < cells; ++cell) {
    RunConfig run = config;
    size_t rest = cell;
    std::vector<std::string> chosen(axes.size());
    for (size_t a = axes.size(); a-- > 0;) {
      chosen[a] = axes[a][rest % axes[a].size()];
      rest /= axes[a].size();
      run.Set(targets[a], chosen[a]);
    }
    for (const std::string& k : axis_keys) run.Set(k, "");
    run.Set("out", JoinPath(config.OutDir(), "cell_" + std::to_string(cell)));
    run.Set("dataset", "");
    run.Set("checkpoint", "");
    CmdGenData(run);
    DistillReport d = CmdDistill(run);
    EvalReport e = CmdEval(run);
    AblationRow row;
    row.cell = static_cast<int>(cell);
    row.obs = run.Obs().Name();
    row.pe = run.Get("pe");
    row.token = TokenModeName(run.Policy(1).token);
    row.history = static_cast<int>(run.GetInt("history"));
    row.seed = run.Seed();
    row.init_loss = d.train.init_loss;
    row.final_loss = d.train.final_loss;
    row.mean_distance = e.metric.mean;
    rows.push_back(row);
  }
  WriteFileText(JoinPath(config.OutDir(), "ablation.csv"), AblationCsv(rows));
  WriteResolved(config, "ablate");
  return rows;
}

std::string AblationCsv(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  out << "cell,obs,pe,token,history,seed,init_loss,final_loss,mean_normalized_distance\n";
  for (const AblationRow& r : rows) {
    out << r.cell << "," << r.obs << "," << r.pe << "," << r.token << "," << r.history
        << "," << r.seed << "," << FormatReal(r.init_loss) << ","
        << FormatReal(r.final_loss) << "," << FormatReal(r.mean_distance) << "\n";
  }
  return out.str();
}

}  // namespace mxt
