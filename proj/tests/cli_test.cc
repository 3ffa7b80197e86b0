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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "mxt/cli/commands.h"
#include "mxt/cli/run_config.h"
#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/distill/checkpoint.h"

namespace mxt {
namespace {

namespace fs = std::filesystem;

template <typename F>
ErrorKind KindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kValue;
}

std::string Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mxt_cli_" + name);
  fs::remove_all(p);
  return p.string();
}

// Small enough to run a full pipeline in about a second.
RunConfig Tiny(const std::string& out) {
  RunConfig c = RunConfig::Parse(
      "envs = ant_reach_3, ant_reach_handsup_3\n"
      "transitions = 120\n"
      "steps = 200\n"
      "embed = 8\n"
      "attn_hidden = 16\n"
      "layers = 1\n"
      "batch = 16\n"
      "probe = 64\n"
      "eval_seeds = 4\n"
      "eval_steps = 120\n"
      "calibration_resets = 100\n"
      "seed = 7\n");
  c.Set("out", out);
  return c;
}

size_t LineCount(const std::string& text) {
  size_t n = 0;
  for (const std::string& line : SplitString(text, '\n')) {
    if (!Trim(line).empty()) ++n;
  }
  return n;
}

std::string Field(const std::string& text, const std::string& key) {
  for (const std::string& line : SplitString(text, '\n')) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

int RunBinary(const std::string& args) {
  std::string cmd = std::string(MXT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(RunConfigTest, ParsesCommentsAndBlankLines) {
  RunConfig c = RunConfig::Parse("# header\n\nseed = 12  # trailing\narch=mlp\n");
  EXPECT_EQ(c.Seed(), 12u);
  EXPECT_EQ(c.Get("arch"), "mlp");
  EXPECT_TRUE(c.IsSet("arch"));
  EXPECT_FALSE(c.IsSet("cg"));
  EXPECT_EQ(c.Get("cg"), "v2");
}

TEST(RunConfigTest, UnknownKeysRejected) {
  EXPECT_EQ(KindOf([] { RunConfig::Parse("seeds = 3\n"); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([] { RunConfig::Parse("just words\n"); }), ErrorKind::kConfig);
  RunConfig c;
  EXPECT_EQ(KindOf([&] { c.Set("learning_rate", "1"); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([&] { c.Set("preset", "huge"); }), ErrorKind::kConfig);
}

TEST(RunConfigTest, ResolvedConfigRoundTrips) {
  RunConfig c = RunConfig::Parse("preset = full\nembed = 32\n");
  std::string text = c.Serialize();
  EXPECT_EQ(RunConfig::Parse(text).Serialize(), text);
  EXPECT_EQ(LineCount(text), RunConfig::Keys().size());
}

TEST(RunConfigTest, PresetsSupplyDefaults) {
  RunConfig desk;
  EXPECT_EQ(desk.GetInt("embed"), 64);
  EXPECT_EQ(desk.GetInt("steps"), 5000);
  EXPECT_EQ(desk.GetInt("transitions"), 12000);
  RunConfig full = RunConfig::Parse("preset = full\nlayers = 4\n");
  EXPECT_EQ(full.GetInt("embed"), 256);
  EXPECT_EQ(full.GetInt("batch"), 256);
  EXPECT_EQ(full.GetInt("steps"), 100000);
  EXPECT_EQ(full.GetInt("layers"), 4);
  EXPECT_DOUBLE_EQ(full.Training().learning_rate, 3e-4);
  EXPECT_DOUBLE_EQ(full.Training().grad_clip, 0.1);
}

TEST(RunConfigTest, TypedAccessorsRejectBadValues) {
  RunConfig c = RunConfig::Parse("embed = wide\npe = maybe\narch = rnn\n");
  EXPECT_EQ(KindOf([&] { c.GetInt("embed"); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([&] { c.GetSwitch("pe"); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([&] { c.Policy(4); }), ErrorKind::kConfig);
}

TEST(GenDataTest, DefaultManifestListsTwelveThousand) {
  RunConfig c;
  c.Set("out", Scratch("default"));
  c.Set("calibration_resets", "50");
  GenDataReport r = CmdGenData(c);
  std::string manifest = ReadFileText(r.manifest_path);
  ASSERT_EQ(r.stats.size(), 4u);
  for (const GenerationStats& s : r.stats) {
    EXPECT_EQ(Field(manifest, "env." + s.env_id + ".transitions"), "12000");
  }
  EXPECT_TRUE(fs::exists(fs::path(c.OutDir()) / "gen-data.config"));
}

TEST(GenDataTest, TransitionOverrideAndStableChecksum) {
  RunConfig c = Tiny(Scratch("gen"));
  c.Set("transitions", "100");
  GenDataReport a = CmdGenData(c);
  for (const GenerationStats& s : a.stats) EXPECT_EQ(s.transitions, 100);
  GenDataReport b = CmdGenData(c);
  EXPECT_EQ(a.checksum, b.checksum);
  EXPECT_EQ(Field(ReadFileText(a.manifest_path), "fnv1a64").size(), 16u);
}

TEST(DistillTest, CheckpointTagsAndLossRows) {
  RunConfig c = Tiny(Scratch("distill"));
  c.Set("steps", "300");
  CmdGenData(c);
  DistillReport r = CmdDistill(c);
  PolicyParams p = LoadCheckpoint(r.checkpoint_path);
  EXPECT_EQ(p.config.ArchTag(), "transformer");
  EXPECT_EQ(p.config.cg, CgVariant::kV2);
  EXPECT_EQ(LineCount(ReadFileText(r.loss_path)), 1u + 300 / 100 + 1);
  EXPECT_TRUE(fs::exists(fs::path(c.OutDir()) / "distill.config"));
}

TEST(DistillTest, ZeroStepsWritesInitialisation) {
  RunConfig c = Tiny(Scratch("zero"));
  c.Set("steps", "0");
  CmdGenData(c);
  DistillReport r = CmdDistill(c);
  PolicyParams p = LoadCheckpoint(r.checkpoint_path);
  EXPECT_EQ(p.params, InitParams(p.config, c.Seed()).params);
}

TEST(DistillTest, ArchitectureMismatchFailsBeforeTraining) {
  RunConfig c = Tiny(Scratch("mismatch"));
  CmdGenData(c);
  c.Set("arch", "gnn");
  c.Set("cg", "v2");
  EXPECT_EQ(KindOf([&] { CmdDistill(c); }), ErrorKind::kConfig);
  EXPECT_FALSE(fs::exists(c.CheckpointPath()));
  c.Set("arch", "transformer");
  c.Set("obs", "base_set+m");
  EXPECT_EQ(KindOf([&] { CmdDistill(c); }), ErrorKind::kConfig);
}

TEST(EvalTest, CompareWritesImprovementAndIsDeterministic) {
  RunConfig c = Tiny(Scratch("eval"));
  CmdGenData(c);
  CmdDistill(c);
  EvalReport first = CmdEval(c);
  // A baseline five times the normalized range away on every goal.
  MetricResult worse = first.metric;
  for (GoalOutcome& o : worse.outcomes) o.final_distance = o.d_min + 5.0 * (o.d_max - o.d_min);
  std::string baseline = (fs::path(c.OutDir()) / "baseline.csv").string();
  WriteFileText(baseline, MetricCsv(worse));
  double baseline_mean = ParseMetricCsv(MetricCsv(worse)).mean;

  std::string before = ReadFileText(first.metric_path);
  EvalReport compared = CmdEval(c, baseline);
  EXPECT_EQ(ReadFileText(compared.metric_path), before);
  ASSERT_TRUE(compared.improvement_pct.has_value());
  EXPECT_NEAR(*compared.improvement_pct,
              100.0 * (baseline_mean - compared.metric.mean) / baseline_mean, 1e-9);
  std::string summary = ReadFileText(compared.summary_path);
  EXPECT_EQ(Field(summary, "improvement_pct"), FormatReal(*compared.improvement_pct));
  EXPECT_EQ(KindOf([&] { CmdEval(c, baseline + ".missing"); }), ErrorKind::kUsage);
}

TEST(EvalTest, EqualToBaselineReportsNoImprovement) {
  RunConfig c = Tiny(Scratch("no_gain"));
  CmdGenData(c);
  CmdDistill(c);
  EvalReport first = CmdEval(c);
  std::string baseline = (fs::path(c.OutDir()) / "baseline.csv").string();
  fs::copy_file(first.metric_path, baseline);
  EvalReport same = CmdEval(c, baseline);
  EXPECT_FALSE(same.improvement_pct.has_value());
  EXPECT_EQ(Field(ReadFileText(same.summary_path), "improvement_pct"), "none");
}

TEST(AblateTest, ObsTimesPeGivesFourRows) {
  RunConfig c = Tiny(Scratch("ablate"));
  c.Set("steps", "20");
  c.Set("ablate_obs", "base_set, base_set+m");
  c.Set("ablate_pe", "on,off");
  std::vector<AblationRow> rows = CmdAblate(c);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].obs, "base_set");
  EXPECT_EQ(rows[0].pe, "on");
  EXPECT_EQ(rows[1].pe, "off");
  EXPECT_EQ(rows[2].obs, "base_set+m");
  for (const AblationRow& r : rows) EXPECT_EQ(r.seed, 7u);
  EXPECT_EQ(LineCount(ReadFileText((fs::path(c.OutDir()) / "ablation.csv").string())), 5u);
}

TEST(AblateTest, TokenAxisTagsVariants) {
  RunConfig c = Tiny(Scratch("tokens"));
  c.Set("steps", "10");
  c.Set("bins", "64");
  c.Set("ablate_token", "D,DA,C");
  std::vector<AblationRow> rows = CmdAblate(c);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].token, "d");
  EXPECT_EQ(rows[1].token, "da");
  EXPECT_EQ(rows[2].token, "c");
}

TEST(AblateTest, EmptyOrMissingAxesAreUsageErrors) {
  RunConfig c = Tiny(Scratch("empty"));
  EXPECT_EQ(KindOf([&] { CmdAblate(c); }), ErrorKind::kUsage);
  c.Set("ablate_pe", "");
  EXPECT_EQ(KindOf([&] { CmdAblate(c); }), ErrorKind::kUsage);
}

TEST(BinaryTest, ExitCodes) {
  std::string out = Scratch("binary");
  EXPECT_EQ(RunBinary(""), 1);
  EXPECT_EQ(RunBinary("gen-data --bogus"), 1);
  EXPECT_EQ(RunBinary("gen-data --out " + out + " --set nonsense=1"), 1);
  EXPECT_EQ(RunBinary("gen-data --out " + out +
                      " --transitions 50 --set envs=ant_reach_3 --set calibration_resets=50"),
            0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "dataset.cgds"));
  EXPECT_EQ(RunBinary("distill --out " + out + " --arch gnn --cg v2"), 1);
  WriteFileText((fs::path(out) / "broken.cgds").string(), "CGDS");
  EXPECT_EQ(RunBinary("distill --out " + out + " --dataset " + out + "/broken.cgds"), 2);
  EXPECT_EQ(RunBinary("eval --out " + out + " --compare " + out + "/none.csv"), 1);
  EXPECT_EQ(RunBinary("gen-data --out " + out + " --set envs=worm_reach_4 --transitions 10"), 2);
}

TEST(BinaryTest, ConfigFileAndFlagsCompose) {
  std::string out = Scratch("compose");
  fs::create_directories(out);
  std::string cfg = (fs::path(out) / "run.cfg").string();
  WriteFileText(cfg, "envs = ant_reach_3\ntransitions = 40\ncalibration_resets = 50\nseed = 1\n");
  ASSERT_EQ(RunBinary("gen-data --config " + cfg + " --out " + out + " --seed 9"), 0);
  RunConfig resolved = RunConfig::Load((fs::path(out) / "gen-data.config").string());
  EXPECT_EQ(resolved.Seed(), 9u);
  EXPECT_EQ(resolved.GetInt("transitions"), 40);
}

}  // namespace
}  // namespace mxt
