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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mxt/common/error.h"
#include "mxt/common/rng.h"
#include "mxt/control_graph/observe.h"
#include "mxt/distill/checkpoint.h"
#include "mxt/env/expert.h"
#include "mxt/env/suite.h"
#include "mxt/eval/metric.h"
#include "mxt/eval/rollout.h"
#include "mxt/eval/split.h"

namespace mxt {
namespace {

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

GoalOutcome Outcome(const std::string& env, int goal, uint64_t seed, double d,
                    double d_min, double d_max) {
  return {env, goal, seed, d, d_min, d_max};
}

PolicyConfig SmallPolicy(Arch arch, CgVariant cg, int feature_width) {
  PolicyConfig c;
  c.arch = arch;
  c.cg = cg;
  c.embed = 8;
  c.attn_hidden = 12;
  c.heads = 2;
  c.layers = 2;
  c.mlp_hidden = 16;
  c.gnn_hidden = 8;
  c.max_nodes = 16;
  c.feature_width = feature_width;
  return c;
}

int WidthFor(const std::shared_ptr<const EnvSpec>& env, CgVariant cg) {
  return ObserveCg(Reset(env, 0), ObservationSpec::Parse("base_set"), cg).FeatureWidth();
}

TEST(NormalizedDistanceTest, Endpoints) {
  EXPECT_EQ(NormalizedDistance(0.1, 0.1, 8.75), 0.0);
  EXPECT_EQ(NormalizedDistance(8.75, 0.1, 8.75), 1.0);
  EXPECT_GT(NormalizedDistance(10.0, 0.1, 8.75), 1.0);
  EXPECT_LT(NormalizedDistance(0.0, 0.1, 8.75), 0.0);
}

TEST(NormalizedDistanceTest, AntReachBoundsHalfway) {
  std::vector<GoalOutcome> o = {Outcome("ant_reach_2", 0, 1, 4.425, 0.1, 8.75)};
  EXPECT_DOUBLE_EQ(NormalizedFinalDistance(o).mean, 0.5);
}

TEST(NormalizedDistanceTest, EmptyRangeIsConfigError) {
  EXPECT_EQ(KindOf([] { NormalizedDistance(1.0, 2.0, 2.0); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([] { NormalizedDistance(1.0, 3.0, 2.0); }), ErrorKind::kConfig);
  std::vector<GoalOutcome> o = {Outcome("a_reach_2", 0, 1, 1.0, 0.5, 0.5)};
  EXPECT_EQ(KindOf([&] { NormalizedFinalDistance(o); }), ErrorKind::kConfig);
}

TEST(MetricTest, MatchesBruteForceOracle) {
  Rng rng(77);
  const std::vector<std::string> envs = {"ant_reach_3", "claw_reach_4", "ant_twister_5"};
  const int goals = 3, seeds = 8;
  std::vector<GoalOutcome> outcomes;
  long double bounds[3][3][2];
  long double d[3][8][3];
  for (int e = 0; e < 3; ++e) {
    for (int g = 0; g < goals; ++g) {
      bounds[e][g][0] = rng.Uniform(0.01, 0.2);
      bounds[e][g][1] = rng.Uniform(0.5, 2.0);
    }
  }
  for (int s = 0; s < seeds; ++s) {
    for (int e = 0; e < 3; ++e) {
      for (int g = 0; g < goals; ++g) {
        d[e][s][g] = rng.Uniform(0.0, 2.5);
        outcomes.push_back(Outcome(envs[e], g, 1000 + s, static_cast<double>(d[e][s][g]),
                                   static_cast<double>(bounds[e][g][0]),
                                   static_cast<double>(bounds[e][g][1])));
      }
    }
  }
  long double oracle = 0.0L;
  long double per_env[3];
  for (int e = 0; e < 3; ++e) {
    long double over_seeds = 0.0L;
    for (int s = 0; s < seeds; ++s) {
      for (int g = 0; g < goals; ++g) {
        over_seeds += (d[e][s][g] - bounds[e][g][0]) / (bounds[e][g][1] - bounds[e][g][0]);
      }
    }
    per_env[e] = over_seeds / seeds;
    oracle += per_env[e];
  }
  oracle /= 3;
  MetricResult r = NormalizedFinalDistance(outcomes);
  EXPECT_NEAR(r.mean, static_cast<double>(oracle), 1e-12);
  ASSERT_EQ(r.per_env.size(), 3u);
  for (int e = 0; e < 3; ++e) {
    EXPECT_EQ(r.per_env[e].env_id, envs[e]);
    EXPECT_EQ(r.per_env[e].episodes, seeds);
    EXPECT_NEAR(r.per_env[e].normalized, static_cast<double>(per_env[e]), 1e-12);
  }
  EXPECT_EQ(r.episodes, 24);
  EXPECT_EQ(r.outcomes.size(), outcomes.size());
}

TEST(MetricTest, EnvironmentsWeighEquallyRegardlessOfSeedCount) {
  std::vector<GoalOutcome> o = {Outcome("a_reach_2", 0, 1, 1.0, 0.0, 1.0),
                                Outcome("b_reach_2", 0, 1, 0.0, 0.0, 1.0),
                                Outcome("b_reach_2", 0, 2, 0.0, 0.0, 1.0),
                                Outcome("b_reach_2", 0, 3, 0.0, 0.0, 1.0)};
  EXPECT_DOUBLE_EQ(NormalizedFinalDistance(o).mean, 0.5);
}

TEST(MetricTest, SubDomainMeanAveragesWithinFamiliesFirst) {
  std::vector<GoalOutcome> o = {Outcome("ant_reach_3", 0, 1, 0.0, 0.0, 1.0),
                                Outcome("ant_reach_5", 0, 1, 0.0, 0.0, 1.0),
                                Outcome("ant_push_3", 0, 1, 0.9, 0.0, 1.0)};
  MetricResult r = NormalizedFinalDistance(o);
  EXPECT_DOUBLE_EQ(r.mean, 0.3);
  EXPECT_DOUBLE_EQ(r.subdomain_mean, 0.45);
}

TEST(MetricTest, SubDomainNames) {
  EXPECT_EQ(SubDomain("ant_reach_4"), "ant_reach");
  EXPECT_EQ(SubDomain("ant_reach_handsup2_6"), "ant_reach_handsup2");
  EXPECT_EQ(SubDomain("claw_push_4_mass_1.2_1_1"), "claw_push");
}

TEST(MetricTest, CsvRoundTripKeepsAggregates) {
  std::vector<GoalOutcome> o = {Outcome("ant_reach_3", 0, 5, 0.31, 0.1, 1.3),
                                Outcome("ant_twister_3", 0, 5, 0.2, 0.1, 0.9),
                                Outcome("ant_twister_3", 1, 5, 0.7, 0.05, 0.8),
                                Outcome("ant_reach_3", 0, 6, 0.9, 0.1, 1.3)};
  MetricResult r = NormalizedFinalDistance(o);
  std::string csv = MetricCsv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "env_id,goal_index,seed,final_distance,normalized");
  MetricResult back = ParseMetricCsv(csv);
  EXPECT_NEAR(back.mean, r.mean, 1e-8);
  EXPECT_EQ(back.episodes, r.episodes);
  EXPECT_EQ(KindOf([] { ParseMetricCsv("env,seed\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] {
              ParseMetricCsv("env_id,goal_index,seed,final_distance,normalized\na,0,x,1,1\n");
            }),
            ErrorKind::kParse);
  EXPECT_NE(MetricSummary(r).find("mean_normalized_distance="), std::string::npos);
}

TEST(ImprovementTest, TableOneMultiTask) {
  EXPECT_NEAR(PercentageImprovement(0.3128, 0.4069), 23.13, 0.01);
}

TEST(ImprovementTest, TableOneCompositional) {
  double p = PercentageImprovement(0.4066, 0.4940);
  EXPECT_NEAR(p, 17.69, 0.01);
  EXPECT_GE(p, 14.0);
  EXPECT_LE(p, 18.0);
}

TEST(ImprovementTest, OrderingErrors) {
  EXPECT_EQ(KindOf([] { PercentageImprovement(0.4, 0.4); }), ErrorKind::kOrdering);
  EXPECT_EQ(KindOf([] { PercentageImprovement(0.5, 0.4); }), ErrorKind::kOrdering);
  EXPECT_EQ(KindOf([] { PercentageImprovement(-0.5, 0.0); }), ErrorKind::kOrdering);
}

TEST(ImprovementTest, ScaleInvariant) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    double d2 = rng.Uniform(0.01, 2.0);
    double d1 = d2 * rng.Uniform(0.0, 0.99);
    double c = std::exp(rng.Uniform(-5.0, 5.0));
    EXPECT_NEAR(PercentageImprovement(c * d1, c * d2), PercentageImprovement(d1, d2), 1e-9);
  }
}

std::vector<std::string> AntReach() {
  return {"ant_reach_2", "ant_reach_3", "ant_reach_4", "ant_reach_5", "ant_reach_6"};
}

TEST(SplitTest, HoldOutSizeFour) {
  std::vector<std::string> u = AntReach();
  SplitPlan p = SplitEnvironments(u, SplitKind::kCompositionalMorphology);
  EXPECT_EQ(p.train, (std::vector<std::string>{"ant_reach_2", "ant_reach_3", "ant_reach_5",
                                               "ant_reach_6"}));
  EXPECT_EQ(p.test, (std::vector<std::string>{"ant_reach_4"}));
}

TEST(SplitTest, InDistributionTestsOnUniverse) {
  std::vector<std::string> u = AntReach();
  SplitPlan p = SplitEnvironments(u, SplitKind::kInDistribution);
  EXPECT_EQ(p.test, u);
  EXPECT_EQ(p.train, u);
}

TEST(SplitTest, HoldingOutEverythingIsConfigError) {
  std::vector<std::string> u = {"ant_reach_4", "claw_reach_4"};
  EXPECT_EQ(KindOf([&] { SplitEnvironments(u, SplitKind::kCompositionalMorphology); }),
            ErrorKind::kConfig);
  std::vector<std::string> only_hard = {"ant_reach_hard_3"};
  EXPECT_EQ(KindOf([&] { SplitEnvironments(only_hard, SplitKind::kCompositionalTask); }),
            ErrorKind::kConfig);
  EXPECT_EQ(KindOf([] { SplitEnvironments({}, SplitKind::kInDistribution); }),
            ErrorKind::kConfig);
  EXPECT_EQ(KindOf([] { ParseSplitKind("random"); }), ErrorKind::kConfig);
}

TEST(SplitTest, PlansAreDeterministicAndDisjoint) {
  std::vector<std::string> u = {"ant_reach_3",         "ant_reach_4",
                                "ant_reach_hard_4",    "claw_reach_hard_3",
                                "ant_reach_hard_4_missing_1", "claw_reach_4_mass_1.5_1_1",
                                "ant_twister_5",       "claw_touch_4"};
  for (SplitKind kind : {SplitKind::kCompositionalMorphology, SplitKind::kCompositionalTask,
                         SplitKind::kOutOfDistribution}) {
    SplitPlan a = SplitEnvironments(u, kind);
    SplitPlan b = SplitEnvironments(u, kind);
    EXPECT_EQ(a.train, b.train);
    EXPECT_EQ(a.test, b.test);
    EXPECT_EQ(ParseSplitKind(SplitKindName(kind)), kind);
    std::set<std::string> train(a.train.begin(), a.train.end());
    for (const std::string& t : a.test) EXPECT_EQ(train.count(t), 0u) << t;
  }
  SplitPlan task = SplitEnvironments(u, SplitKind::kCompositionalTask);
  for (const std::string& t : task.test) EXPECT_EQ(ParseEnvId(t).task_name, "reach_hard");
  SplitPlan ood = SplitEnvironments(u, SplitKind::kOutOfDistribution);
  EXPECT_EQ(ood.test, (std::vector<std::string>{"ant_reach_hard_4_missing_1"}));
  for (const std::string& t : ood.train) {
    EXPECT_FALSE(ParseEnvId(t).variation.has_value()) << t;
    EXPECT_NE(ParseEnvId(t).task_name, "reach_hard") << t;
  }
}

TEST(EvalSeedsTest, DeterministicAndDistinct) {
  std::vector<uint64_t> a = EvalSeeds(9, kDefaultEvalSeeds);
  EXPECT_EQ(a.size(), 64u);
  EXPECT_EQ(a, EvalSeeds(9, kDefaultEvalSeeds));
  EXPECT_EQ(std::set<uint64_t>(a.begin(), a.end()).size(), a.size());
  EXPECT_NE(a, EvalSeeds(10, kDefaultEvalSeeds));
}

TEST(RolloutTest, ZeroPolicyHoldsStill) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  ActionFn zero = [&](const EnvState&) {
    return std::vector<double>(env->graph.ActionDimension(), 0.0);
  };
  Trajectory t = Rollout(zero, env, 4, 50);
  ASSERT_EQ(t.actions.size(), 50u);
  ASSERT_EQ(t.joint_angles.size(), 51u);
  for (const auto& q : t.joint_angles) EXPECT_EQ(q, t.joint_angles.front());
  for (const auto& d : t.distances) EXPECT_EQ(d, t.distances.front());
}

TEST(RolloutTest, LengthIsCappedByEpisode) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  ActionFn zero = [&](const EnvState&) {
    return std::vector<double>(env->graph.ActionDimension(), 0.0);
  };
  EXPECT_EQ(Rollout(zero, env, 1, 10000).actions.size(),
            static_cast<size_t>(env->task.episode_length));
}

TEST(RolloutTest, WrongActionCountIsShapeError) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  ActionFn bad = [](const EnvState&) { return std::vector<double>(2, 0.0); };
  EXPECT_EQ(KindOf([&] { Rollout(bad, env, 1, 5); }), ErrorKind::kShape);
}

TEST(RolloutTest, ExpertEndsWithinGoalTolerance) {
  for (const char* id : {"ant_reach_3", "ant_reach_4", "ant_reach_5"}) {
    auto env = MakeEnvSpec(id, 100);
    ActionFn expert = [](const EnvState& s) { return ScriptedExpert(s); };
    for (uint64_t seed : EvalSeeds(2, 8)) {
      Trajectory t = Rollout(expert, env, seed, 500);
      for (size_t g = 0; g < t.FinalDistances().size(); ++g) {
        EXPECT_LE(t.FinalDistances()[g], env->task.d_min[g]) << id << " seed " << seed;
      }
    }
  }
}

TEST(RolloutTest, ExpertScoresNearZeroOnTheMetric) {
  std::vector<GoalOutcome> outcomes;
  for (const char* id : {"ant_reach_3", "ant_reach_handsup_3"}) {
    auto env = MakeEnvSpec(id, 200);
    ActionFn expert = [](const EnvState& s) { return ScriptedExpert(s); };
    for (uint64_t seed : EvalSeeds(5, 16)) {
      std::vector<GoalOutcome> o = Outcomes(Rollout(expert, env, seed, 500), env->task);
      outcomes.insert(outcomes.end(), o.begin(), o.end());
    }
  }
  EXPECT_LE(NormalizedFinalDistance(outcomes).mean, 0.1);
}

TEST(RolloutTest, SameSeedSameTrajectory) {
  auto env = MakeEnvSpec("ant_reach_handsup_3", 100);
  ActionFn expert = [](const EnvState& s) { return ScriptedExpert(s); };
  EXPECT_EQ(Rollout(expert, env, 12, 80), Rollout(expert, env, 12, 80));
}

class PolicyRolloutTest : public ::testing::TestWithParam<Arch> {};

TEST_P(PolicyRolloutTest, BatchedMatchesSingleSeed) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  CgVariant cg = GetParam() == Arch::kGnn ? CgVariant::kV1 : CgVariant::kV2;
  PolicyParams policy = InitParams(SmallPolicy(GetParam(), cg, WidthFor(env, cg)), 3);
  std::vector<uint64_t> seeds = EvalSeeds(1, 3);
  std::vector<Trajectory> batched = RolloutPolicy(policy, env, seeds, 30);
  ObservationSpec obs = ObservationSpec::Parse("base_set");
  ActionFn single = [&](const EnvState& s) { return Act(policy, ObserveCg(s, obs, cg)); };
  ASSERT_EQ(batched.size(), 3u);
  for (size_t k = 0; k < seeds.size(); ++k) {
    Trajectory t = Rollout(single, env, seeds[k], 30);
    ASSERT_EQ(batched[k].actions.size(), t.actions.size());
    for (size_t i = 0; i < t.actions.size(); ++i) {
      for (size_t j = 0; j < t.actions[i].size(); ++j) {
        EXPECT_NEAR(batched[k].actions[i][j], t.actions[i][j], 1e-12);
      }
    }
  }
  EXPECT_EQ(RolloutPolicy(policy, env, seeds, 30), batched);
}

INSTANTIATE_TEST_SUITE_P(AllArchs, PolicyRolloutTest,
                         ::testing::Values(Arch::kMlp, Arch::kGnn, Arch::kTransformer));

TEST(PolicyRolloutTest, UnseenMorphologyGetsItsOwnActionCount) {
  auto train_env = MakeEnvSpec("ant_reach_3", 100);
  auto unseen = MakeEnvSpec("ant_reach_4", 100);
  PolicyParams policy = InitParams(
      SmallPolicy(Arch::kTransformer, CgVariant::kV2, WidthFor(train_env, CgVariant::kV2)), 2);
  std::vector<uint64_t> seeds = EvalSeeds(1, 2);
  for (const Trajectory& t : RolloutPolicy(policy, unseen, seeds, 20)) {
    for (const auto& a : t.actions) EXPECT_EQ(a.size(), 8u);
  }
}

TEST(AttentionTest, RowsAreDistributions) {
  auto env = MakeEnvSpec("ant_reach_handsup_3", 100);
  PolicyParams policy = InitParams(
      SmallPolicy(Arch::kTransformer, CgVariant::kV2, WidthFor(env, CgVariant::kV2)), 4);
  AttentionReport r = AttentionAlongRollout(policy, env, 3, 12);
  ASSERT_EQ(r.steps.size(), 12u);
  ASSERT_TRUE(r.goal_mass.has_value());
  EXPECT_EQ(r.goal_mass->size(), 12u);
  for (const AttentionMaps& step : r.steps) {
    for (const auto& layer : step) {
      for (const auto& head : layer) {
        const Tensor& p = head[0];
        for (int i = 0; i < p.rows(); ++i) {
          double s = 0.0;
          for (int j = 0; j < p.cols(); ++j) s += p(i, j);
          EXPECT_NEAR(s, 1.0, 1e-12);
        }
      }
    }
  }
  for (double m : *r.goal_mass) {
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, 1.0);
  }
}

TEST(AttentionTest, ShapeAndExportNames) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  PolicyConfig c = SmallPolicy(Arch::kTransformer, CgVariant::kV1, WidthFor(env, CgVariant::kV1));
  c.layers = 3;
  PolicyParams policy = InitParams(c, 4);
  const int steps = 25;
  AttentionReport r = AttentionAlongRollout(policy, env, 3, steps);
  EXPECT_FALSE(r.goal_mass.has_value());
  const int n = env->graph.NodeCount();
  ASSERT_EQ(r.steps.size(), static_cast<size_t>(steps));
  for (const AttentionMaps& step : r.steps) {
    ASSERT_EQ(step.size(), 3u);
    for (const auto& layer : step) {
      ASSERT_EQ(layer.size(), 2u);
      EXPECT_EQ(layer[0][0].rows(), n);
      EXPECT_EQ(layer[0][0].cols(), n);
    }
  }
  TensorTable table = DecodeTensorTable(EncodeAttention(r));
  EXPECT_EQ(table.names.size(), static_cast<size_t>(steps * 3 * 2));
  EXPECT_EQ(table.names.front(), "attn/0/0/0");
  EXPECT_EQ(table.names.back(), "attn/24/2/1");
}

TEST(AttentionTest, NonTransformerUnsupported) {
  auto env = MakeEnvSpec("ant_reach_3", 100);
  PolicyParams policy =
      InitParams(SmallPolicy(Arch::kMlp, CgVariant::kV1, WidthFor(env, CgVariant::kV1)), 4);
  EXPECT_EQ(KindOf([&] { AttentionAlongRollout(policy, env, 1, 3); }),
            ErrorKind::kUnsupported);
}

}  // namespace
}  // namespace mxt
