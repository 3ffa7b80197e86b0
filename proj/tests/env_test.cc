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

#include "mxt/env/env.h"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "mxt/common/error.h"
#include "mxt/common/rng.h"
#include "mxt/env/expert.h"
#include "mxt/env/kinematics.h"
#include "mxt/env/suite.h"
#include "mxt/env/task.h"

namespace mxt {
namespace {

// Root plus a planar chain of z-axis segments.
MorphologyGraph PlanarChain(int segments, double length) {
  MorphologyGraph g;
  g.blueprint_tag = "chain";
  g.nodes.push_back({0, ModuleKind::kTorso, 0.05, 0.0, 1.0, 0.01, {}, -1});
  for (int i = 1; i <= segments; ++i) {
    g.nodes.push_back(
        {i, ModuleKind::kLimbSegment, 0.05, length, 1.0, 0.01, {}, i - 1});
    g.edges.push_back({i - 1, i, {{{0, 0, 1}, -2.8, 3.2, 1.0}}});
  }
  return g;
}

TaskSpec SingleXyTask(double r_lo, double r_hi, double d_min) {
  TaskSpec task;
  task.kind = TaskKind::kReach;
  task.goals = {{GoalKind::kXyPosition, NodeSelector::EndEffector(0),
                 {0.0, 0.0, r_lo, r_hi, 0.0, 0.0}}};
  task.d_min = {d_min};
  task.d_max = {1.0};
  return task;
}

TEST(ForwardKinematicsTest, ClosedFormChains) {
  MorphologyGraph one = PlanarChain(1, 0.4);
  std::vector<double> zero = {0.0};
  Vec3 tip = ForwardKinematics(one, zero)[1].position;
  EXPECT_NEAR(tip.x, 0.4, 1e-12);
  EXPECT_NEAR(tip.y, 0.0, 1e-12);

  std::vector<double> quarter = {std::numbers::pi / 2};
  tip = ForwardKinematics(one, quarter)[1].position;
  EXPECT_NEAR(tip.x, 0.0, 1e-9);
  EXPECT_NEAR(tip.y, 0.4, 1e-9);

  MorphologyGraph two = PlanarChain(2, 0.4);
  std::vector<double> angles = {std::numbers::pi / 4, std::numbers::pi / 4};
  tip = ForwardKinematics(two, angles)[2].position;
  EXPECT_NEAR(tip.x, 0.28284, 1e-5);
  EXPECT_NEAR(tip.y, 0.68284, 1e-5);
  EXPECT_NEAR(tip.z, 0.0, 1e-12);
}

TEST(ForwardKinematicsTest, DimensionMismatch) {
  MorphologyGraph two = PlanarChain(2, 0.4);
  std::vector<double> angles = {0.1};
  try {
    ForwardKinematics(two, angles);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

// Homogeneous-matrix evaluation of the same composition rule, written
// independently with Eigen.
std::vector<Eigen::Matrix4d> HomogeneousOracle(const MorphologyGraph& g,
                                              const std::vector<double>& q) {
  std::vector<Eigen::Matrix4d> tip(g.NodeCount(), Eigen::Matrix4d::Identity());
  auto translate = [](double x, double y, double z) {
    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    t(0, 3) = x;
    t(1, 3) = y;
    t(2, 3) = z;
    return t;
  };
  auto rotate = [](const Vec3& axis, double angle) {
    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    t.block<3, 3>(0, 0) =
        Eigen::AngleAxisd(angle, Eigen::Vector3d(axis.x, axis.y, axis.z))
            .toRotationMatrix();
    return t;
  };
  tip[0] = translate(g.nodes[0].length, 0, 0);
  for (const JointEdge& e : g.edges) {  // edges are parent-before-child here
    const ModuleNode& n = g.nodes[e.child_id];
    Eigen::Matrix4d t = tip[e.parent_id] *
                        translate(n.attach_offset.x, n.attach_offset.y,
                                  n.attach_offset.z);
    if (std::hypot(n.attach_offset.x, n.attach_offset.y) > 0) {
      t = t * rotate({0, 0, 1}, std::atan2(n.attach_offset.y, n.attach_offset.x));
    }
    for (size_t k = 0; k < e.actuators.size(); ++k) {
      t = t * rotate(e.actuators[k].axis, q[n.dof_index + k]);
    }
    tip[e.child_id] = t * translate(n.length, 0, 0);
  }
  return tip;
}

TEST(ForwardKinematicsTest, MatchesHomogeneousOracleOnRandomChains) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    MorphologyGraph g;
    g.blueprint_tag = "random";
    g.nodes.push_back({0, ModuleKind::kTorso, 0.1, rng.Uniform(0, 0.3), 1, 0.01,
                       {}, -1});
    int depth = 1 + static_cast<int>(rng.Below(4));
    int branches = 1 + static_cast<int>(rng.Below(2));
    int dof = 0;
    for (int b = 0; b < branches; ++b) {
      int parent = 0;
      for (int d = 0; d < depth; ++d) {
        int id = g.NodeCount();
        Vec3 offset{rng.Uniform(-0.3, 0.3), rng.Uniform(-0.3, 0.3),
                    rng.Uniform(-0.1, 0.1)};
        g.nodes.push_back({id, ModuleKind::kLimbSegment, 0.05,
                           rng.Uniform(0.1, 0.5), 1, 0.01, offset, dof});
        JointEdge e{parent, id, {}};
        int k = 1 + static_cast<int>(rng.Below(3));
        for (int a = 0; a < k; ++a) {
          Vec3 axis{rng.Normal(0, 1), rng.Normal(0, 1), rng.Normal(0, 1)};
          axis = (1.0 / axis.Norm()) * axis;
          e.actuators.push_back({axis, -3.0, 3.0, 1.0});
        }
        dof += k;
        g.edges.push_back(e);
        parent = id;
      }
    }
    ASSERT_TRUE(Validate(g).empty());
    std::vector<double> q(g.ActionDimension());
    for (double& v : q) v = rng.Uniform(-3.0, 3.0);
    auto poses = ForwardKinematics(g, q);
    auto oracle = HomogeneousOracle(g, q);
    for (int i = 0; i < g.NodeCount(); ++i) {
      EXPECT_NEAR(poses[i].position.x, oracle[i](0, 3), 1e-9);
      EXPECT_NEAR(poses[i].position.y, oracle[i](1, 3), 1e-9);
      EXPECT_NEAR(poses[i].position.z, oracle[i](2, 3), 1e-9);
      Eigen::Quaterniond qo(oracle[i].block<3, 3>(0, 0));
      Eigen::Quaterniond qf(poses[i].orientation.w, poses[i].orientation.x,
                            poses[i].orientation.y, poses[i].orientation.z);
      EXPECT_NEAR(std::abs(qo.dot(qf)), 1.0, 1e-9);
    }
  }
}

TEST(ForwardKinematicsTest, JacobianMatchesFiniteDifferences) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kClaw, 3);
  std::vector<double> q = RestPose(g);
  Rng rng(3);
  for (double& v : q) v += rng.Uniform(-0.3, 0.3);
  KinematicState kin = ComputeKinematics(g, q);
  int ee = g.EndEffector(1);
  auto jac = PositionJacobian(g, kin, ee);
  const double h = 1e-6;
  for (int j = 0; j < g.ActionDimension(); ++j) {
    auto qp = q;
    auto qm = q;
    qp[j] += h;
    qm[j] -= h;
    Vec3 fd = (0.5 / h) * (ForwardKinematics(g, qp)[ee].position -
                           ForwardKinematics(g, qm)[ee].position);
    EXPECT_NEAR(jac[j].x, fd.x, 1e-8);
    EXPECT_NEAR(jac[j].y, fd.y, 1e-8);
    EXPECT_NEAR(jac[j].z, fd.z, 1e-8);
  }
}

TEST(SampleGoalsTest, DegenerateAnnulusAndDeterminism) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kAnt, 4);
  TaskSpec task = SingleXyTask(1.0, 1.0, 0.05);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto goals = SampleGoals(task, g, seed);
    ASSERT_EQ(goals.size(), 1u);
    EXPECT_NEAR(goals[0].PlanarNorm(), 1.0, 1e-9);
    EXPECT_EQ(goals[0].z, 0.0);
  }
  EXPECT_EQ(SampleGoals(task, g, 99), SampleGoals(task, g, 99));
  EXPECT_NE(SampleGoals(task, g, 99), SampleGoals(task, g, 100));
}

TEST(SampleGoalsTest, MeanRadiusOfUniformAnnulus) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kAnt, 4);
  TaskSpec task = SingleXyTask(0.5, 1.5, 0.05);
  double sum = 0.0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) sum += SampleGoals(task, g, s)[0].PlanarNorm();
  EXPECT_NEAR(sum / n, 1.0, 0.01);
}

TEST(SampleGoalsTest, AnnulusCentredOnTargetChain) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kAnt, 4);
  TaskSpec task = MakeTask(TaskKind::kReach, g);
  const GoalDistribution& d = task.goals[0].distribution;
  EXPECT_NEAR(d.cx, 0.25, 1e-12);
  EXPECT_NEAR(d.cy, 0.0, 1e-12);
  EXPECT_NEAR(d.r_lo, 0.5 * 0.8, 1e-9);
  EXPECT_NEAR(d.r_hi, 0.9 * 0.8, 1e-9);
  for (uint64_t s = 0; s < 200; ++s) {
    Vec3 goal = SampleGoals(task, g, s)[0];
    double r = std::hypot(goal.x - d.cx, goal.y - d.cy);
    EXPECT_GE(r, d.r_lo - 1e-12);
    EXPECT_LE(r, d.r_hi + 1e-12);
  }
}

TEST(SampleGoalsTest, PushBoxStartsBesideTarget) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kAnt, 3);
  TaskSpec task = MakeTask(TaskKind::kPush, g);
  const GoalDistribution& d = task.goals[0].distribution;
  for (uint64_t s = 0; s < 200; ++s) {
    SampledScene scene = SampleScene(task, g, s);
    ASSERT_TRUE(scene.box_pos.has_value());
    Vec3 t = scene.goals[0];
    Vec3 b = *scene.box_pos;
    EXPECT_NEAR(std::hypot(b.x - d.cx, b.y - d.cy),
                std::hypot(t.x - d.cx, t.y - d.cy), 1e-9);
    double gap = std::abs(std::remainder(
        std::atan2(b.y - d.cy, b.x - d.cx) - std::atan2(t.y - d.cy, t.x - d.cx),
        2 * std::numbers::pi));
    EXPECT_GE(gap, 0.25 - 1e-9);
    EXPECT_LE(gap, 0.5 + 1e-9);
  }
}

TEST(SampleGoalsTest, HeightBand) {
  MorphologyGraph g = GenerateMorphology(Blueprint::kAnt, 4);
  TaskSpec task = MakeTask(TaskKind::kTwister, g);
  for (uint64_t s = 0; s < 100; ++s) {
    auto goals = SampleGoals(task, g, s);
    EXPECT_EQ(goals[1].x, 0.0);
    EXPECT_GE(goals[1].z, task.goals[1].distribution.z_lo);
    EXPECT_LE(goals[1].z, task.goals[1].distribution.z_hi);
  }
}

std::shared_ptr<const EnvSpec> ChainEnv(int segments, double r, double d_min) {
  return EnvSpec::Create("chain", PlanarChain(segments, 0.4),
                         SingleXyTask(r, r, d_min));
}

TEST(StepTest, ZeroActionKeepsAngles) {
  auto spec = MakeEnvSpec("ant_reach_4", 50);
  EnvState s0 = Reset(spec, 1);
  std::vector<double> zero(8, 0.0);
  EnvState s1 = Step(s0, zero);
  EXPECT_EQ(s1.joint_angles, s0.joint_angles);
  EXPECT_EQ(s1.step_count, 1);
}

TEST(StepTest, SaturatesAtRangeAndClampsActions) {
  auto spec = ChainEnv(1, 0.4, 0.01);
  EnvState s = Reset(spec, 0);
  const double hi = s.graph().edges[0].actuators[0].range_hi;
  s.joint_angles = {hi};
  std::vector<double> up = {5.0};
  EnvState next = Step(s, up);
  EXPECT_EQ(next.joint_angles[0], hi);
  s.joint_angles = {0.0};
  next = Step(s, up);
  EXPECT_DOUBLE_EQ(next.joint_angles[0], kMaxJointSpeed * kDefaultDt);
}

TEST(StepTest, EpisodeOver) {
  MorphologyGraph g = PlanarChain(1, 0.4);
  TaskSpec task = SingleXyTask(0.4, 0.4, 0.01);
  task.episode_length = 2;
  auto spec = EnvSpec::Create("short", g, task);
  EnvState s = Reset(spec, 0);
  std::vector<double> a = {0.0};
  s = Step(Step(s, a), a);
  try {
    Step(s, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEpisodeOver);
  }
}

TEST(StepTest, JointAnglesStayInRange) {
  auto spec = MakeEnvSpec("claw_reach_3", 20);
  EnvState s = Reset(spec, 4);
  Rng rng(11);
  std::vector<double> a(s.graph().ActionDimension());
  for (int t = 0; t < 400; ++t) {
    for (double& v : a) v = rng.Uniform(-3.0, 3.0);
    s = Step(s, a);
    int dof = 0;
    for (const JointEdge& e : s.graph().edges) {
      for (const Actuator& act : e.actuators) {
        ASSERT_GE(s.joint_angles[dof], act.range_lo);
        ASSERT_LE(s.joint_angles[dof], act.range_hi);
        ++dof;
      }
    }
  }
}

TEST(StepTest, DeterministicTrajectories) {
  auto spec = MakeEnvSpec("ant_push_3", 20);
  auto run = [&] {
    EnvState s = Reset(spec, 42);
    Rng rng(5);
    std::vector<double> a(s.graph().ActionDimension());
    for (int t = 0; t < 100; ++t) {
      for (double& v : a) v = rng.Uniform(-1.0, 1.0);
      s = Step(s, a);
    }
    return s;
  };
  EnvState a = run();
  EnvState b = run();
  EXPECT_EQ(a.joint_angles, b.joint_angles);
  EXPECT_EQ(a.box_pos, b.box_pos);
  EXPECT_EQ(a.goals, b.goals);
}

TEST(PushTest, QuasiStaticOverlapDisplacement) {
  Vec3 node{0.0, 0.0, 0.0};
  Vec3 box{0.10, 0.0, 0.0};
  Vec3 moved = ResolvePushContact(node, 0.08, box, 0.05);
  EXPECT_NEAR(moved.x - box.x, 0.03, 1e-12);
  EXPECT_EQ(moved.y, 0.0);
  Vec3 far{0.2, 0.0, 0.0};
  EXPECT_EQ(ResolvePushContact(node, 0.08, far, 0.05), far);
}

TEST(GoalDistanceTest, Definitions) {
  auto spec = ChainEnv(1, 0.4, 0.01);
  EnvState s = Reset(spec, 0);
  s.joint_angles = {0.0};
  s.goals = {{0.4, 0.0, 0.0}};
  EXPECT_NEAR(GoalDistance(s, 0), 0.0, 1e-12);
  s.goals = {{0.4 - 1.0, -1.0, 0.0}};
  EXPECT_NEAR(GoalDistance(s, 0), std::sqrt(2.0), 1e-12);

  auto touch = MakeEnvSpec("ant_touch_3", 20);
  EnvState t = Reset(touch, 3);
  int node = touch->goal_nodes[0];
  Vec3 p = ForwardKinematics(t.graph(), t.joint_angles)[node].position;
  double r = t.graph().nodes[node].radius + kBallRadius;
  t.ball_pos = p + Vec3{r, 0.0, 0.0};
  EXPECT_NEAR(GoalDistance(t, 0), 0.0, 1e-12);
  t.ball_pos = p + Vec3{r + 0.5, 0.0, 0.0};
  EXPECT_NEAR(GoalDistance(t, 0), 0.5, 1e-12);
  try {
    GoalDistance(t, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIndex);
  }
}

TEST(GoalDistanceTest, NonNegativeAndZeroOnlyAtGoal) {
  auto spec = MakeEnvSpec("ant_reach_handsup2_4", 20);
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    EnvState s = Reset(spec, trial);
    for (double& v : s.joint_angles) v += rng.Uniform(-0.2, 0.2);
    for (double d : GoalDistances(s)) EXPECT_GE(d, 0.0);
  }
}

TEST(ExpertTest, ZeroActionAtGoal) {
  auto spec = ChainEnv(2, 0.6, 0.01);
  EnvState s = Reset(spec, 0);
  Vec3 tip = ForwardKinematics(s.graph(), s.joint_angles)[2].position;
  s.goals = {tip};
  for (double a : ScriptedExpert(s)) EXPECT_NEAR(a, 0.0, 1e-9);
}

TEST(ExpertTest, PlanarTwoLinkConverges) {
  auto spec = ChainEnv(2, 0.6, 0.01);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    EnvState s = Reset(spec, seed);
    for (int t = 0; t < 200 && !AllGoalsMet(s); ++t) s = Step(s, ScriptedExpert(s));
    EXPECT_LE(GoalDistance(s, 0), 0.01) << "seed " << seed;
  }
}

TEST(ExpertTest, OneStepDecreasesTotalDistance) {
  for (const char* id : {"ant_reach_4", "ant_reach_handsup_3", "claw_reach_3",
                         "ant_touch_4"}) {
    auto spec = MakeEnvSpec(id, 20);
    for (uint64_t seed = 0; seed < 20; ++seed) {
      EnvState s = Reset(spec, seed);
      double before = 0.0;
      for (double d : GoalDistances(s)) before += d;
      EnvState next = Step(s, ScriptedExpert(s), 0.01);
      double after = 0.0;
      for (double d : GoalDistances(next)) after += d;
      EXPECT_LT(after, before) << id << " seed " << seed;
    }
  }
}

TEST(ExpertTest, ZeroOutsideTargetPathForSingleGoal) {
  auto spec = MakeEnvSpec("ant_reach_4", 20);
  EnvState s = Reset(spec, 2);
  auto actions = ScriptedExpert(s);
  auto path = s.graph().PathFromRoot(spec->goal_nodes[0]);
  for (const ModuleNode& node : s.graph().nodes) {
    if (node.node_id == 0) continue;
    bool on_path = std::find(path.begin(), path.end(), node.node_id) != path.end();
    if (!on_path) {
      EXPECT_EQ(actions[node.dof_index], 0.0);
    }
  }
}

TEST(ExpertTest, ReachSuccessRate) {
  auto spec = MakeEnvSpec("ant_reach_4", 100);
  int success = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    EnvState s = Reset(spec, 1000 + seed);
    while (!s.Done() && !AllGoalsMet(s)) s = Step(s, ScriptedExpert(s));
    if (AllGoalsMet(s)) ++success;
  }
  EXPECT_GE(success, 190);
}

TEST(ObservationTest, WidthsAndResetZeros) {
  EXPECT_EQ(ObservationSpec::BaseSet().width(), 22);
  EXPECT_EQ(ObservationSpec::Parse("base_set+m").width(), 30);
  EXPECT_EQ(ObservationSpec::Parse("full").width(), 41);

  auto spec = MakeEnvSpec("ant_reach_4", 20);
  EnvState s = Reset(spec, 0);
  ObservationSpec full = ObservationSpec::Parse("full");
  Matrix obs = LocalObservations(s, full);
  ASSERT_EQ(obs.rows, 9u);
  ASSERT_EQ(obs.cols, 41u);
  for (size_t r = 0; r < obs.rows; ++r) {
    for (ObsFlag f : {ObsFlag::kV, ObsFlag::kA, ObsFlag::kJv}) {
      for (int k = 0; k < 3; ++k) EXPECT_EQ(obs(r, full.Offset(f) + k), 0.0);
    }
  }
  // Root joint-derived slots are zero.
  for (int k = 0; k < 6; ++k) EXPECT_EQ(obs(0, full.Offset(ObsFlag::kJr) + k), 0.0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(obs(0, full.Offset(ObsFlag::kRr) + k), 0.0);
}

TEST(ObservationTest, FiniteDifferences) {
  auto spec = MakeEnvSpec("ant_reach_3", 20);
  EnvState s0 = Reset(spec, 0);
  std::vector<double> a(6, 0.5);
  EnvState s1 = Step(s0, a);
  ObservationSpec full = ObservationSpec::Parse("full");
  Matrix o0 = LocalObservations(s0, full);
  Matrix o1 = LocalObservations(s1, full);
  for (size_t r = 0; r < o1.rows; ++r) {
    for (int k = 0; k < 3; ++k) {
      double dp = o1(r, full.Offset(ObsFlag::kP) + k) - o0(r, full.Offset(ObsFlag::kP) + k);
      EXPECT_NEAR(o1(r, full.Offset(ObsFlag::kV) + k), dp / kDefaultDt, 1e-9);
    }
  }
  // Node 2 is leg 0's distal segment; its parent edge has one actuator.
  EXPECT_NEAR(o1(2, full.Offset(ObsFlag::kJv)), 0.5 * kMaxJointSpeed, 1e-9);
  EXPECT_EQ(o1(2, full.Offset(ObsFlag::kJv) + 1), 0.0);
  EXPECT_NEAR(o1(2, full.Offset(ObsFlag::kJa)), s1.joint_angles[1], 1e-15);
}

TEST(TaskFormatTest, RoundTrip) {
  auto spec = MakeEnvSpec("ant_reach2_handsup_4", 20);
  std::string text = SerializeTask(spec->task);
  EXPECT_EQ(ParseTask(text), spec->task);
  EXPECT_EQ(text.substr(0, text.find('\n')), "task twister goals=3 episode=500");
  try {
    ParseTask(text.substr(0, text.rfind("goal")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
  }
}

TEST(TaskFormatTest, ValidationErrors) {
  TaskSpec task = SingleXyTask(0.5, 0.4, 0.01);
  EXPECT_THROW(ValidateTask(task), Error);
  task = SingleXyTask(0.4, 0.5, 2.0);
  EXPECT_THROW(ValidateTask(task), Error);
}

TEST(SuiteTest, ParsesCompoundTaskIds) {
  EnvIdParts p = ParseEnvId("ant_reach_hard_4_mass_0.5_1.0_3.0");
  EXPECT_EQ(p.blueprint, Blueprint::kAnt);
  EXPECT_EQ(p.count, 4);
  EXPECT_EQ(p.task_kind, TaskKind::kReachHard);
  ASSERT_TRUE(p.variation.has_value());
  EXPECT_EQ(p.variation->mass_scales, (std::array<double, 3>{0.5, 1.0, 3.0}));

  p = ParseEnvId("centipede_touch_3_missing_1");
  EXPECT_EQ(p.variation->missing, 1);
  p = ParseEnvId("ant_reach_handsup2_5");
  EXPECT_EQ(p.layout, TwisterLayout::kReachHandsup2);
  EXPECT_THROW(ParseEnvId("ant_fly_3"), Error);
  EXPECT_THROW(ParseEnvId("robot_reach_3"), Error);
}

TEST(SuiteTest, CalibratedDmaxIsMeanInitialDistance) {
  auto spec = MakeEnvSpec("ant_reach_3", 200);
  EXPECT_GT(spec->task.d_max[0], spec->task.d_min[0]);
  EXPECT_LT(spec->task.d_max[0], 3.0);
}

}  // namespace
}  // namespace mxt
