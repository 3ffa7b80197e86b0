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

#include "mxt/env/task.h"

#include <sstream>

#include "mxt/common/error.h"
#include "mxt/common/io.h"
#include "mxt/env/kinematics.h"

namespace mxt {
namespace {

constexpr double kXyDmin = 0.05;
constexpr double kZDmin = 0.02;
constexpr double kContactDmin = 0.02;
constexpr double kHandsupZLo = 0.1;
constexpr double kHandsupZHi = 0.25;
constexpr double kBallZLo = 0.15;
constexpr double kBallZHi = 0.25;

[[noreturn]] void ConfigFail(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}

constexpr double kReachLo = 0.5;
constexpr double kReachHardLo = 0.7;
constexpr double kReachHi = 0.9;

GoalTemplate XyGoal(const MorphologyGraph& graph, GoalKind kind, int ee,
                    double lo) {
  std::vector<double> rest;
  for (const JointEdge& e : graph.edges) {
    for (const Actuator& a : e.actuators) {
      rest.push_back(0.5 * (a.range_lo + a.range_hi));
    }
  }
  ChainWorkspace ws =
      ChainWorkspaceOf(graph, rest, NodeSelector::EndEffector(ee).Resolve(graph));
  return {kind, NodeSelector::EndEffector(ee),
          {Canonical(ws.base.x), Canonical(ws.base.y),
           Canonical(lo * ws.radius), Canonical(kReachHi * ws.radius), 0.0,
           0.0}};
}

GoalTemplate ZGoal(int ee) {
  return {GoalKind::kZHeight, NodeSelector::EndEffector(ee),
          {0.0, 0.0, 0.0, 0.0, kHandsupZLo, kHandsupZHi}};
}

double DefaultDmin(GoalKind kind) {
  switch (kind) {
    case GoalKind::kXyPosition: return kXyDmin;
    case GoalKind::kZHeight: return kZDmin;
    case GoalKind::kBallContact: return kContactDmin;
    case GoalKind::kBoxToTarget: return kXyDmin;
  }
  return kXyDmin;
}

}  // namespace

std::string_view TaskKindName(TaskKind kind) {
  switch (kind) {
    case TaskKind::kReach: return "reach";
    case TaskKind::kReachHard: return "reach_hard";
    case TaskKind::kTouch: return "touch";
    case TaskKind::kTwister: return "twister";
    case TaskKind::kPush: return "push";
  }
  return "?";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "reach") return TaskKind::kReach;
  if (name == "reach_hard") return TaskKind::kReachHard;
  if (name == "touch") return TaskKind::kTouch;
  if (name == "twister") return TaskKind::kTwister;
  if (name == "push") return TaskKind::kPush;
  throw Error(ErrorKind::kParse, "unknown task kind '" + std::string(name) + "'");
}

std::string_view GoalKindName(GoalKind kind) {
  switch (kind) {
    case GoalKind::kXyPosition: return "xy_position";
    case GoalKind::kZHeight: return "z_height";
    case GoalKind::kBallContact: return "ball_contact";
    case GoalKind::kBoxToTarget: return "box_to_target";
  }
  return "?";
}

GoalKind ParseGoalKind(std::string_view name) {
  if (name == "xy_position") return GoalKind::kXyPosition;
  if (name == "z_height") return GoalKind::kZHeight;
  if (name == "ball_contact") return GoalKind::kBallContact;
  if (name == "box_to_target") return GoalKind::kBoxToTarget;
  throw Error(ErrorKind::kParse, "unknown goal kind '" + std::string(name) + "'");
}

int NodeSelector::Resolve(const MorphologyGraph& graph) const {
  return torso ? 0 : graph.EndEffector(end_effector);
}

std::string NodeSelector::Name() const {
  return torso ? std::string("torso") : "ee" + std::to_string(end_effector);
}

NodeSelector NodeSelector::Parse(std::string_view text) {
  if (text == "torso") return Torso();
  if (text.size() > 2 && text.substr(0, 2) == "ee") {
    long long k = ParseInt(text.substr(2));
    if (k >= 0) return EndEffector(static_cast<int>(k));
  }
  throw Error(ErrorKind::kParse, "bad node selector '" + std::string(text) + "'");
}

void ValidateTask(const TaskSpec& task) {
  size_t g = task.goals.size();
  if (g == 0) ConfigFail("task has no goals");
  if (task.d_min.size() != g || task.d_max.size() != g) {
    ConfigFail("d_min/d_max must have one entry per goal");
  }
  if (task.kind == TaskKind::kTwister && g > 3) {
    ConfigFail("twister tasks carry 1 to 3 goals, got " + std::to_string(g));
  }
  if (g > 3) ConfigFail("at most 3 goals are supported");
  if (task.episode_length < 1) ConfigFail("episode length must be positive");
  for (size_t i = 0; i < g; ++i) {
    const GoalDistribution& d = task.goals[i].distribution;
    if (d.r_lo < 0 || d.z_lo < 0 || d.r_lo > d.r_hi || d.z_lo > d.z_hi) {
      ConfigFail("goal " + std::to_string(i) +
                 " distribution needs 0 <= r_lo <= r_hi and 0 <= z_lo <= z_hi");
    }
    if (!(task.d_min[i] < task.d_max[i])) {
      ConfigFail("goal " + std::to_string(i) + " needs d_min < d_max");
    }
  }
}

void ValidateTaskFor(const TaskSpec& task, const MorphologyGraph& graph) {
  ValidateTask(task);
  for (const GoalTemplate& goal : task.goals) goal.target.Resolve(graph);
}

std::string SerializeTask(const TaskSpec& task) {
  std::ostringstream out;
  out << "task " << TaskKindName(task.kind) << " goals=" << task.goals.size()
      << " episode=" << task.episode_length << "\n";
  for (size_t i = 0; i < task.goals.size(); ++i) {
    const GoalTemplate& g = task.goals[i];
    out << "goal " << GoalKindName(g.kind) << " " << g.target.Name() << " "
        << FormatReal(g.distribution.cx) << " "
        << FormatReal(g.distribution.cy) << " "
        << FormatReal(g.distribution.r_lo) << " "
        << FormatReal(g.distribution.r_hi) << " "
        << FormatReal(g.distribution.z_lo) << " "
        << FormatReal(g.distribution.z_hi) << " " << FormatReal(task.d_min[i])
        << " " << FormatReal(task.d_max[i]) << "\n";
  }
  return out.str();
}

TaskSpec ParseTask(std::string_view text) {
  TaskSpec task;
  int line_no = 0;
  int declared = -1;
  bool header = false;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = SplitWhitespace(line);
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + msg);
    };
    if (!tok.empty()) {
      try {
        if (!header) {
          if (tok.size() != 4 || tok[0] != "task" ||
              tok[2].substr(0, 6) != "goals=" ||
              tok[3].substr(0, 8) != "episode=") {
            fail("expected 'task <kind> goals=<k> episode=<T>'");
          }
          task.kind = ParseTaskKind(tok[1]);
          declared = static_cast<int>(ParseInt(tok[2].substr(6)));
          task.episode_length = static_cast<int>(ParseInt(tok[3].substr(8)));
          header = true;
        } else {
          if (tok.size() != 11 || tok[0] != "goal") {
            fail("expected 'goal <kind> <selector> <cx> <cy> <r_lo> <r_hi> <z_lo> "
                 "<z_hi> <d_min> <d_max>'");
          }
          GoalTemplate g;
          g.kind = ParseGoalKind(tok[1]);
          g.target = NodeSelector::Parse(tok[2]);
          g.distribution = {ParseReal(tok[3]), ParseReal(tok[4]),
                            ParseReal(tok[5]), ParseReal(tok[6]),
                            ParseReal(tok[7]), ParseReal(tok[8])};
          task.goals.push_back(g);
          task.d_min.push_back(ParseReal(tok[9]));
          task.d_max.push_back(ParseReal(tok[10]));
        }
      } catch (const Error& e) {
        std::string msg = e.what();
        if (msg.find("line ") != std::string::npos) throw;
        fail(msg);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!header) {
    throw Error(ErrorKind::kParse, "missing 'task' header");
  }
  if (declared != task.GoalCount()) {
    throw Error(ErrorKind::kParse, "goal section truncated: declared " +
                                       std::to_string(declared) + ", found " +
                                       std::to_string(task.GoalCount()));
  }
  return task;
}

TaskSpec MakeTask(TaskKind kind, const MorphologyGraph& graph,
                  TwisterLayout layout) {
  const double reach = graph.ReachRadius();
  auto xy = [&](GoalKind kind, int ee, double lo) {
    return XyGoal(graph, kind, ee, lo);
  };
  TaskSpec task;
  task.kind = kind;
  switch (kind) {
    case TaskKind::kReach:
      task.goals = {xy(GoalKind::kXyPosition, 0, kReachLo)};
      break;
    case TaskKind::kReachHard:
      task.goals = {xy(GoalKind::kXyPosition, 0, kReachHardLo)};
      break;
    case TaskKind::kTouch:
      task.goals = {xy(GoalKind::kBallContact, 0, kReachHardLo)};
      task.goals[0].distribution.z_lo = kBallZLo;
      task.goals[0].distribution.z_hi = kBallZHi;
      break;
    case TaskKind::kPush:
      task.goals = {xy(GoalKind::kBoxToTarget, 0, kReachHardLo)};
      break;
    case TaskKind::kTwister:
      switch (layout) {
        case TwisterLayout::kReachHandsup:
          task.goals = {xy(GoalKind::kXyPosition, 0, kReachLo),
                        ZGoal(1)};
          break;
        case TwisterLayout::kReachHardHandsup:
          task.goals = {xy(GoalKind::kXyPosition, 0, kReachHardLo),
                        ZGoal(1)};
          break;
        case TwisterLayout::kReach2Handsup:
          task.goals = {xy(GoalKind::kXyPosition, 0, kReachLo),
                        xy(GoalKind::kXyPosition, 1, kReachLo),
                        ZGoal(2)};
          break;
        case TwisterLayout::kReachHandsup2:
          task.goals = {xy(GoalKind::kXyPosition, 0, kReachLo),
                        ZGoal(1), ZGoal(2)};
          break;
      }
      break;
  }
  for (const GoalTemplate& g : task.goals) {
    task.d_min.push_back(DefaultDmin(g.kind));
    task.d_max.push_back(Canonical(reach));
  }
  ValidateTaskFor(task, graph);
  return task;
}

}  // namespace mxt
