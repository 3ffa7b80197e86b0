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

#include "mxt/eval/split.h"

#include <algorithm>

#include "mxt/common/error.h"
#include "mxt/env/suite.h"

namespace mxt {

std::string_view SplitKindName(SplitKind kind) {
  switch (kind) {
    case SplitKind::kInDistribution: return "indist";
    case SplitKind::kCompositionalMorphology: return "comp-morph";
    case SplitKind::kCompositionalTask: return "comp-task";
    case SplitKind::kOutOfDistribution: return "ood";
  }
  return "?";
}

SplitKind ParseSplitKind(std::string_view name) {
  if (name == "indist") return SplitKind::kInDistribution;
  if (name == "comp-morph") return SplitKind::kCompositionalMorphology;
  if (name == "comp-task") return SplitKind::kCompositionalTask;
  if (name == "ood") return SplitKind::kOutOfDistribution;
  throw Error(ErrorKind::kConfig, "unknown split '" + std::string(name) + "'");
}

SplitPlan SplitEnvironments(std::span<const std::string> universe, SplitKind kind,
                            const HoldoutRule& rule) {
  if (universe.empty()) throw Error(ErrorKind::kConfig, "empty environment universe");
  SplitPlan plan;
  plan.kind = kind;
  plan.universe.assign(universe.begin(), universe.end());
  if (kind == SplitKind::kInDistribution) {
    plan.train = plan.universe;
    plan.test = plan.universe;
    return plan;
  }
  for (const std::string& id : plan.universe) {
    EnvIdParts parts = ParseEnvId(id);
    bool varied = parts.variation.has_value();
    bool held_task = parts.task_name == rule.task;
    bool held_count = std::find(rule.counts.begin(), rule.counts.end(), parts.count) !=
                      rule.counts.end();
    bool test = false;
    bool train = true;
    switch (kind) {
      case SplitKind::kCompositionalMorphology:
        test = held_count && !varied;
        train = !held_count;
        break;
      case SplitKind::kCompositionalTask:
        test = held_task;
        train = !held_task;
        break;
      case SplitKind::kOutOfDistribution:
        test = held_task && varied;
        train = !held_task && !varied;
        break;
      case SplitKind::kInDistribution:
        break;
    }
    if (test) plan.test.push_back(id);
    else if (train) plan.train.push_back(id);
  }
  if (plan.train.empty()) {
    throw Error(ErrorKind::kConfig, "the hold-out rule leaves no training environments");
  }
  if (plan.test.empty()) {
    throw Error(ErrorKind::kConfig, "the hold-out rule selects no test environments");
  }
  return plan;
}

}  // namespace mxt
