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

#ifndef MXT_EVAL_SPLIT_H_
#define MXT_EVAL_SPLIT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mxt {

enum class SplitKind {
  kInDistribution,
  kCompositionalMorphology,
  kCompositionalTask,
  kOutOfDistribution,
};

// "indist", "comp-morph", "comp-task", "ood".
std::string_view SplitKindName(SplitKind kind);
SplitKind ParseSplitKind(std::string_view name);

struct HoldoutRule {
  std::vector<int> counts = {4};   // limb counts held out for comp-morph
  std::string task = "reach_hard";  // task name held out for comp-task and ood
};

struct SplitPlan {
  SplitKind kind = SplitKind::kInDistribution;
  std::vector<std::string> universe;
  std::vector<std::string> train;
  std::vector<std::string> test;
};

// comp-morph: test = ids with a held-out count and no variation.
// comp-task: test = ids with the held-out task.
// ood: test = held-out task on varied morphologies; train excludes both the
// task and every varied morphology.
SplitPlan SplitEnvironments(std::span<const std::string> universe, SplitKind kind,
                            const HoldoutRule& rule = {});

}  // namespace mxt

#endif  // MXT_EVAL_SPLIT_H_
