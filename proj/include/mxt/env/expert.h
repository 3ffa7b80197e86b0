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

#ifndef MXT_ENV_EXPERT_H_
#define MXT_ENV_EXPERT_H_

#include <vector>

#include "mxt/env/env.h"

namespace mxt {

inline constexpr double kDefaultExpertGain = 10.0;

// Jacobian-transpose controller: for every goal still farther than its d_min,
// adds -gain * J^T * e / max(|e|, 0.2), where e is the error vector whose
// norm is the goal distance, then clamps each action to [-1, 1]. Push goals
// steer the target node behind the box first, then through it.
std::vector<double> ScriptedExpert(const EnvState& state,
                                   double gain = kDefaultExpertGain);

}  // namespace mxt

#endif  // MXT_ENV_EXPERT_H_
