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

#include "mxt/control_graph/observe.h"

#include <utility>

namespace mxt {

std::vector<GoalInput> GoalInputs(const EnvState& state) {
  std::vector<GoalInput> goals;
  for (size_t i = 0; i < state.goals.size(); ++i) {
    goals.push_back({state.goals[i], state.spec->goal_nodes[i]});
  }
  return goals;
}

ControlGraph ObserveCg(const EnvState& state, const ObservationSpec& spec,
                       CgVariant variant) {
  return BuildCg(variant, LocalObservations(state, spec), GoalInputs(state),
                 state.graph(), spec);
}

void HistoryWindow::Push(ControlGraph frame) {
  frames_.push_back(std::move(frame));
  while (static_cast<int>(frames_.size()) > depth_) frames_.pop_front();
}

ControlGraph HistoryWindow::Stacked() const {
  std::vector<ControlGraph> frames(frames_.begin(), frames_.end());
  return StackHistory(frames, depth_);
}

}  // namespace mxt
