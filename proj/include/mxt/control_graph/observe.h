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

#ifndef MXT_CONTROL_GRAPH_OBSERVE_H_
#define MXT_CONTROL_GRAPH_OBSERVE_H_

#include <deque>
#include <vector>

#include "mxt/control_graph/control_graph.h"
#include "mxt/env/env.h"

namespace mxt {

// Goal values of the current scene paired with their target rows.
std::vector<GoalInput> GoalInputs(const EnvState& state);

ControlGraph ObserveCg(const EnvState& state, const ObservationSpec& spec,
                       CgVariant variant);

// Rolling window of the last `depth` single-frame graphs of one episode.
class HistoryWindow {
 public:
  explicit HistoryWindow(int depth) : depth_(depth) {}

  void Push(ControlGraph frame);
  void Clear() { frames_.clear(); }
  // Newest frame stacked with up to depth - 1 predecessors, zero-filled.
  ControlGraph Stacked() const;

 private:
  int depth_;
  std::deque<ControlGraph> frames_;
};

}  // namespace mxt

#endif  // MXT_CONTROL_GRAPH_OBSERVE_H_
