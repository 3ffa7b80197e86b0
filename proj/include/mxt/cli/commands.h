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

#ifndef MXT_CLI_COMMANDS_H_
#define MXT_CLI_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

#include "mxt/cli/run_config.h"
#include "mxt/common/error.h"
#include "mxt/distill/dataset.h"
#include "mxt/distill/train.h"
#include "mxt/eval/metric.h"

namespace mxt {

struct GenDataReport {
  std::string dataset_path;
  std::string manifest_path;
  std::vector<GenerationStats> stats;
  uint64_t checksum = 0;  // FNV-1a 64 of the dataset file
};

// Expert data for the split's training environments.
GenDataReport CmdGenData(const RunConfig& config);

struct DistillReport {
  std::string checkpoint_path;
  std::string loss_path;
  TrainResult train;
};

DistillReport CmdDistill(const RunConfig& config);

struct EvalReport {
  std::string metric_path;
  std::string summary_path;
  MetricResult metric;
  std::optional<double> baseline_mean;
  std::optional<double> improvement_pct;
};

// Rolls the checkpoint out on the split's test environments. `compare` names
// a baseline metric report; a missing file is a usage error.
EvalReport CmdEval(const RunConfig& config, const std::string& compare = "");

struct AblationRow {
  int cell = 0;
  std::string obs;
  std::string pe;
  std::string token;
  int history = 1;
  uint64_t seed = 0;
  double init_loss = 0.0;
  double final_loss = 0.0;
  double mean_distance = 0.0;
};

// Cross product of the ablate_* axes that are set, one gen-data, distill and
// eval run per cell under <out>/cell_<i>.
std::vector<AblationRow> CmdAblate(const RunConfig& config);

std::string AblationCsv(const std::vector<AblationRow>& rows);

// Exit status for an error: 1 for usage and configuration problems, 2 for
// data, numeric and I/O failures.
int ExitCodeFor(ErrorKind kind);

}  // namespace mxt

#endif  // MXT_CLI_COMMANDS_H_
