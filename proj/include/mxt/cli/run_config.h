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

#ifndef MXT_CLI_RUN_CONFIG_H_
#define MXT_CLI_RUN_CONFIG_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mxt/distill/train.h"
#include "mxt/eval/split.h"
#include "mxt/nn/policy.h"

namespace mxt {

// Key-value run settings. Values resolve in order: explicit setting, preset
// ("desk" or "full"), built-in default.
class RunConfig {
 public:
  // `key = value` lines; '#' starts a comment. Unknown keys are config errors.
  static RunConfig Parse(std::string_view text);
  static RunConfig Load(const std::string& path);

  void Set(const std::string& key, const std::string& value);
  bool IsSet(const std::string& key) const { return explicit_.count(key) > 0; }
  std::string Get(const std::string& key) const;
  long long GetInt(const std::string& key) const;
  double GetReal(const std::string& key) const;
  bool GetSwitch(const std::string& key) const;  // on/off
  std::vector<std::string> GetList(const std::string& key) const;  // comma separated

  // Every known key with its resolved value, sorted by key.
  std::string Serialize() const;

  static const std::vector<std::string>& Keys();

  uint64_t Seed() const;
  std::string OutDir() const;
  std::string DatasetPath() const;     // defaults to <out>/dataset.cgds
  std::string CheckpointPath() const;  // defaults to <out>/checkpoint.cgck
  ObservationSpec Obs() const;
  PolicyConfig Policy(int feature_width) const;
  TrainConfig Training() const;
  SplitPlan Split() const;

 private:
  std::map<std::string, std::string> explicit_;
};

}  // namespace mxt

#endif  // MXT_CLI_RUN_CONFIG_H_
