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

#ifndef MXT_DISTILL_CHECKPOINT_H_
#define MXT_DISTILL_CHECKPOINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mxt/nn/autodiff.h"
#include "mxt/nn/policy.h"

namespace mxt {

inline constexpr uint32_t kCheckpointFormatVersion = 1;

// Named tensors as stored in checkpoints and attention exports.
struct TensorTable {
  std::vector<std::string> names;
  std::vector<Tensor> tensors;
};

// Layout: "CGCK", version u32, arch tag, config block, tensor table
// (name, rank, extents, f64 data), trailing FNV-1a 64 of everything before.
std::vector<uint8_t> EncodeCheckpoint(const PolicyParams& policy);
PolicyParams DecodeCheckpoint(std::span<const uint8_t> bytes);
void SaveCheckpoint(const std::string& path, const PolicyParams& policy);
PolicyParams LoadCheckpoint(const std::string& path);
// Throws a config error when the stored architecture differs from `expected`.
PolicyParams LoadCheckpointAs(const std::string& path, const PolicyConfig& expected);

// Same framing with arch tag "tensors" and an empty config block.
std::vector<uint8_t> EncodeTensorTable(const TensorTable& table);
TensorTable DecodeTensorTable(std::span<const uint8_t> bytes);

}  // namespace mxt

#endif  // MXT_DISTILL_CHECKPOINT_H_
