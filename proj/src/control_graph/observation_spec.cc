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

#include "mxt/control_graph/observation_spec.h"

#include "mxt/common/error.h"
#include "mxt/common/io.h"

namespace mxt {
namespace {

constexpr uint16_t kBaseSetMask = 0b111111;  // p v q a ja jr
constexpr uint16_t kFullMask = (1u << kNumObsFlags) - 1;

}  // namespace

ObservationSpec ObservationSpec::FromMask(uint16_t mask) {
  if ((mask & kFullMask) == 0 || (mask & ~kFullMask) != 0) {
    throw Error(ErrorKind::kValue,
                "observation flag set must be a non-empty subset of the " +
                    std::to_string(kNumObsFlags) + " known flags");
  }
  ObservationSpec spec;
  spec.mask_ = mask;
  int offset = 0;
  for (int f = 0; f < kNumObsFlags; ++f) {
    if ((mask >> f) & 1) {
      spec.offsets_[f] = offset;
      offset += kObsFlagWidths[f];
    } else {
      spec.offsets_[f] = -1;
    }
  }
  spec.width_ = offset;
  return spec;
}

ObservationSpec ObservationSpec::FromFlags(std::initializer_list<ObsFlag> flags) {
  uint16_t mask = 0;
  for (ObsFlag f : flags) mask |= static_cast<uint16_t>(1u << static_cast<int>(f));
  return FromMask(mask);
}

ObservationSpec ObservationSpec::BaseSet() { return FromMask(kBaseSetMask); }

ObservationSpec ObservationSpec::Parse(std::string_view text) {
  uint16_t mask = 0;
  for (const std::string& part : SplitString(text, '+')) {
    if (part.empty()) continue;
    if (part == "base_set") {
      mask |= kBaseSetMask;
      continue;
    }
    if (part == "full") {
      mask |= kFullMask;
      continue;
    }
    bool found = false;
    for (int f = 0; f < kNumObsFlags; ++f) {
      if (part == kObsFlagNames[f]) {
        mask |= static_cast<uint16_t>(1u << f);
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorKind::kValue, "unknown observation flag '" + part + "'");
    }
  }
  return FromMask(mask);
}

std::string ObservationSpec::Name() const {
  std::string name;
  uint16_t rest = mask_;
  if ((mask_ & kBaseSetMask) == kBaseSetMask) {
    name = "base_set";
    rest &= static_cast<uint16_t>(~kBaseSetMask);
  }
  for (int f = 0; f < kNumObsFlags; ++f) {
    if ((rest >> f) & 1) {
      if (!name.empty()) name += "+";
      name += kObsFlagNames[f];
    }
  }
  return name;
}

ObservationSpec BuildObservationSpec(std::initializer_list<ObsFlag> flags) {
  return ObservationSpec::FromFlags(flags);
}

}  // namespace mxt
