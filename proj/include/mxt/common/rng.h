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

#ifndef MXT_COMMON_RNG_H_
#define MXT_COMMON_RNG_H_

#include <cstdint>
#include <vector>

namespace mxt {

// Counter-based generator: draw k of stream s is SplitMix64(s, k). The output
// sequence depends only on (seed, counter), so it is identical on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : seed_(seed) {}

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 bits of mantissa.
  double Uniform();
  double Uniform(double lo, double hi);
  // Box-Muller; consumes two draws per call.
  double Normal(double mean, double stddev);
  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);
  void Shuffle(std::vector<size_t>& items);

  // Independent stream derived from this one's seed and a tag.
  Rng Fork(uint64_t tag) const;

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

uint64_t SplitMix64(uint64_t x);
uint64_t HashCombine(uint64_t a, uint64_t b);

}  // namespace mxt

#endif  // MXT_COMMON_RNG_H_
