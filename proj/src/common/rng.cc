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

#include "mxt/common/rng.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace mxt {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t HashCombine(uint64_t a, uint64_t b) {
  return SplitMix64(a ^ (SplitMix64(b) + 0x632be59bd9b4e019ULL));
}

uint64_t Rng::NextU64() {
  uint64_t key = SplitMix64(seed_);
  return SplitMix64(key + counter_++ * 0xd1b54a32d192ed03ULL);
}

double Rng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Rng::Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

double Rng::Normal(double mean, double stddev) {
  double u1 = Uniform();
  double u2 = Uniform();
  // 1 - u1 lies in (0, 1], so the log is finite.
  double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t Rng::Below(uint64_t n) {
  // Rejection keeps the draw unbiased.
  uint64_t limit = ~0ULL - (~0ULL % n);
  uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return x % n;
}

void Rng::Shuffle(std::vector<size_t>& items) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(Below(i));
    std::swap(items[i - 1], items[j]);
  }
}

Rng Rng::Fork(uint64_t tag) const { return Rng(HashCombine(seed_, tag)); }

}  // namespace mxt
