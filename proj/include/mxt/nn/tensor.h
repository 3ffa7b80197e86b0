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

#ifndef MXT_NN_TENSOR_H_
#define MXT_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mxt {

// Row-major 64-bit tensor. Every tensor the policies use is 2-D; vectors are
// 1 x n.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int rows, int cols, double fill = 0.0)
      : shape{rows, cols}, data(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return shape.empty() ? 0 : shape[0]; }
  int cols() const { return shape.size() < 2 ? 1 : shape[1]; }
  size_t size() const { return data.size(); }

  double& operator()(int r, int c) {
    return data[static_cast<size_t>(r) * cols() + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<size_t>(r) * cols() + c];
  }
  std::span<double> Row(int r) {
    return {data.data() + static_cast<size_t>(r) * cols(),
            static_cast<size_t>(cols())};
  }
  std::span<const double> Row(int r) const {
    return {data.data() + static_cast<size_t>(r) * cols(),
            static_cast<size_t>(cols())};
  }

  bool SameShape(const Tensor& o) const { return shape == o.shape; }
  bool AllFinite() const;
  void Fill(double v);

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace mxt

#endif  // MXT_NN_TENSOR_H_
