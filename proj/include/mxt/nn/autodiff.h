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

#ifndef MXT_NN_AUTODIFF_H_
#define MXT_NN_AUTODIFF_H_

#include <functional>
#include <string>
#include <vector>

#include "mxt/nn/tensor.h"

namespace mxt {

// Handle to a value recorded on a Tape.
struct Var {
  int id = -1;
};

// Named parameter tensors with matching gradient buffers.
struct ParamSet {
  std::vector<std::string> names;
  std::vector<Tensor> values;
  std::vector<Tensor> grads;

  int Add(const std::string& name, Tensor value);
  int Find(const std::string& name) const;  // -1 when absent
  Tensor& Get(const std::string& name);
  const Tensor& Get(const std::string& name) const;
  void ZeroGrads();
  size_t ScalarCount() const;

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.names == b.names && a.values == b.values;
  }
};

// Contiguous row ranges; segment s covers rows [offsets[s], offsets[s+1]).
struct Segments {
  std::vector<int> offsets = {0};

  int Count() const { return static_cast<int>(offsets.size()) - 1; }
  int Begin(int s) const { return offsets[s]; }
  int Size(int s) const { return offsets[s + 1] - offsets[s]; }
  int TotalRows() const { return offsets.back(); }
};

// Attention probabilities of one forward pass, [layer][head][segment].
using AttentionMaps = std::vector<std::vector<std::vector<Tensor>>>;

// Reverse-mode tape. Every op checks its output for non-finite values and
// names the current scope in the numeric error it raises.
class Tape {
 public:
  explicit Tape(const ParamSet* params = nullptr) : params_(params) {}

  void SetScope(std::string scope) { scope_ = std::move(scope); }
  const std::string& scope() const { return scope_; }

  Var Constant(Tensor value);
  Var Param(int index);
  Var Param(const std::string& name);

  const Tensor& value(Var v) const { return nodes_[v.id].value; }
  const Tensor& grad(Var v) const { return nodes_[v.id].grad; }

  Var MatMul(Var a, Var b);
  Var AddBias(Var a, Var bias);  // bias is 1 x cols
  Var Add(Var a, Var b);
  Var Mul(Var a, Var b);
  Var MulConst(Var a, const Tensor& c);
  Var Scale(Var a, double s);
  Var Relu(Var a);
  Var Tanh(Var a);
  Var LayerNorm(Var a, Var gamma, Var beta, double eps = 1e-5);
  Var SliceCols(Var a, int begin, int end);
  Var ConcatCols(const std::vector<Var>& parts);
  // out[r] = a[r] + table[r - start of r's segment].
  Var AddSegmentRows(Var a, Var table, const Segments& segments);
  // out[r] = sum of a[n] over neighbors[r].
  Var NeighborSum(Var a, const std::vector<std::vector<int>>& neighbors);
  // out[r] = a[src_row[r], src_col[r] .. src_col[r] + width).
  Var Gather(Var a, const std::vector<int>& src_row,
             const std::vector<int>& src_col, int width);
  // Multi-head scaled dot-product attention within each segment. When
  // `maps` is non-null the probabilities are appended per head and segment.
  Var SegmentAttention(Var q, Var k, Var v, const Segments& segments, int heads,
                       std::vector<std::vector<Tensor>>* maps = nullptr);
  Var SumAll(Var a);

  // Mean over segments of the per-segment mean squared error across slots
  // with mask 1. Segments without unmasked slots contribute 0.
  Var MaskedMse(Var pred, const Tensor& target, const Tensor& mask,
                const Segments& segments);
  // Logits are rows x (slots * classes). Cross-entropy of each masked slot,
  // averaged per segment, then over segments.
  Var MaskedCrossEntropy(Var logits, const std::vector<int>& target_class,
                         const Tensor& mask, int classes,
                         const Segments& segments);

  // Seeds d(out)/d(out) = 1 for a 1 x 1 output. Parameter gradients are
  // added to `param_grads` (indexed like the ParamSet) in tape order.
  void Backward(Var out, std::vector<Tensor>* param_grads = nullptr);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::function<void()> backward;
    int param = -1;
  };

  Var Push(Tensor value, std::function<void()> backward, const char* op);
  Tensor& G(Var v) { return nodes_[v.id].grad; }
  const Tensor& V(Var v) const { return nodes_[v.id].value; }

  const ParamSet* params_;
  std::string scope_;
  std::vector<Node> nodes_;
};

}  // namespace mxt

#endif  // MXT_NN_AUTODIFF_H_
