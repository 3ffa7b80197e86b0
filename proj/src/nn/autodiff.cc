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

#include "mxt/nn/autodiff.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Core>

#include "mxt/common/error.h"

namespace mxt {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;

ConstMap View(const Tensor& t) { return ConstMap(t.data.data(), t.rows(), t.cols()); }
MutMap View(Tensor& t) { return MutMap(t.data.data(), t.rows(), t.cols()); }
ConstMap CView(const Tensor& t) { return View(t); }

std::string ShapeText(const Tensor& t) {
  return std::to_string(t.rows()) + "x" + std::to_string(t.cols());
}

[[noreturn]] void ShapeFail(const char* op, const Tensor& a, const Tensor& b) {
  throw Error(ErrorKind::kShape, std::string(op) + ": shapes " + ShapeText(a) +
                                     " and " + ShapeText(b) + " do not match");
}

}  // namespace

bool Tensor::AllFinite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor::Fill(double v) { std::fill(data.begin(), data.end(), v); }

int ParamSet::Add(const std::string& name, Tensor value) {
  if (Find(name) >= 0) {
    throw Error(ErrorKind::kConfig, "duplicate parameter '" + name + "'");
  }
  names.push_back(name);
  grads.emplace_back(value.rows(), value.cols());
  values.push_back(std::move(value));
  return static_cast<int>(names.size()) - 1;
}

int ParamSet::Find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Tensor& ParamSet::Get(const std::string& name) {
  int i = Find(name);
  if (i < 0) throw Error(ErrorKind::kIndex, "no parameter '" + name + "'");
  return values[i];
}

const Tensor& ParamSet::Get(const std::string& name) const {
  int i = Find(name);
  if (i < 0) throw Error(ErrorKind::kIndex, "no parameter '" + name + "'");
  return values[i];
}

void ParamSet::ZeroGrads() {
  for (size_t i = 0; i < grads.size(); ++i) {
    if (grads[i].shape != values[i].shape) {
      grads[i] = Tensor(values[i].rows(), values[i].cols());
    } else {
      grads[i].Fill(0.0);
    }
  }
}

size_t ParamSet::ScalarCount() const {
  size_t n = 0;
  for (const Tensor& t : values) n += t.size();
  return n;
}

Var Tape::Push(Tensor value, std::function<void()> backward, const char* op) {
  if (!value.AllFinite()) {
    throw Error(ErrorKind::kNumeric,
                "non-finite value in " + (scope_.empty() ? std::string("?") : scope_) +
                    " (" + op + ")");
  }
  nodes_.push_back({std::move(value), Tensor(), std::move(backward), -1});
  return {static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Constant(Tensor value) { return Push(std::move(value), nullptr, "input"); }

Var Tape::Param(int index) {
  if (params_ == nullptr || index < 0 ||
      index >= static_cast<int>(params_->values.size())) {
    throw Error(ErrorKind::kIndex, "parameter index out of range");
  }
  Var v = Push(params_->values[index], nullptr, "param");
  nodes_[v.id].param = index;
  return v;
}

Var Tape::Param(const std::string& name) {
  if (params_ == nullptr) throw Error(ErrorKind::kIndex, "tape has no parameters");
  int i = params_->Find(name);
  if (i < 0) throw Error(ErrorKind::kIndex, "no parameter '" + name + "'");
  return Param(i);
}

Var Tape::MatMul(Var a, Var b) {
  const Tensor& A = V(a);
  const Tensor& B = V(b);
  if (A.cols() != B.rows()) ShapeFail("matmul", A, B);
  Tensor out(A.rows(), B.cols());
  View(out).noalias() = View(A) * View(B);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, b, id] {
    const Tensor& g = nodes_[id].grad;
    View(G(a)).noalias() += View(g) * View(V(b)).transpose();
    View(G(b)).noalias() += View(V(a)).transpose() * View(g);
  }, "matmul");
}

Var Tape::AddBias(Var a, Var bias) {
  const Tensor& A = V(a);
  const Tensor& b = V(bias);
  if (b.rows() != 1 || b.cols() != A.cols()) ShapeFail("add_bias", A, b);
  Tensor out = A;
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) out(r, c) += b(0, c);
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, bias, id] {
    const Tensor& g = nodes_[id].grad;
    View(G(a)) += View(g);
    Tensor& gb = G(bias);
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.cols(); ++c) gb(0, c) += g(r, c);
    }
  }, "add_bias");
}

Var Tape::Add(Var a, Var b) {
  if (!V(a).SameShape(V(b))) ShapeFail("add", V(a), V(b));
  Tensor out = V(a);
  View(out) += View(V(b));
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, b, id] {
    View(G(a)) += View(nodes_[id].grad);
    View(G(b)) += View(nodes_[id].grad);
  }, "add");
}

Var Tape::Mul(Var a, Var b) {
  if (!V(a).SameShape(V(b))) ShapeFail("mul", V(a), V(b));
  Tensor out = V(a);
  View(out).array() *= View(V(b)).array();
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, b, id] {
    const Tensor& g = nodes_[id].grad;
    View(G(a)).array() += View(g).array() * View(V(b)).array();
    View(G(b)).array() += View(g).array() * View(V(a)).array();
  }, "mul");
}

Var Tape::MulConst(Var a, const Tensor& c) {
  if (!V(a).SameShape(c)) ShapeFail("mul_const", V(a), c);
  Tensor out = V(a);
  View(out).array() *= View(c).array();
  auto mask = std::make_shared<Tensor>(c);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, mask, id] {
    View(G(a)).array() += View(nodes_[id].grad).array() * View(*mask).array();
  }, "mul_const");
}

Var Tape::Scale(Var a, double s) {
  Tensor out = V(a);
  View(out) *= s;
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, s, id] {
    View(G(a)) += s * View(nodes_[id].grad);
  }, "scale");
}

Var Tape::Relu(Var a) {
  Tensor out = V(a);
  for (double& v : out.data) v = v > 0.0 ? v : 0.0;
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, id] {
    const Tensor& g = nodes_[id].grad;
    const Tensor& x = V(a);
    Tensor& ga = G(a);
    for (size_t i = 0; i < x.size(); ++i) {
      if (x.data[i] > 0.0) ga.data[i] += g.data[i];
    }
  }, "relu");
}

Var Tape::Tanh(Var a) {
  Tensor out = V(a);
  for (double& v : out.data) v = std::tanh(v);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, id] {
    const Tensor& g = nodes_[id].grad;
    const Tensor& y = nodes_[id].value;
    Tensor& ga = G(a);
    for (size_t i = 0; i < y.size(); ++i) {
      ga.data[i] += g.data[i] * (1.0 - y.data[i] * y.data[i]);
    }
  }, "tanh");
}

Var Tape::LayerNorm(Var a, Var gamma, Var beta, double eps) {
  const Tensor& x = V(a);
  const int n = x.rows();
  const int m = x.cols();
  if (V(gamma).rows() != 1 || V(gamma).cols() != m) ShapeFail("layer_norm", x, V(gamma));
  if (V(beta).rows() != 1 || V(beta).cols() != m) ShapeFail("layer_norm", x, V(beta));
  auto xhat = std::make_shared<Tensor>(n, m);
  auto inv_std = std::make_shared<std::vector<double>>(n);
  Tensor out(n, m);
  const Tensor& gm = V(gamma);
  const Tensor& bt = V(beta);
  for (int r = 0; r < n; ++r) {
    double mean = 0.0;
    for (int c = 0; c < m; ++c) mean += x(r, c);
    mean /= m;
    double var = 0.0;
    for (int c = 0; c < m; ++c) var += (x(r, c) - mean) * (x(r, c) - mean);
    var /= m;
    double is = 1.0 / std::sqrt(var + eps);
    (*inv_std)[r] = is;
    for (int c = 0; c < m; ++c) {
      double h = (x(r, c) - mean) * is;
      (*xhat)(r, c) = h;
      out(r, c) = h * gm(0, c) + bt(0, c);
    }
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, gamma, beta, xhat, inv_std, id] {
    const Tensor& g = nodes_[id].grad;
    const Tensor& gm = V(gamma);
    Tensor& ga = G(a);
    Tensor& gg = G(gamma);
    Tensor& gb = G(beta);
    const int n = g.rows();
    const int m = g.cols();
    std::vector<double> dh(m);
    for (int r = 0; r < n; ++r) {
      double mean_dh = 0.0;
      double mean_dh_h = 0.0;
      for (int c = 0; c < m; ++c) {
        dh[c] = g(r, c) * gm(0, c);
        mean_dh += dh[c];
        mean_dh_h += dh[c] * (*xhat)(r, c);
        gg(0, c) += g(r, c) * (*xhat)(r, c);
        gb(0, c) += g(r, c);
      }
      mean_dh /= m;
      mean_dh_h /= m;
      for (int c = 0; c < m; ++c) {
        ga(r, c) += (*inv_std)[r] *
                    (dh[c] - mean_dh - (*xhat)(r, c) * mean_dh_h);
      }
    }
  }, "layer_norm");
}

Var Tape::SliceCols(Var a, int begin, int end) {
  const Tensor& x = V(a);
  if (begin < 0 || end > x.cols() || begin > end) {
    throw Error(ErrorKind::kShape, "slice [" + std::to_string(begin) + ", " +
                                       std::to_string(end) + ") of " +
                                       ShapeText(x));
  }
  Tensor out(x.rows(), end - begin);
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = begin; c < end; ++c) out(r, c - begin) = x(r, c);
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, begin, id] {
    const Tensor& g = nodes_[id].grad;
    Tensor& ga = G(a);
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.cols(); ++c) ga(r, begin + c) += g(r, c);
    }
  }, "slice");
}

Var Tape::ConcatCols(const std::vector<Var>& parts) {
  if (parts.empty()) throw Error(ErrorKind::kShape, "concat of nothing");
  int rows = V(parts[0]).rows();
  int cols = 0;
  for (Var p : parts) {
    if (V(p).rows() != rows) ShapeFail("concat", V(parts[0]), V(p));
    cols += V(p).cols();
  }
  Tensor out(rows, cols);
  int at = 0;
  for (Var p : parts) {
    const Tensor& x = V(p);
    for (int r = 0; r < rows; ++r) {
      std::copy(x.Row(r).begin(), x.Row(r).end(), out.Row(r).begin() + at);
    }
    at += x.cols();
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, parts, id] {
    const Tensor& g = nodes_[id].grad;
    int at = 0;
    for (Var p : parts) {
      Tensor& gp = G(p);
      for (int r = 0; r < gp.rows(); ++r) {
        for (int c = 0; c < gp.cols(); ++c) gp(r, c) += g(r, at + c);
      }
      at += gp.cols();
    }
  }, "concat");
}

Var Tape::AddSegmentRows(Var a, Var table, const Segments& segments) {
  const Tensor& x = V(a);
  const Tensor& t = V(table);
  if (t.cols() != x.cols() || segments.TotalRows() != x.rows()) {
    ShapeFail("add_segment_rows", x, t);
  }
  for (int s = 0; s < segments.Count(); ++s) {
    if (segments.Size(s) > t.rows()) {
      throw Error(ErrorKind::kShape,
                  "graph with " + std::to_string(segments.Size(s)) +
                      " nodes exceeds the " + std::to_string(t.rows()) +
                      "-row position table");
    }
  }
  Tensor out = x;
  for (int s = 0; s < segments.Count(); ++s) {
    for (int i = 0; i < segments.Size(s); ++i) {
      int r = segments.Begin(s) + i;
      for (int c = 0; c < x.cols(); ++c) out(r, c) += t(i, c);
    }
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, table, segments, id] {
    const Tensor& g = nodes_[id].grad;
    View(G(a)) += View(g);
    Tensor& gt = G(table);
    for (int s = 0; s < segments.Count(); ++s) {
      for (int i = 0; i < segments.Size(s); ++i) {
        int r = segments.Begin(s) + i;
        for (int c = 0; c < g.cols(); ++c) gt(i, c) += g(r, c);
      }
    }
  }, "add_segment_rows");
}

Var Tape::NeighborSum(Var a, const std::vector<std::vector<int>>& neighbors) {
  const Tensor& x = V(a);
  if (static_cast<int>(neighbors.size()) != x.rows()) {
    throw Error(ErrorKind::kShape, "neighbor list length differs from rows");
  }
  Tensor out(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r) {
    for (int n : neighbors[r]) {
      for (int c = 0; c < x.cols(); ++c) out(r, c) += x(n, c);
    }
  }
  auto nbr = std::make_shared<std::vector<std::vector<int>>>(neighbors);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, nbr, id] {
    const Tensor& g = nodes_[id].grad;
    Tensor& ga = G(a);
    for (int r = 0; r < g.rows(); ++r) {
      for (int n : (*nbr)[r]) {
        for (int c = 0; c < g.cols(); ++c) ga(n, c) += g(r, c);
      }
    }
  }, "neighbor_sum");
}

Var Tape::Gather(Var a, const std::vector<int>& src_row,
                 const std::vector<int>& src_col, int width) {
  const Tensor& x = V(a);
  if (src_row.size() != src_col.size()) {
    throw Error(ErrorKind::kShape, "gather index lists differ in length");
  }
  int rows = static_cast<int>(src_row.size());
  Tensor out(rows, width);
  for (int r = 0; r < rows; ++r) {
    if (src_row[r] < 0 || src_row[r] >= x.rows() || src_col[r] < 0 ||
        src_col[r] + width > x.cols()) {
      throw Error(ErrorKind::kIndex, "gather index out of range");
    }
    for (int c = 0; c < width; ++c) out(r, c) = x(src_row[r], src_col[r] + c);
  }
  auto rows_idx = std::make_shared<std::vector<int>>(src_row);
  auto cols_idx = std::make_shared<std::vector<int>>(src_col);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, rows_idx, cols_idx, id] {
    const Tensor& g = nodes_[id].grad;
    Tensor& ga = G(a);
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.cols(); ++c) {
        ga((*rows_idx)[r], (*cols_idx)[r] + c) += g(r, c);
      }
    }
  }, "gather");
}

Var Tape::SegmentAttention(Var q, Var k, Var v, const Segments& segments,
                           int heads, std::vector<std::vector<Tensor>>* maps) {
  const Tensor& Q = V(q);
  const Tensor& K = V(k);
  const Tensor& Vv = V(v);
  if (!Q.SameShape(K) || !Q.SameShape(Vv)) ShapeFail("attention", Q, K);
  if (heads < 1 || Q.cols() % heads != 0) {
    throw Error(ErrorKind::kConfig, "head count must divide the width");
  }
  if (segments.TotalRows() != Q.rows()) {
    throw Error(ErrorKind::kShape, "segments do not cover the rows");
  }
  const int dh = Q.cols() / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  // probs[h][s] is the softmax matrix of head h, segment s.
  auto probs = std::make_shared<std::vector<std::vector<RowMat>>>(
      heads, std::vector<RowMat>(segments.Count()));
  Tensor out(Q.rows(), Q.cols());
  ConstMap q_all = CView(Q);
  ConstMap k_all = CView(K);
  ConstMap v_all = CView(Vv);
  MutMap o_all = View(out);
  for (int h = 0; h < heads; ++h) {
    for (int s = 0; s < segments.Count(); ++s) {
      int b = segments.Begin(s);
      int n = segments.Size(s);
      auto qs = q_all.block(b, h * dh, n, dh);
      auto ks = k_all.block(b, h * dh, n, dh);
      auto vs = v_all.block(b, h * dh, n, dh);
      RowMat p = scale * (qs * ks.transpose());
      for (int i = 0; i < n; ++i) {
        double mx = p.row(i).maxCoeff();
        p.row(i) = (p.row(i).array() - mx).exp();
        p.row(i) /= p.row(i).sum();
      }
      o_all.block(b, h * dh, n, dh).noalias() = p * vs;
      (*probs)[h][s] = std::move(p);
    }
  }
  if (maps != nullptr) {
    maps->assign(heads, std::vector<Tensor>(segments.Count()));
    for (int h = 0; h < heads; ++h) {
      for (int s = 0; s < segments.Count(); ++s) {
        const RowMat& p = (*probs)[h][s];
        Tensor t(static_cast<int>(p.rows()), static_cast<int>(p.cols()));
        View(t) = p;
        (*maps)[h][s] = std::move(t);
      }
    }
  }
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, q, k, v, segments, heads, dh, scale, probs,
                               id] {
    ConstMap g_all = CView(nodes_[id].grad);
    ConstMap q_all = CView(V(q));
    ConstMap k_all = CView(V(k));
    ConstMap v_all = CView(V(v));
    MutMap gq = View(G(q));
    MutMap gk = View(G(k));
    MutMap gv = View(G(v));
    for (int h = 0; h < heads; ++h) {
      for (int s = 0; s < segments.Count(); ++s) {
        int b = segments.Begin(s);
        int n = segments.Size(s);
        const RowMat& p = (*probs)[h][s];
        auto go = g_all.block(b, h * dh, n, dh);
        RowMat dp = go * v_all.block(b, h * dh, n, dh).transpose();
        gv.block(b, h * dh, n, dh).noalias() += p.transpose() * go;
        RowMat ds(n, n);
        for (int i = 0; i < n; ++i) {
          double dot = (dp.row(i).array() * p.row(i).array()).sum();
          ds.row(i) = p.row(i).array() * (dp.row(i).array() - dot);
        }
        ds *= scale;
        gq.block(b, h * dh, n, dh).noalias() += ds * k_all.block(b, h * dh, n, dh);
        gk.block(b, h * dh, n, dh).noalias() +=
            ds.transpose() * q_all.block(b, h * dh, n, dh);
      }
    }
  }, "attention");
}

Var Tape::SumAll(Var a) {
  Tensor out(1, 1);
  for (double x : V(a).data) out(0, 0) += x;
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, a, id] {
    double g = nodes_[id].grad(0, 0);
    for (double& x : G(a).data) x += g;
  }, "sum");
}

Var Tape::MaskedMse(Var pred, const Tensor& target, const Tensor& mask,
                    const Segments& segments) {
  const Tensor& p = V(pred);
  if (!p.SameShape(target)) ShapeFail("mse", p, target);
  if (!p.SameShape(mask)) ShapeFail("mse", p, mask);
  if (segments.TotalRows() != p.rows() || segments.Count() == 0) {
    throw Error(ErrorKind::kShape, "segments do not cover the rows");
  }
  const int nseg = segments.Count();
  auto weight = std::make_shared<std::vector<double>>(nseg, 0.0);
  Tensor out(1, 1);
  for (int s = 0; s < nseg; ++s) {
    double count = 0.0;
    double sum = 0.0;
    for (int r = segments.Begin(s); r < segments.Begin(s) + segments.Size(s); ++r) {
      for (int c = 0; c < p.cols(); ++c) {
        if (mask(r, c) == 0.0) continue;
        double d = p(r, c) - target(r, c);
        sum += d * d;
        count += 1.0;
      }
    }
    if (count > 0.0) {
      (*weight)[s] = 1.0 / (count * nseg);
      out(0, 0) += sum * (*weight)[s];
    }
  }
  auto tgt = std::make_shared<Tensor>(target);
  auto msk = std::make_shared<Tensor>(mask);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, pred, tgt, msk, weight, segments, id] {
    double g = nodes_[id].grad(0, 0);
    const Tensor& p = V(pred);
    Tensor& gp = G(pred);
    for (int s = 0; s < segments.Count(); ++s) {
      for (int r = segments.Begin(s); r < segments.Begin(s) + segments.Size(s); ++r) {
        for (int c = 0; c < p.cols(); ++c) {
          if ((*msk)(r, c) == 0.0) continue;
          gp(r, c) += g * 2.0 * (p(r, c) - (*tgt)(r, c)) * (*weight)[s];
        }
      }
    }
  }, "mse");
}

Var Tape::MaskedCrossEntropy(Var logits, const std::vector<int>& target_class,
                             const Tensor& mask, int classes,
                             const Segments& segments) {
  const Tensor& z = V(logits);
  const int slots = mask.cols();
  if (z.rows() != mask.rows() || z.cols() != slots * classes ||
      static_cast<int>(target_class.size()) != mask.rows() * slots) {
    throw Error(ErrorKind::kShape, "cross-entropy logits " + ShapeText(z) +
                                       " do not match mask " + ShapeText(mask));
  }
  if (segments.TotalRows() != z.rows() || segments.Count() == 0) {
    throw Error(ErrorKind::kShape, "segments do not cover the rows");
  }
  const int nseg = segments.Count();
  auto weight = std::make_shared<std::vector<double>>(z.rows(), 0.0);
  auto probs = std::make_shared<Tensor>(z.rows(), z.cols());
  Tensor out(1, 1);
  for (int s = 0; s < nseg; ++s) {
    double count = 0.0;
    for (int r = segments.Begin(s); r < segments.Begin(s) + segments.Size(s); ++r) {
      for (int k = 0; k < slots; ++k) count += mask(r, k) != 0.0;
    }
    if (count == 0.0) continue;
    for (int r = segments.Begin(s); r < segments.Begin(s) + segments.Size(s); ++r) {
      (*weight)[r] = 1.0 / (count * nseg);
    }
  }
  for (int r = 0; r < z.rows(); ++r) {
    for (int k = 0; k < slots; ++k) {
      if (mask(r, k) == 0.0) continue;
      int t = target_class[r * slots + k];
      if (t < 0 || t >= classes) {
        throw Error(ErrorKind::kIndex, "target class " + std::to_string(t) +
                                           " outside [0, " +
                                           std::to_string(classes) + ")");
      }
      const double* row = &z.data[static_cast<size_t>(r) * z.cols() + k * classes];
      double mx = *std::max_element(row, row + classes);
      double sum = 0.0;
      for (int j = 0; j < classes; ++j) sum += std::exp(row[j] - mx);
      double log_z = mx + std::log(sum);
      for (int j = 0; j < classes; ++j) {
        (*probs)(r, k * classes + j) = std::exp(row[j] - log_z);
      }
      out(0, 0) += (log_z - row[t]) * (*weight)[r];
    }
  }
  auto tgt = std::make_shared<std::vector<int>>(target_class);
  auto msk = std::make_shared<Tensor>(mask);
  int id = static_cast<int>(nodes_.size());
  return Push(std::move(out), [this, logits, tgt, msk, weight, probs, classes,
                               slots, id] {
    double g = nodes_[id].grad(0, 0);
    Tensor& gz = G(logits);
    for (int r = 0; r < gz.rows(); ++r) {
      for (int k = 0; k < slots; ++k) {
        if ((*msk)(r, k) == 0.0) continue;
        double w = g * (*weight)[r];
        int t = (*tgt)[r * slots + k];
        for (int j = 0; j < classes; ++j) {
          double d = (*probs)(r, k * classes + j) - (j == t ? 1.0 : 0.0);
          gz(r, k * classes + j) += w * d;
        }
      }
    }
  }, "cross_entropy");
}

void Tape::Backward(Var out, std::vector<Tensor>* param_grads) {
  if (V(out).rows() != 1 || V(out).cols() != 1) {
    throw Error(ErrorKind::kShape, "backward needs a 1x1 output");
  }
  for (int i = 0; i <= out.id; ++i) {
    Node& n = nodes_[i];
    n.grad = Tensor(n.value.rows(), n.value.cols());
  }
  nodes_[out.id].grad(0, 0) = 1.0;
  for (int i = out.id; i >= 0; --i) {
    if (nodes_[i].backward) nodes_[i].backward();
  }
  if (param_grads == nullptr) return;
  for (int i = 0; i <= out.id; ++i) {
    const Node& n = nodes_[i];
    if (n.param < 0) continue;
    View((*param_grads)[n.param]) += View(n.grad);
  }
}

}  // namespace mxt
