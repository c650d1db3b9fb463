// Copyright (c) 2026 The AccentKit Authors
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

#include "accentkit/graph.hpp"

#include <cmath>

namespace accentkit {

namespace {
const kernels::Ops& K() { return kernels::active(); }
}  // namespace

// ---------------------------------------------------------------------------
// ParamStore

Parameter& ParamStore::create(const std::string& name, std::size_t rows,
                              std::size_t cols) {
  AK_REQUIRE(by_name_.find(name) == by_name_.end(),
             "ParamStore: duplicate parameter name: " + name);
  params_.push_back(Parameter{name, Mat(rows, cols), Mat(rows, cols), Mat(), Mat(), true});
  Parameter& p = params_.back();
  by_name_[name] = &p;
  return p;
}

Parameter* ParamStore::find(const std::string& name) {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

const Parameter* ParamStore::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

Parameter& ParamStore::require(const std::string& name) {
  Parameter* p = find(name);
  AK_REQUIRE(p != nullptr, "ParamStore: missing parameter: " + name);
  return *p;
}

std::size_t ParamStore::total_elements() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

void ParamStore::zero_grads() {
  for (auto& p : params_) p.zero_grad();
}

void ParamStore::set_trainable(bool trainable) {
  for (auto& p : params_) p.trainable = trainable;
}

std::uint64_t ParamStore::value_checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& p : params_) {
    const unsigned char* bytes =
        reinterpret_cast<const unsigned char*>(p.value.data.data());
    for (std::size_t i = 0; i < p.value.size() * sizeof(double); ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Graph plumbing

Value Graph::push(Mat val, bool needs_grad, std::function<void(Graph&)> back) {
  nodes_.push_back(Node{std::move(val), Mat(), needs_grad, false, std::move(back)});
  return Value{static_cast<int>(nodes_.size()) - 1};
}

const Mat& Graph::val(Value v) const { return nodes_[v.idx].val; }

double Graph::scalar(Value v) const {
  const Mat& m = val(v);
  AK_REQUIRE(m.size() == 1, "Graph::scalar: node is not 1x1");
  return m.data[0];
}

Mat& Graph::gbuf(int idx) {
  Node& n = nodes_[idx];
  if (!n.touched) {
    n.grad = Mat(n.val.rows, n.val.cols);
    n.touched = true;
  }
  return n.grad;
}

void Graph::accumulate(int idx, const Mat& g) {
  Mat& buf = gbuf(idx);
  K().axpy(1.0, g.ptr(), buf.ptr(), g.size());
}

void Graph::backward(Value loss) {
  AK_REQUIRE(val(loss).size() == 1, "backward: loss must be scalar");
  gbuf(loss.idx).data[0] = 1.0;
  for (int i = loss.idx; i >= 0; --i) {
    Node& n = nodes_[i];
    if (n.touched && n.back) n.back(*this);
  }
}

Mat Graph::grad_of(Value v) const {
  const Node& n = nodes_[v.idx];
  if (!n.touched) return Mat(n.val.rows, n.val.cols);
  return n.grad;
}

// ---------------------------------------------------------------------------
// Leaves

Value Graph::leaf(Mat v) { return push(std::move(v), false, nullptr); }

Value Graph::input(Mat v) { return push(std::move(v), true, nullptr); }

Value Graph::param(Parameter& p) {
  Parameter* pp = &p;
  Mat v = p.value;
  if (!p.trainable) return push(std::move(v), false, nullptr);
  Value out = push(std::move(v), true, nullptr);
  int idx = out.idx;
  nodes_[idx].back = [idx, pp](Graph& g) {
    const Mat& gd = g.nodes_[idx].grad;
    if (!pp->grad.same_shape(pp->value)) pp->zero_grad();
    K().axpy(1.0, gd.ptr(), pp->grad.ptr(), gd.size());
  };
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

Value Graph::matmul(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(A.cols == B.rows, "matmul: inner dimensions differ");
  Mat C(A.rows, B.cols);
  K().gemm_nn(A.rows, B.cols, A.cols, A.ptr(), B.ptr(), C.ptr());
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  nodes_[oi].back = [oi, ai, bi](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& A2 = g.nodes_[ai].val;
    const Mat& B2 = g.nodes_[bi].val;
    if (g.nodes_[ai].needs_grad) {
      Mat& dA = g.gbuf(ai);
      K().gemm_nt(A2.rows, A2.cols, B2.cols, dC.ptr(), B2.ptr(), dA.ptr());
    }
    if (g.nodes_[bi].needs_grad) {
      Mat& dB = g.gbuf(bi);
      K().gemm_tn(B2.rows, B2.cols, A2.rows, A2.ptr(), dC.ptr(), dB.ptr());
    }
  };
  return out;
}

Value Graph::add(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(A.same_shape(B), "add: shape mismatch");
  Mat C(A.rows, A.cols);
  K().vadd(A.ptr(), B.ptr(), C.ptr(), A.size());
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  nodes_[oi].back = [oi, ai, bi](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    if (g.nodes_[ai].needs_grad) g.accumulate(ai, dC);
    if (g.nodes_[bi].needs_grad) g.accumulate(bi, dC);
  };
  return out;
}

Value Graph::add_rowvec(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(B.rows == 1 && B.cols == A.cols, "add_rowvec: b must be 1×cols(a)");
  Mat C(A.rows, A.cols);
  for (std::size_t r = 0; r < A.rows; ++r) {
    K().vadd(A.row_ptr(r), B.ptr(), C.row_ptr(r), A.cols);
  }
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  nodes_[oi].back = [oi, ai, bi](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    if (g.nodes_[ai].needs_grad) g.accumulate(ai, dC);
    if (g.nodes_[bi].needs_grad) {
      Mat& dB = g.gbuf(bi);
      for (std::size_t r = 0; r < dC.rows; ++r) {
        K().axpy(1.0, dC.row_ptr(r), dB.ptr(), dC.cols);
      }
    }
  };
  return out;
}

Value Graph::sub(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(A.same_shape(B), "sub: shape mismatch");
  Mat C(A.rows, A.cols);
  K().vsub(A.ptr(), B.ptr(), C.ptr(), A.size());
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  nodes_[oi].back = [oi, ai, bi](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    if (g.nodes_[ai].needs_grad) g.accumulate(ai, dC);
    if (g.nodes_[bi].needs_grad) {
      Mat& dB = g.gbuf(bi);
      K().axpy(-1.0, dC.ptr(), dB.ptr(), dC.size());
    }
  };
  return out;
}

Value Graph::mul(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(A.same_shape(B), "mul: shape mismatch");
  Mat C(A.rows, A.cols);
  K().vmul(A.ptr(), B.ptr(), C.ptr(), A.size());
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  nodes_[oi].back = [oi, ai, bi](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& A2 = g.nodes_[ai].val;
    const Mat& B2 = g.nodes_[bi].val;
    if (g.nodes_[ai].needs_grad) {
      Mat tmp(dC.rows, dC.cols);
      K().vmul(dC.ptr(), B2.ptr(), tmp.ptr(), dC.size());
      g.accumulate(ai, tmp);
    }
    if (g.nodes_[bi].needs_grad) {
      Mat tmp(dC.rows, dC.cols);
      K().vmul(dC.ptr(), A2.ptr(), tmp.ptr(), dC.size());
      g.accumulate(bi, tmp);
    }
  };
  return out;
}

Value Graph::scale(Value a, double s) {
  Mat C = val(a);
  K().scale(s, C.ptr(), C.size());
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai, s](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    Mat& dA = g.gbuf(ai);
    K().axpy(s, dC.ptr(), dA.ptr(), dC.size());
  };
  return out;
}

// ---------------------------------------------------------------------------
// Nonlinearities

Value Graph::tanh(Value a) {
  Mat C = val(a);
  for (double& v : C.data) v = std::tanh(v);
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& Y = g.nodes_[oi].val;
    Mat& dA = g.gbuf(ai);
    for (std::size_t i = 0; i < dC.size(); ++i) {
      dA.data[i] += dC.data[i] * (1.0 - Y.data[i] * Y.data[i]);
    }
  };
  return out;
}

Value Graph::sigmoid(Value a) {
  Mat C = val(a);
  for (double& v : C.data) v = 1.0 / (1.0 + std::exp(-v));
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& Y = g.nodes_[oi].val;
    Mat& dA = g.gbuf(ai);
    for (std::size_t i = 0; i < dC.size(); ++i) {
      dA.data[i] += dC.data[i] * Y.data[i] * (1.0 - Y.data[i]);
    }
  };
  return out;
}

Value Graph::relu(Value a) {
  Mat C = val(a);
  for (double& v : C.data) v = v > 0.0 ? v : 0.0;
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& X = g.nodes_[ai].val;
    Mat& dA = g.gbuf(ai);
    for (std::size_t i = 0; i < dC.size(); ++i) {
      if (X.data[i] > 0.0) dA.data[i] += dC.data[i];
    }
  };
  return out;
}

// ---------------------------------------------------------------------------
// Shape ops

Value Graph::concat_cols(Value a, Value b) {
  const Mat& A = val(a);
  const Mat& B = val(b);
  AK_REQUIRE(A.rows == B.rows, "concat_cols: row counts differ");
  Mat C(A.rows, A.cols + B.cols);
  for (std::size_t r = 0; r < A.rows; ++r) {
    std::copy(A.row_ptr(r), A.row_ptr(r) + A.cols, C.row_ptr(r));
    std::copy(B.row_ptr(r), B.row_ptr(r) + B.cols, C.row_ptr(r) + A.cols);
  }
  bool ng = needs(a) || needs(b);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx, bi = b.idx;
  std::size_t ac = A.cols;
  nodes_[oi].back = [oi, ai, bi, ac](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    if (g.nodes_[ai].needs_grad) {
      Mat& dA = g.gbuf(ai);
      for (std::size_t r = 0; r < dA.rows; ++r) {
        K().axpy(1.0, dC.row_ptr(r), dA.row_ptr(r), dA.cols);
      }
    }
    if (g.nodes_[bi].needs_grad) {
      Mat& dB = g.gbuf(bi);
      for (std::size_t r = 0; r < dB.rows; ++r) {
        K().axpy(1.0, dC.row_ptr(r) + ac, dB.row_ptr(r), dB.cols);
      }
    }
  };
  return out;
}

Value Graph::slice_cols(Value a, std::size_t c0, std::size_t c1) {
  const Mat& A = val(a);
  AK_REQUIRE(c0 < c1 && c1 <= A.cols, "slice_cols: bad range");
  Mat C(A.rows, c1 - c0);
  for (std::size_t r = 0; r < A.rows; ++r) {
    std::copy(A.row_ptr(r) + c0, A.row_ptr(r) + c1, C.row_ptr(r));
  }
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai, c0](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    Mat& dA = g.gbuf(ai);
    for (std::size_t r = 0; r < dC.rows; ++r) {
      K().axpy(1.0, dC.row_ptr(r), dA.row_ptr(r) + c0, dC.cols);
    }
  };
  return out;
}

Value Graph::row(Value a, std::size_t r) {
  const Mat& A = val(a);
  AK_REQUIRE(r < A.rows, "row: index out of range");
  Mat C(1, A.cols);
  std::copy(A.row_ptr(r), A.row_ptr(r) + A.cols, C.ptr());
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai, r](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    Mat& dA = g.gbuf(ai);
    K().axpy(1.0, dC.ptr(), dA.row_ptr(r), dC.cols);
  };
  return out;
}

Value Graph::stack_rows(const std::vector<Value>& rows) {
  AK_REQUIRE(!rows.empty(), "stack_rows: empty input");
  std::size_t cols = val(rows[0]).cols;
  Mat C(rows.size(), cols);
  bool ng = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Mat& R = val(rows[i]);
    AK_REQUIRE(R.rows == 1 && R.cols == cols, "stack_rows: rows must be 1×N");
    std::copy(R.ptr(), R.ptr() + cols, C.row_ptr(i));
    ng = ng || needs(rows[i]);
  }
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx;
  std::vector<int> idxs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) idxs[i] = rows[i].idx;
  nodes_[oi].back = [oi, idxs](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    for (std::size_t i = 0; i < idxs.size(); ++i) {
      if (!g.nodes_[idxs[i]].needs_grad) continue;
      Mat& dR = g.gbuf(idxs[i]);
      K().axpy(1.0, dC.row_ptr(i), dR.ptr(), dC.cols);
    }
  };
  return out;
}

Value Graph::transpose(Value a) {
  Mat C = accentkit::transpose(val(a));
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    Mat dT = accentkit::transpose(g.nodes_[oi].grad);
    g.accumulate(ai, dT);
  };
  return out;
}

Value Graph::gather_rows(Value table, std::vector<int> ids) {
  const Mat& T = val(table);
  Mat C(ids.size(), T.cols);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    AK_REQUIRE(ids[i] >= 0 && static_cast<std::size_t>(ids[i]) < T.rows,
               "gather_rows: id out of range");
    std::copy(T.row_ptr(ids[i]), T.row_ptr(ids[i]) + T.cols, C.row_ptr(i));
  }
  bool ng = needs(table);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ti = table.idx;
  nodes_[oi].back = [oi, ti, ids](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    Mat& dT = g.gbuf(ti);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      K().axpy(1.0, dC.row_ptr(i), dT.row_ptr(ids[i]), dC.cols);
    }
  };
  return out;
}

// ---------------------------------------------------------------------------
// Softmax / normalization

Value Graph::softmax_rows(Value a) {
  Mat C = val(a);
  for (std::size_t r = 0; r < C.rows; ++r) {
    double* p = C.row_ptr(r);
    double mx = p[0];
    for (std::size_t c = 1; c < C.cols; ++c) mx = std::max(mx, p[c]);
    double z = 0.0;
    for (std::size_t c = 0; c < C.cols; ++c) {
      p[c] = std::exp(p[c] - mx);
      z += p[c];
    }
    for (std::size_t c = 0; c < C.cols; ++c) p[c] /= z;
  }
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& Y = g.nodes_[oi].val;
    Mat& dA = g.gbuf(ai);
    for (std::size_t r = 0; r < Y.rows; ++r) {
      double inner = K().dot(dC.row_ptr(r), Y.row_ptr(r), Y.cols);
      for (std::size_t c = 0; c < Y.cols; ++c) {
        dA.row_ptr(r)[c] += Y.row_ptr(r)[c] * (dC.row_ptr(r)[c] - inner);
      }
    }
  };
  return out;
}

Value Graph::normalize_rows(Value a) {
  const Mat& A = val(a);
  Mat C(A.rows, A.cols);
  std::vector<double> norms(A.rows);
  for (std::size_t r = 0; r < A.rows; ++r) {
    double n2 = K().dot(A.row_ptr(r), A.row_ptr(r), A.cols);
    double n = std::sqrt(n2);
    AK_REQUIRE(n > 1e-12, "normalize_rows: zero-norm row " + std::to_string(r));
    norms[r] = n;
    for (std::size_t c = 0; c < A.cols; ++c) C.row_ptr(r)[c] = A.row_ptr(r)[c] / n;
  }
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai, norms](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& Y = g.nodes_[oi].val;
    Mat& dA = g.gbuf(ai);
    for (std::size_t r = 0; r < Y.rows; ++r) {
      double inner = K().dot(dC.row_ptr(r), Y.row_ptr(r), Y.cols);
      for (std::size_t c = 0; c < Y.cols; ++c) {
        dA.row_ptr(r)[c] += (dC.row_ptr(r)[c] - Y.row_ptr(r)[c] * inner) / norms[r];
      }
    }
  };
  return out;
}

// ---------------------------------------------------------------------------
// Convolution (location features)

Value Graph::conv1d_same(Value x, Value kernel, std::size_t cin, std::size_t ksize) {
  const Mat& X = val(x);
  const Mat& W = val(kernel);
  AK_REQUIRE(ksize % 2 == 1, "conv1d_same: kernel size must be odd");
  AK_REQUIRE(X.rows == cin, "conv1d_same: input channel mismatch");
  AK_REQUIRE(W.cols == cin * ksize, "conv1d_same: kernel shape mismatch");
  const std::size_t S = X.cols;
  const std::size_t cout = W.rows;
  const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(ksize / 2);
  Mat C(S, cout);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t co = 0; co < cout; ++co) {
      double acc = 0.0;
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const double* kr = W.row_ptr(co) + ci * ksize;
        for (std::size_t j = 0; j < ksize; ++j) {
          std::ptrdiff_t t = static_cast<std::ptrdiff_t>(s) +
                             static_cast<std::ptrdiff_t>(j) - off;
          if (t < 0 || t >= static_cast<std::ptrdiff_t>(S)) continue;
          acc += kr[j] * X.at(ci, static_cast<std::size_t>(t));
        }
      }
      C.at(s, co) = acc;
    }
  }
  bool ng = needs(x) || needs(kernel);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, xi = x.idx, ki = kernel.idx;
  nodes_[oi].back = [oi, xi, ki, cin, ksize, off](Graph& g) {
    const Mat& dC = g.nodes_[oi].grad;
    const Mat& X2 = g.nodes_[xi].val;
    const Mat& W2 = g.nodes_[ki].val;
    const std::size_t S = X2.cols;
    const std::size_t cout = W2.rows;
    if (g.nodes_[ki].needs_grad) {
      Mat& dW = g.gbuf(ki);
      for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t co = 0; co < cout; ++co) {
          double gd = dC.at(s, co);
          if (gd == 0.0) continue;
          for (std::size_t ci = 0; ci < cin; ++ci) {
            double* dkr = dW.row_ptr(co) + ci * ksize;
            for (std::size_t j = 0; j < ksize; ++j) {
              std::ptrdiff_t t = static_cast<std::ptrdiff_t>(s) +
                                 static_cast<std::ptrdiff_t>(j) - off;
              if (t < 0 || t >= static_cast<std::ptrdiff_t>(S)) continue;
              dkr[j] += gd * X2.at(ci, static_cast<std::size_t>(t));
            }
          }
        }
      }
    }
    if (g.nodes_[xi].needs_grad) {
      Mat& dX = g.gbuf(xi);
      for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t co = 0; co < cout; ++co) {
          double gd = dC.at(s, co);
          if (gd == 0.0) continue;
          for (std::size_t ci = 0; ci < cin; ++ci) {
            const double* kr = W2.row_ptr(co) + ci * ksize;
            for (std::size_t j = 0; j < ksize; ++j) {
              std::ptrdiff_t t = static_cast<std::ptrdiff_t>(s) +
                                 static_cast<std::ptrdiff_t>(j) - off;
              if (t < 0 || t >= static_cast<std::ptrdiff_t>(S)) continue;
              dX.at(ci, static_cast<std::size_t>(t)) += gd * kr[j];
            }
          }
        }
      }
    }
  };
  return out;
}

// ---------------------------------------------------------------------------
// Reductions and losses

Value Graph::sum_all(Value a) {
  const Mat& A = val(a);
  Mat C(1, 1);
  C.data[0] = K().sum(A.ptr(), A.size());
  bool ng = needs(a);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, ai = a.idx;
  nodes_[oi].back = [oi, ai](Graph& g) {
    double gd = g.nodes_[oi].grad.data[0];
    Mat& dA = g.gbuf(ai);
    for (double& v : dA.data) v += gd;
  };
  return out;
}

Value Graph::mean_all(Value a) {
  std::size_t n = val(a).size();
  AK_REQUIRE(n > 0, "mean_all: empty input");
  return scale(sum_all(a), 1.0 / static_cast<double>(n));
}

Value Graph::mse_loss(Value pred, Mat target) {
  const Mat& P = val(pred);
  AK_REQUIRE(P.same_shape(target), "mse_loss: shape mismatch");
  const std::size_t n = P.size();
  Mat C(1, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = P.data[i] - target.data[i];
    acc += d * d;
  }
  C.data[0] = acc / static_cast<double>(n);
  bool ng = needs(pred);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, pi = pred.idx;
  nodes_[oi].back = [oi, pi, target = std::move(target)](Graph& g) {
    double gd = g.nodes_[oi].grad.data[0];
    const Mat& P2 = g.nodes_[pi].val;
    Mat& dP = g.gbuf(pi);
    double s = 2.0 * gd / static_cast<double>(P2.size());
    for (std::size_t i = 0; i < P2.size(); ++i) {
      dP.data[i] += s * (P2.data[i] - target.data[i]);
    }
  };
  return out;
}

Value Graph::bce_with_logits(Value logits, Mat targets) {
  const Mat& X = val(logits);
  AK_REQUIRE(X.same_shape(targets), "bce_with_logits: shape mismatch");
  const std::size_t n = X.size();
  AK_REQUIRE(n > 0, "bce_with_logits: empty input");
  Mat C(1, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = X.data[i], t = targets.data[i];
    acc += std::max(x, 0.0) - x * t + std::log1p(std::exp(-std::abs(x)));
  }
  C.data[0] = acc / static_cast<double>(n);
  bool ng = needs(logits);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, li = logits.idx;
  nodes_[oi].back = [oi, li, targets = std::move(targets)](Graph& g) {
    double gd = g.nodes_[oi].grad.data[0];
    const Mat& X2 = g.nodes_[li].val;
    Mat& dX = g.gbuf(li);
    double s = gd / static_cast<double>(X2.size());
    for (std::size_t i = 0; i < X2.size(); ++i) {
      double sig = 1.0 / (1.0 + std::exp(-X2.data[i]));
      dX.data[i] += s * (sig - targets.data[i]);
    }
  };
  return out;
}

Value Graph::cross_entropy_rows(Value logits, std::vector<int> targets) {
  const Mat& X = val(logits);
  AK_REQUIRE(X.rows == targets.size(),
             "cross_entropy_rows: row count (" + std::to_string(X.rows) +
                 ") != target length (" + std::to_string(targets.size()) + ")");
  std::size_t counted = 0;
  double acc = 0.0;
  for (std::size_t r = 0; r < X.rows; ++r) {
    if (targets[r] < 0) continue;
    AK_REQUIRE(static_cast<std::size_t>(targets[r]) < X.cols,
               "cross_entropy_rows: target class out of range");
    const double* p = X.row_ptr(r);
    double mx = p[0];
    for (std::size_t c = 1; c < X.cols; ++c) mx = std::max(mx, p[c]);
    double z = 0.0;
    for (std::size_t c = 0; c < X.cols; ++c) z += std::exp(p[c] - mx);
    acc += std::log(z) + mx - p[targets[r]];
    ++counted;
  }
  AK_REQUIRE(counted > 0, "cross_entropy_rows: no unmasked positions");
  Mat C(1, 1);
  C.data[0] = acc / static_cast<double>(counted);
  bool ng = needs(logits);
  Value out = push(std::move(C), ng, nullptr);
  if (!ng) return out;
  int oi = out.idx, li = logits.idx;
  nodes_[oi].back = [oi, li, targets = std::move(targets), counted](Graph& g) {
    double gd = g.nodes_[oi].grad.data[0] / static_cast<double>(counted);
    const Mat& X2 = g.nodes_[li].val;
    Mat& dX = g.gbuf(li);
    for (std::size_t r = 0; r < X2.rows; ++r) {
      if (targets[r] < 0) continue;
      const double* p = X2.row_ptr(r);
      double mx = p[0];
      for (std::size_t c = 1; c < X2.cols; ++c) mx = std::max(mx, p[c]);
      double z = 0.0;
      for (std::size_t c = 0; c < X2.cols; ++c) z += std::exp(p[c] - mx);
      for (std::size_t c = 0; c < X2.cols; ++c) {
        double soft = std::exp(p[c] - mx) / z;
        dX.row_ptr(r)[c] += gd * (soft - (static_cast<int>(c) == targets[r] ? 1.0 : 0.0));
      }
    }
  };
  return out;
}

}  // namespace accentkit
