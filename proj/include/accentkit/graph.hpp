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

#ifndef ACCENTKIT_GRAPH_HPP_
#define ACCENTKIT_GRAPH_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "accentkit/mat.hpp"

namespace accentkit {

// A trainable tensor plus its gradient and optimizer state. Parameters live
// in a ParamStore (stable addresses); graphs reference them by pointer.
struct Parameter {
  std::string name;
  Mat value;
  Mat grad;
  Mat adam_m;
  Mat adam_v;
  bool trainable = true;

  void zero_grad() {
    if (!grad.same_shape(value)) grad = Mat(value.rows, value.cols);
    grad.zero();
  }
};

class ParamStore {
 public:
  Parameter& create(const std::string& name, std::size_t rows, std::size_t cols);
  Parameter* find(const std::string& name);
  const Parameter* find(const std::string& name) const;
  Parameter& require(const std::string& name);

  // Creation order; the order optimizers and checkpoints iterate in.
  const std::deque<Parameter>& all() const { return params_; }
  std::deque<Parameter>& all() { return params_; }

  std::size_t total_elements() const;
  void zero_grads();
  void set_trainable(bool trainable);

  // FNV-1a over the raw bytes of every parameter value, in creation order.
  // Used by the frozen-model assertions.
  std::uint64_t value_checksum() const;

 private:
  std::deque<Parameter> params_;
  std::unordered_map<std::string, Parameter*> by_name_;
};

// Handle into a Graph's node arena.
struct Value {
  int idx = -1;
  bool valid() const { return idx >= 0; }
};

// Define-by-run reverse-mode autodiff over Mat. Append-only, so node index
// order is a topological order; backward() walks it in reverse. Single
// threaded by design.
class Graph {
 public:
  // Constant input; gradients do not flow into it.
  Value leaf(Mat v);
  // Differentiable input; read its gradient back with grad_of().
  Value input(Mat v);
  // Parameter leaf. Copies the current value; backward accumulates into
  // p.grad when the parameter is trainable.
  Value param(Parameter& p);

  Value matmul(Value a, Value b);
  Value add(Value a, Value b);          // same shape
  Value add_rowvec(Value a, Value b);   // a: M×N, b: 1×N broadcast
  Value sub(Value a, Value b);
  Value mul(Value a, Value b);          // elementwise
  Value scale(Value a, double s);
  Value tanh(Value a);
  Value sigmoid(Value a);
  Value relu(Value a);
  Value concat_cols(Value a, Value b);  // same rows
  Value slice_cols(Value a, std::size_t c0, std::size_t c1);
  Value row(Value a, std::size_t r);    // 1×N view of row r
  Value stack_rows(const std::vector<Value>& rows);  // each 1×N
  Value transpose(Value a);
  Value softmax_rows(Value a);
  // x: Cin×S, kernel: Cout×(Cin*ksize), zero padded, ksize odd. Returns S×Cout.
  Value conv1d_same(Value x, Value kernel, std::size_t cin, std::size_t ksize);
  Value gather_rows(Value table, std::vector<int> ids);
  Value normalize_rows(Value a);        // L2; throws on zero-norm row
  Value mean_all(Value a);              // 1×1
  Value sum_all(Value a);               // 1×1

  // Losses (all return 1×1 scalars).
  Value mse_loss(Value pred, Mat target);
  Value bce_with_logits(Value logits, Mat targets);
  // Mean cross entropy over rows; targets are class indices, -1 is ignored.
  Value cross_entropy_rows(Value logits, std::vector<int> targets);

  const Mat& val(Value v) const;
  double scalar(Value v) const;

  // Reverse pass from a 1×1 loss node.
  void backward(Value loss);
  // Gradient accumulated at a node (zeros if the loss never touched it).
  Mat grad_of(Value v) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat val;
    Mat grad;
    bool needs_grad = false;
    bool touched = false;
    std::function<void(Graph&)> back;
  };

  std::vector<Node> nodes_;

  Value push(Mat val, bool needs_grad, std::function<void(Graph&)> back);
  bool needs(Value v) const { return nodes_[v.idx].needs_grad; }
  // Accumulation buffer for a node's gradient (allocates on first touch).
  Mat& gbuf(int idx);
  void accumulate(int idx, const Mat& g);

  friend struct GraphBackdoor;
};

}  // namespace accentkit

#endif  // ACCENTKIT_GRAPH_HPP_
