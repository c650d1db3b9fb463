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

#include <cmath>
#include <functional>
#include <vector>

#include <doctest.h>

#include "accentkit/graph.hpp"
#include "accentkit/rng.hpp"

using namespace accentkit;

namespace {

Mat random_mat(Rng& rng, std::size_t r, std::size_t c, double lo = -1.0,
               double hi = 1.0) {
  Mat m(r, c);
  for (double& v : m.data) v = rng.uniform(lo, hi);
  return m;
}

// Central finite differences against the analytic gradient of a scalar loss
// built from a single differentiable input.
void grad_check(const std::function<Value(Graph&, Value)>& build, Mat x,
                double step = 1e-5, double tol = 1e-6) {
  Graph g;
  Value vx = g.input(x);
  Value loss = build(g, vx);
  g.backward(loss);
  Mat analytic = g.grad_of(vx);

  for (std::size_t i = 0; i < x.size(); ++i) {
    Mat xp = x, xm = x;
    xp.data[i] += step;
    xm.data[i] -= step;
    Graph gp, gm;
    double fp = gp.scalar(build(gp, gp.leaf(xp)));
    double fm = gm.scalar(build(gm, gm.leaf(xm)));
    double numeric = (fp - fm) / (2.0 * step);
    double denom = std::max({1e-8, std::abs(numeric), std::abs(analytic.data[i])});
    CAPTURE(i);
    CHECK(std::abs(analytic.data[i] - numeric) / denom < tol);
  }
}

}  // namespace

TEST_CASE("matmul forward and both gradients") {
  Rng rng(3);
  Mat a = random_mat(rng, 3, 4);
  Mat b = random_mat(rng, 4, 5);

  Graph g;
  Value va = g.input(a), vb = g.input(b);
  Value c = g.matmul(va, vb);
  CHECK(g.val(c).rows == 3);
  CHECK(g.val(c).cols == 5);
  g.backward(g.mean_all(c));
  CHECK(g.grad_of(va).same_shape(a));
  CHECK(g.grad_of(vb).same_shape(b));

  Mat fixed_b = random_mat(rng, 4, 2);
  grad_check(
      [&](Graph& gg, Value x) { return gg.mean_all(gg.matmul(x, gg.leaf(fixed_b))); },
      random_mat(rng, 3, 4));
}

TEST_CASE("elementwise ops gradients") {
  Rng rng(5);
  Mat other = random_mat(rng, 2, 3, 0.1, 1.0);

  grad_check([&](Graph& g, Value x) { return g.mean_all(g.tanh(x)); },
             random_mat(rng, 2, 3));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.sigmoid(x)); },
             random_mat(rng, 2, 3));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.mul(x, g.leaf(other))); },
             random_mat(rng, 2, 3));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.sub(g.leaf(other), x)); },
             random_mat(rng, 2, 3));
  grad_check([&](Graph& g, Value x) { return g.sum_all(g.scale(x, -2.5)); },
             random_mat(rng, 2, 3));
  // relu checked away from the kink
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.relu(x)); },
             random_mat(rng, 2, 3, 0.5, 1.5));
}

TEST_CASE("shape ops gradients") {
  Rng rng(7);
  Mat b = random_mat(rng, 2, 3);

  grad_check([&](Graph& g, Value x) { return g.mean_all(g.concat_cols(x, g.leaf(b))); },
             random_mat(rng, 2, 4));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.slice_cols(x, 1, 3)); },
             random_mat(rng, 2, 5));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.row(x, 1)); },
             random_mat(rng, 3, 4));
  grad_check([&](Graph& g, Value x) { return g.mean_all(g.transpose(x)); },
             random_mat(rng, 3, 4));
  grad_check(
      [&](Graph& g, Value x) {
        std::vector<Value> rows{g.row(x, 2), g.row(x, 0), g.row(x, 2)};
        return g.mean_all(g.stack_rows(rows));
      },
      random_mat(rng, 3, 4));
  grad_check(
      [&](Graph& g, Value x) {
        return g.mean_all(g.gather_rows(x, {1, 0, 1, 2}));
      },
      random_mat(rng, 3, 4));
  grad_check(
      [&](Graph& g, Value x) {
        return g.mean_all(g.add_rowvec(g.leaf(b), x));
      },
      random_mat(rng, 1, 3));
}

TEST_CASE("softmax rows: distribution and gradient") {
  Rng rng(11);
  Mat x = random_mat(rng, 3, 5, -3.0, 3.0);
  Graph g;
  Value y = g.softmax_rows(g.leaf(x));
  for (std::size_t r = 0; r < 3; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      double v = g.val(y).at(r, c);
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(std::abs(s - 1.0) < 1e-12);
  }

  Mat w = random_mat(rng, 3, 5);
  grad_check(
      [&](Graph& gg, Value vx) {
        return gg.mean_all(gg.mul(gg.softmax_rows(vx), gg.leaf(w)));
      },
      random_mat(rng, 3, 5));
}

TEST_CASE("normalize_rows: unit norm, zero-norm error, gradient") {
  Rng rng(13);
  Mat x = random_mat(rng, 4, 6, 0.2, 1.0);
  Graph g;
  Value y = g.normalize_rows(g.leaf(x));
  for (std::size_t r = 0; r < 4; ++r) {
    double n2 = 0.0;
    for (std::size_t c = 0; c < 6; ++c) n2 += g.val(y).at(r, c) * g.val(y).at(r, c);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
  }

  Mat zero(2, 3);
  Graph g2;
  CHECK_THROWS_AS(g2.normalize_rows(g2.leaf(zero)), Error);

  Mat w = random_mat(rng, 4, 6);
  grad_check(
      [&](Graph& gg, Value vx) {
        return gg.mean_all(gg.mul(gg.normalize_rows(vx), gg.leaf(w)));
      },
      random_mat(rng, 4, 6, 0.3, 1.2));
}

TEST_CASE("conv1d_same: forward value and gradients") {
  // 1 input channel, 2 output channels, kernel 3, hand-checked entry.
  Mat x(1, 4, {1.0, 2.0, 3.0, 4.0});
  Mat k(2, 3, {1.0, 0.0, -1.0, 0.5, 0.5, 0.5});
  Graph g;
  Value y = g.conv1d_same(g.leaf(x), g.leaf(k), 1, 3);
  CHECK(g.val(y).rows == 4);
  CHECK(g.val(y).cols == 2);
  // y[s,0] = x[s-1] - x[s+1] (zero padded)
  CHECK(g.val(y).at(0, 0) == doctest::Approx(-2.0));
  CHECK(g.val(y).at(1, 0) == doctest::Approx(1.0 - 3.0));
  CHECK(g.val(y).at(3, 0) == doctest::Approx(3.0));
  // y[s,1] = 0.5*(x[s-1]+x[s]+x[s+1])
  CHECK(g.val(y).at(1, 1) == doctest::Approx(3.0));

  Rng rng(17);
  Mat kk = random_mat(rng, 2, 6);
  grad_check(
      [&](Graph& gg, Value vx) {
        return gg.mean_all(gg.conv1d_same(vx, gg.leaf(kk), 2, 3));
      },
      random_mat(rng, 2, 5));
  Mat xx = random_mat(rng, 2, 5);
  grad_check(
      [&](Graph& gg, Value vk) {
        return gg.mean_all(gg.conv1d_same(gg.leaf(xx), vk, 2, 3));
      },
      random_mat(rng, 2, 6));
}

TEST_CASE("loss ops: values and gradients") {
  Rng rng(19);

  // MSE: constant offset of 1 gives exactly 1.
  Mat t = random_mat(rng, 3, 4);
  Mat p = t;
  for (double& v : p.data) v += 1.0;
  Graph g;
  CHECK(g.scalar(g.mse_loss(g.leaf(p), t)) == doctest::Approx(1.0));

  grad_check([&](Graph& gg, Value x) { return gg.mse_loss(x, t); },
             random_mat(rng, 3, 4));

  // BCE with saturated correct logits is ~0.
  Mat logits(2, 2, {20.0, -20.0, -20.0, 20.0});
  Mat targets(2, 2, {1.0, 0.0, 0.0, 1.0});
  Graph g3;
  CHECK(g3.scalar(g3.bce_with_logits(g3.leaf(logits), targets)) < 1e-6);
  grad_check([&](Graph& gg, Value x) { return gg.bce_with_logits(x, targets); },
             random_mat(rng, 2, 2, -2.0, 2.0));

  // Cross entropy: uniform logits over V classes = log V.
  Mat u(3, 8);
  Graph g4;
  CHECK(g4.scalar(g4.cross_entropy_rows(g4.leaf(u), {0, 5, 7})) ==
        doctest::Approx(std::log(8.0)));
  grad_check(
      [&](Graph& gg, Value x) { return gg.cross_entropy_rows(x, {2, 0, 1}); },
      random_mat(rng, 3, 4, -2.0, 2.0));
  // Masked rows (-1) are excluded.
  Mat l2(2, 4, {5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  Graph g5;
  double only_second =
      g5.scalar(g5.cross_entropy_rows(g5.leaf(l2), {-1, 3}));
  CHECK(only_second == doctest::Approx(std::log(4.0)));
}

TEST_CASE("parameters accumulate gradients; frozen parameters do not") {
  ParamStore store;
  Parameter& w = store.create("w", 2, 2);
  w.value = Mat(2, 2, {1.0, 2.0, 3.0, 4.0});
  store.zero_grads();

  Graph g;
  Value loss = g.mean_all(g.param(w));
  g.backward(loss);
  for (double v : w.grad.data) CHECK(v == doctest::Approx(0.25));

  std::uint64_t before = store.value_checksum();
  w.trainable = false;
  store.zero_grads();
  Graph g2;
  g2.backward(g2.mean_all(g2.param(w)));
  for (double v : w.grad.data) CHECK(v == 0.0);
  CHECK(store.value_checksum() == before);
}

TEST_CASE("fan-out accumulates: x used twice") {
  grad_check(
      [&](Graph& g, Value x) { return g.mean_all(g.mul(x, x)); },
      Mat(1, 3, {0.5, -1.0, 2.0}));
}

TEST_CASE("a small composed network matches finite differences") {
  Rng rng(23);
  Mat w1 = random_mat(rng, 4, 6), w2 = random_mat(rng, 6, 3);
  Mat target = random_mat(rng, 2, 3);
  grad_check(
      [&](Graph& g, Value x) {
        Value h = g.tanh(g.matmul(x, g.leaf(w1)));
        Value o = g.matmul(h, g.leaf(w2));
        return g.mse_loss(o, target);
      },
      random_mat(rng, 2, 4), 1e-5, 1e-5);
}
