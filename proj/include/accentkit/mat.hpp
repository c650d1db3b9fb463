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

#ifndef ACCENTKIT_MAT_HPP_
#define ACCENTKIT_MAT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "accentkit/common.hpp"
#include "accentkit/kernels.hpp"

namespace accentkit {

// Dense row-major double matrix. A row vector is a Mat with rows == 1.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  Mat(std::size_t r, std::size_t c, std::vector<double> d)
      : rows(r), cols(c), data(std::move(d)) {
    AK_REQUIRE(data.size() == rows * cols, "Mat: data size does not match shape");
  }

  std::size_t size() const { return rows * cols; }
  bool empty() const { return size() == 0; }

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  double* row_ptr(std::size_t r) { return data.data() + r * cols; }
  const double* row_ptr(std::size_t r) const { return data.data() + r * cols; }

  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
  void zero() { fill(0.0); }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }

  bool all_finite() const {
    for (double v : data) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

inline Mat matmul(const Mat& a, const Mat& b) {
  AK_REQUIRE(a.cols == b.rows, "matmul: inner dimensions differ");
  Mat c(a.rows, b.cols);
  kernels::active().gemm_nn(a.rows, b.cols, a.cols, a.ptr(), b.ptr(), c.ptr());
  return c;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
  }
  return t;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  AK_REQUIRE(a.same_shape(b), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  }
  return m;
}

inline double cosine_similarity(const double* a, const double* b, std::size_t n) {
  const auto& k = kernels::active();
  double na = std::sqrt(k.dot(a, a, n));
  double nb = std::sqrt(k.dot(b, b, n));
  AK_REQUIRE(na > 0.0 && nb > 0.0, "cosine_similarity: zero-norm vector");
  return k.dot(a, b, n) / (na * nb);
}

}  // namespace accentkit

#endif  // ACCENTKIT_MAT_HPP_
