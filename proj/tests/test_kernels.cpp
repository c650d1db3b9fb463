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
#include <vector>

#include <doctest.h>

#include "accentkit/kernels.hpp"
#include "accentkit/rng.hpp"

using namespace accentkit;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

// Tolerance for FMA-vs-scalar reassociation differences.
bool close(double a, double b, double scale = 1.0) {
  return std::abs(a - b) <= 1e-10 * std::max(1.0, scale);
}

}  // namespace

TEST_CASE("every SIMD variant matches the scalar reference") {
  const auto& ref = kernels::scalar_ops();
  Rng rng(77);
  // Sizes straddle the vector width and the unrolled tails.
  const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 64, 129};

  for (const kernels::Ops* ops : kernels::available_ops()) {
    CAPTURE(ops->name);
    for (std::size_t n : sizes) {
      auto a = random_vec(rng, n);
      auto b = random_vec(rng, n);

      CHECK(close(ops->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n),
                  static_cast<double>(n)));
      CHECK(close(ops->sum(a.data(), n), ref.sum(a.data(), n),
                  static_cast<double>(n)));

      auto y1 = random_vec(rng, n);
      auto y2 = y1;
      ops->axpy(0.37, a.data(), y1.data(), n);
      ref.axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]));

      auto s1 = a, s2 = a;
      ops->scale(-1.25, s1.data(), n);
      ref.scale(-1.25, s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(s1[i] == s2[i]);

      std::vector<double> o1(n), o2(n);
      ops->vadd(a.data(), b.data(), o1.data(), n);
      ref.vadd(a.data(), b.data(), o2.data(), n);
      CHECK(o1 == o2);
      ops->vsub(a.data(), b.data(), o1.data(), n);
      ref.vsub(a.data(), b.data(), o2.data(), n);
      CHECK(o1 == o2);
      ops->vmul(a.data(), b.data(), o1.data(), n);
      ref.vmul(a.data(), b.data(), o2.data(), n);
      CHECK(o1 == o2);
    }
  }
}

TEST_CASE("gemm variants match a naive triple loop") {
  Rng rng(101);
  const std::size_t shapes[][3] = {
      {1, 1, 1}, {1, 7, 3}, {2, 5, 4}, {3, 8, 8}, {4, 17, 9}, {5, 64, 33}};

  for (const kernels::Ops* ops : kernels::available_ops()) {
    CAPTURE(ops->name);
    for (auto& sh : shapes) {
      std::size_t m = sh[0], n = sh[1], k = sh[2];
      auto a = random_vec(rng, m * k);
      auto b = random_vec(rng, k * n);
      auto bt = random_vec(rng, n * k);
      auto at = random_vec(rng, k * m);

      std::vector<double> c(m * n, 0.5), want(m * n, 0.5);
      ops->gemm_nn(m, n, k, a.data(), b.data(), c.data());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t p = 0; p < k; ++p)
            want[i * n + j] += a[i * k + p] * b[p * n + j];
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(close(c[i], want[i], static_cast<double>(k)));

      std::fill(c.begin(), c.end(), 0.0);
      std::fill(want.begin(), want.end(), 0.0);
      ops->gemm_nt(m, n, k, a.data(), bt.data(), c.data());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t p = 0; p < k; ++p)
            want[i * n + j] += a[i * k + p] * bt[j * k + p];
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(close(c[i], want[i], static_cast<double>(k)));

      std::fill(c.begin(), c.end(), 0.0);
      std::fill(want.begin(), want.end(), 0.0);
      ops->gemm_tn(m, n, k, at.data(), b.data(), c.data());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t p = 0; p < k; ++p)
            want[i * n + j] += at[p * m + i] * b[p * n + j];
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(close(c[i], want[i], static_cast<double>(k)));
    }
  }
}

TEST_CASE("kernel selection can be forced and restored") {
  kernels::force("scalar");
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_THROWS(kernels::force("no-such-backend"));
  kernels::force("auto");
  CHECK(kernels::active().name != nullptr);
}
