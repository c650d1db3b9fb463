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

#ifndef ACCENTKIT_KERNELS_HPP_
#define ACCENTKIT_KERNELS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace accentkit::kernels {

// Row-major double-precision kernels behind all dense math in the toolkit.
//
// Conventions:
//   - gemm_* ACCUMULATE into c (callers zero the output first when needed).
//   - gemm_nn: c(m,n) += a(m,k) * b(k,n)
//   - gemm_nt: c(m,n) += a(m,k) * b(n,k)^T
//   - gemm_tn: c(m,n) += a(k,m)^T * b(k,n)
//   - All pointers may be unaligned; n == 0 is a no-op.
struct Ops {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  void (*vadd)(const double* a, const double* b, double* out, std::size_t n);
  void (*vsub)(const double* a, const double* b, double* out, std::size_t n);
  void (*vmul)(const double* a, const double* b, double* out, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  void (*gemm_nn)(std::size_t m, std::size_t n, std::size_t k,
                  const double* a, const double* b, double* c);
  void (*gemm_nt)(std::size_t m, std::size_t n, std::size_t k,
                  const double* a, const double* b, double* c);
  void (*gemm_tn)(std::size_t m, std::size_t n, std::size_t k,
                  const double* a, const double* b, double* c);
};

// Scalar reference implementation. Always present; the oracle the SIMD
// variants are equivalence-tested against.
const Ops& scalar_ops();

// SIMD variants. Null when the build or the running CPU lacks support.
const Ops* avx2_ops();
const Ops* neon_ops();

// Every implementation usable on this machine (scalar first).
std::vector<const Ops*> available_ops();

// The implementation selected at startup: best available, unless the
// ACCENTKIT_KERNELS environment variable ("scalar", "avx2", "neon", "auto")
// says otherwise.
const Ops& active();

// Force a specific implementation ("auto" re-runs detection). Throws if the
// requested one is unavailable. Intended for tests and benchmarking.
void force(const std::string& name);

}  // namespace accentkit::kernels

#endif  // ACCENTKIT_KERNELS_HPP_
