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

#include "accentkit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace accentkit::kernels {

#if defined(ACCENTKIT_BUILD_AVX2)
const Ops* avx2_ops_impl();
#endif
#if defined(ACCENTKIT_BUILD_NEON)
const Ops* neon_ops_impl();
#endif

const Ops* avx2_ops() {
#if defined(ACCENTKIT_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_ops_impl();
  }
#endif
  return nullptr;
}

const Ops* neon_ops() {
#if defined(ACCENTKIT_BUILD_NEON)
  return neon_ops_impl();
#else
  return nullptr;
#endif
}

std::vector<const Ops*> available_ops() {
  std::vector<const Ops*> out{&scalar_ops()};
  if (const Ops* o = avx2_ops()) out.push_back(o);
  if (const Ops* o = neon_ops()) out.push_back(o);
  return out;
}

namespace {

const Ops* detect() {
  const char* env = std::getenv("ACCENTKIT_KERNELS");
  std::string want = env ? env : "auto";
  if (want == "scalar") return &scalar_ops();
  if (want == "avx2") {
    if (const Ops* o = avx2_ops()) return o;
    throw std::runtime_error("ACCENTKIT_KERNELS=avx2 but AVX2 is unavailable");
  }
  if (want == "neon") {
    if (const Ops* o = neon_ops()) return o;
    throw std::runtime_error("ACCENTKIT_KERNELS=neon but NEON is unavailable");
  }
  if (const Ops* o = avx2_ops()) return o;
  if (const Ops* o = neon_ops()) return o;
  return &scalar_ops();
}

const Ops*& selected() {
  static const Ops* ops = detect();
  return ops;
}

}  // namespace

const Ops& active() { return *selected(); }

void force(const std::string& name) {
  if (name == "auto") {
    selected() = detect();
    return;
  }
  for (const Ops* o : available_ops()) {
    if (name == o->name) {
      selected() = o;
      return;
    }
  }
  throw std::runtime_error("kernel implementation not available: " + name);
}

}  // namespace accentkit::kernels
