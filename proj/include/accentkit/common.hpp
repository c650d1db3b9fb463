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

#ifndef ACCENTKIT_COMMON_HPP_
#define ACCENTKIT_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace accentkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags, bad config keys/values. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Broken manifests, unreadable audio, incompatible checkpoints. Exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss during training. Exit code 4.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace accentkit

#define AK_REQUIRE(cond, msg)                        \
  do {                                               \
    if (!(cond)) throw ::accentkit::Error(msg);      \
  } while (0)

#endif  // ACCENTKIT_COMMON_HPP_
