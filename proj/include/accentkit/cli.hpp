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

#ifndef ACCENTKIT_CLI_HPP_
#define ACCENTKIT_CLI_HPP_

#include <string>
#include <vector>

namespace accentkit {

// Entry point shared by the accentkit binary and the in-process CLI tests.
// Returns the process exit code: 0 success, 2 usage/config error, 3 data
// error, 4 numerical divergence, 1 unexpected failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace accentkit

#endif  // ACCENTKIT_CLI_HPP_
