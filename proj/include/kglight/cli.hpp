//  Copyright 2026 The kglight Authors. All Rights Reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kglight {

inline constexpr const char* kToolVersion = "0.1.0";

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitEnvironment = 3,
  kExitData = 4,
};

/// Runs `kglight <args...>` (args exclude the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics and progress to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kglight
