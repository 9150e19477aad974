// Copyright 2026 The gridloc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDLOC_TOOLS_CLI_H_
#define GRIDLOC_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gridloc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfrastructure = 2;
inline constexpr int kExitPartial = 3;

// Runs `gridloc <args...>`; args[0] is the program name. Output and
// diagnostics go to the given streams so tests can run commands in-process.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridloc::cli

#endif  // GRIDLOC_TOOLS_CLI_H_
