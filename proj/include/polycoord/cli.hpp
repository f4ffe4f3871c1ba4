// Copyright 2026 The polycoord Authors.
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

#ifndef POLYCOORD_CLI_HPP
#define POLYCOORD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace polycoord {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFalse = 1,  // e.g. not an equilibrium, dynamics cycled
  kExitInputError = 2,
  kExitBudgetExceeded = 3,
  kExitInternalError = 4,  // a self-check failed
};

/// Runs one command. `args` excludes the program name. Game files named "-"
/// are read from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace polycoord

#endif  // POLYCOORD_CLI_HPP
