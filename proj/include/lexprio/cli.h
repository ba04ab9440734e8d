// Copyright 2026 The Lexprio Authors
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

#ifndef LEXPRIO_CLI_H_
#define LEXPRIO_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace lexprio {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;

// Runs one pipeline subcommand. `args` excludes the program name.
//
//   gen-corpus  generate a versioned MiniLang corpus
//   seed        change-based fault seeding over a corpus -> run records
//   index       snapshot the test index of one version
//   learn       aggregate term weights from run records
//   rank        rank tests for a unified diff
//   eval        APFD table for a set of strategies
//   report      tables, curves and significance tests into a directory
//
// Returns 0 on success, 1 on runtime errors (message on `err`), 2 on
// argument errors (usage on `err`).
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace lexprio

#endif  // LEXPRIO_CLI_H_
