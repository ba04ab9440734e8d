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

#ifndef LEXPRIO_SEEDGEN_RUNNER_H_
#define LEXPRIO_SEEDGEN_RUNNER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/index.h"
#include "lexprio/minilang/ast.h"

namespace lexprio::seedgen {

// Relative path ("src/x.mini", "tests/test_x.mini") to file contents.
using FileTree = std::map<std::string, std::string>;

inline constexpr std::int64_t kDefaultBudget = 1'000'000;
inline constexpr double kStepSeconds = 1e-6;

bool is_test_path(std::string_view path);

enum class TestOutcome { kPass, kFail, kTimeout };

std::string_view to_string(TestOutcome outcome);

struct TestResult {
  // "<file>::<function>".
  std::string id;
  TestOutcome outcome = TestOutcome::kPass;
  std::int64_t steps = 0;
  double duration_s = 0.0;
  // Fault message for failures, empty otherwise.
  std::string message;

  bool operator==(const TestResult&) const = default;
};

struct TestReport {
  // In untreated order: test files by path, functions in source order.
  std::vector<TestResult> results;

  const TestResult* find(std::string_view id) const;
  int count(TestOutcome outcome) const;
  bool operator==(const TestReport&) const = default;
};

// A file tree parsed once. Production modules come first, sorted by path.
struct ParsedTree {
  std::vector<mini::Module> production;
  std::vector<mini::Module> tests;
};

// Throws ParseError naming the offending file.
ParsedTree parse_tree(const FileTree& tree);

// Runs every test_* function of every test file, each in a fresh
// interpreter with the production modules and its own file loaded.
// Test parameters receive nil. Failed assertions and runtime faults fail
// the test, running out of `budget` steps is a timeout.
TestReport run_tests(const FileTree& tree,
                     std::int64_t budget = kDefaultBudget);

// Same over an already parsed tree, optionally with one production module
// replaced and restricted to the listed test ids (all when empty).
// `stop_on_timeout` ends the run at the first timeout.
struct RunOptions {
  std::int64_t budget = kDefaultBudget;
  const mini::Module* replacement = nullptr;
  std::vector<std::string> only;
  bool stop_on_timeout = false;
};
TestReport run_tests(const ParsedTree& tree, const RunOptions& options);

// Test documents of a tree in untreated order.
TestIndex index_tests(const ParsedTree& tree);
TestIndex index_tests(const FileTree& tree);

}  // namespace lexprio::seedgen

#endif  // LEXPRIO_SEEDGEN_RUNNER_H_
