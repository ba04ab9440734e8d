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

#ifndef LEXPRIO_SEEDGEN_CORPUS_H_
#define LEXPRIO_SEEDGEN_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lexprio/seedgen/runner.h"

namespace lexprio::seedgen {

struct CorpusParams {
  int modules = 8;
  int functions_per_module = 6;
  int tests_per_function = 4;
  // Number of nouns available for function and variable names.
  int vocab_size = 120;
  // Number of versions, the first one included.
  int history_steps = 30;
  // Integration tests calling functions of several modules.
  int noise_tests = 8;
};

// Versions oldest first.
struct CorpusHistory {
  std::vector<FileTree> versions;
};

// Deterministic synthetic project: production modules src/<theme>.mini
// whose functions are named and written with words drawn from a noun pool,
// one test file per module with tests that call and name their target,
// and tests/test_workflow.mini with cross-module tests. Each later version
// rewrites, extends or tweaks the bodies of 1 to 3 functions and updates
// the expected values of the tests. Throws lexprio::Error on parameters
// below 1 (history_steps below 2, noise_tests below 0).
CorpusHistory generate_corpus(std::uint64_t seed, const CorpusParams& params);

// "0000", "0001", ...
std::string version_name(std::size_t index);

// First 12 hex digits of a content hash over paths and contents.
std::string tree_hash(const FileTree& tree);

// Writes <root>/history/<version>/<path> for every file. Fails if
// <root>/history already exists.
void write_history(const CorpusHistory& history,
                   const std::filesystem::path& root);

// Reads what write_history produced. Throws lexprio::Error when the layout
// is missing or has gaps.
CorpusHistory read_history(const std::filesystem::path& root);

FileTree read_tree(const std::filesystem::path& dir);

}  // namespace lexprio::seedgen

#endif  // LEXPRIO_SEEDGEN_CORPUS_H_
