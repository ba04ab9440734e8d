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

#ifndef LEXPRIO_SEEDGEN_SEED_H_
#define LEXPRIO_SEEDGEN_SEED_H_

#include <cstdint>
#include <vector>

#include "lexprio/learn.h"
#include "lexprio/query.h"
#include "lexprio/seedgen/corpus.h"
#include "lexprio/seedgen/mutation.h"
#include "lexprio/seedgen/runner.h"

namespace lexprio::seedgen {

struct SeedOptions {
  std::int64_t budget = kDefaultBudget;
  int window = kDefaultWindow;
  int parallelism = 1;
};

struct SeedStats {
  int versions_visited = 0;
  int versions_without_passing_tests = 0;
  int versions_without_candidates = 0;
  int candidates = 0;
  int kept = 0;
  int discarded_unchanged = 0;
  int discarded_timeout = 0;

  bool operator==(const SeedStats&) const = default;
};

struct SeedResult {
  std::vector<RunRecord> records;
  SeedStats stats;
};

// Candidates of the production files of `current` whose target lies on
// lines changed or inserted relative to `parent`, sorted by id. Files
// absent from `parent` count as entirely inserted.
std::vector<MutationCandidate> changed_line_candidates(
    const FileTree& parent, const FileTree& current, const ParsedTree& parsed);

// Walks the history from the newest version back to the second one. For
// each version: control run, candidates on the lines changed since the
// parent, one mutant run per candidate over the tests that passed in the
// control run. Runs with a timeout or without a failure are dropped; the
// rest become records whose change terms are the query of the mutation
// diff with `window` lines around it. Records come out newest version
// first, then by candidate id, for any parallelism. Throws lexprio::Error
// naming the version that fails to parse.
SeedResult change_based_seed(const CorpusHistory& history,
                             const SeedOptions& options = {});

}  // namespace lexprio::seedgen

#endif  // LEXPRIO_SEEDGEN_SEED_H_
