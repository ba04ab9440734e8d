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

#ifndef LEXPRIO_LEARN_H_
#define LEXPRIO_LEARN_H_

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lexprio/index.h"
#include "lexprio/query.h"

namespace lexprio {

enum class Outcome { kPass, kFail };

// One seeded-fault execution of a test suite.
struct RunRecord {
  std::string run_id;
  // Corpus version the run was taken from; empty when unknown.
  std::string version;
  TermSet change_terms;
  // Split names of the definitions enclosing the change. The query for the
  // context-aware strategy is change_terms plus these.
  TermSet context_terms;
  std::map<std::string, Outcome> outcomes;
  std::map<std::string, double> durations;
  std::vector<std::string> untreated_order;

  int failure_count() const;
  bool operator==(const RunRecord&) const = default;
};

// Throws lexprio::Error if the key sets of outcomes, durations and
// untreated_order differ, or if no test failed.
void validate(const RunRecord& record);

struct TermStats {
  double prec = 0.0;
  double rec = 0.0;
  double f1 = 0.0;
  bool operator==(const TermStats&) const = default;
};

struct TermWeight {
  int sample_count = 0;
  double mean_prec = 0.0;
  double mean_rec = 0.0;
  double mean_f1 = 0.0;
  bool operator==(const TermWeight&) const = default;
};

using WeightTable = std::map<std::string, TermWeight, std::less<>>;

// Returns the index holding the tests of a given run.
using IndexSource = std::function<const TestIndex&(const RunRecord&)>;

// Precision, recall and F1 of every change term for one run. T_w and F_w
// count only the tests executed in the run. Throws if the record has no
// failure or names a test missing from `index`.
std::map<std::string, TermStats> per_run_term_stats(const RunRecord& record,
                                                    const TestIndex& index);

// Mean precision/recall/F1 per term over exactly the runs whose change
// contains it. Samples are summed in sorted order, so the result does not
// depend on the order of `records`.
WeightTable aggregate_weights(const std::vector<RunRecord>& records,
                              const IndexSource& index_for);

// Cumulative fraction of (run, failing test) pairs explained by the top-k
// terms by mean F1 (ties by term text), for k = 1..table.size(). A pair is
// explained when one of those terms occurs both in the run's change and in
// the test.
std::vector<std::pair<int, double>> failure_explanation_curve(
    const std::vector<RunRecord>& records, const WeightTable& table,
    const IndexSource& index_for);

}  // namespace lexprio

#endif  // LEXPRIO_LEARN_H_
