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

#ifndef LEXPRIO_RANK_H_
#define LEXPRIO_RANK_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/index.h"
#include "lexprio/learn.h"
#include "lexprio/query.h"

namespace lexprio {

struct Bm25Params {
  double k1 = 10.0;
  double b = 0.5;
};

enum class StrategyKind { kUnt, kRand, kBm25, kBm25c, kPrec, kRec, kF1 };

struct Strategy {
  StrategyKind kind = StrategyKind::kUnt;
  // Only used by kRand.
  std::uint64_t seed = 0;

  bool needs_query() const;
  bool needs_weights() const;
  bool operator==(const Strategy&) const = default;
};

// Lowercase labels: unt, rand, bm25, bm25c, prec, rec, f1.
std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

struct RankedTest {
  std::string id;
  double score = 0.0;
  bool operator==(const RankedTest&) const = default;
};

// Ordered permutation of an index's test ids with nonincreasing scores.
struct Ranking {
  std::vector<RankedTest> entries;

  std::vector<std::string> ids() const;
  bool operator==(const Ranking&) const = default;
};

// Okapi BM25 score of `doc` for the query terms. Throws on a corrupt index
// (nonempty doc with zero average length) or an empty index.
double bm25_score(const ChangeQuery& query, const TestDocument& doc,
                  const TestIndex& index, const Bm25Params& params = {});

// Same sum with a caller-supplied idf; used to check invariance of rankings
// under idf scaling.
double bm25_score_with_idf(const TermSet& terms, const TestDocument& doc,
                           double avg_len, const Bm25Params& params,
                           const std::function<double(std::string_view)>& idf);

// Sum of the learned weight of every query term present in the test
// (binary term frequency). Terms missing from `weights` contribute 0.
double predictive_score(const ChangeQuery& query, const TestDocument& doc,
                        const WeightTable& weights, StrategyKind kind);

// Orders all tests of `index`. BM25C expects a query built with context.
// Scoring strategies sort by descending score, breaking ties by untreated
// position. Throws lexprio::Error when a required query or weight table is
// missing.
Ranking rank_tests(const Strategy& strategy, const ChangeQuery* query,
                   const TestIndex& index, const WeightTable* weights,
                   const Bm25Params& params = {});

// Stable descending sort of the index's tests by `scores` (one per
// document, in insertion order).
Ranking order_by_scores(const TestIndex& index,
                        const std::vector<double>& scores);

// "rank<TAB>score<TAB>test_id" lines, rank starting at 1.
std::string format_ranking(const Ranking& ranking);

}  // namespace lexprio

#endif  // LEXPRIO_RANK_H_
