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

#include "lexprio/rank.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "lexprio/error.h"
#include "lexprio/rng.h"

namespace lexprio {
namespace {

TestDocument doc(std::string id, std::vector<std::pair<std::string, int>> terms) {
  TestDocument d;
  d.id = std::move(id);
  for (const auto& [term, count] : terms) d.terms.add(Feature(term), count);
  return d;
}

ChangeQuery query(TermSet terms) {
  ChangeQuery q;
  q.terms = std::move(terms);
  return q;
}

TestIndex random_index(Rng& rng, int docs, int vocabulary) {
  std::vector<TestDocument> out;
  for (int i = 0; i < docs; ++i) {
    TestDocument d;
    d.id = "t" + std::to_string(i);
    int distinct = rng.between(1, 5);
    for (int k = 0; k < distinct; ++k) {
      std::string term(1, static_cast<char>('a' + rng.below(vocabulary)));
      d.terms.add(Feature(term), rng.between(1, 4));
    }
    out.push_back(std::move(d));
  }
  return build_index(out);
}

TermSet random_terms(Rng& rng, int vocabulary) {
  TermSet out;
  int n = rng.between(1, 4);
  for (int k = 0; k < n; ++k) {
    out.insert(std::string(1, static_cast<char>('a' + rng.below(vocabulary))));
  }
  return out;
}

TEST(Bm25ParamsTest, Defaults) {
  Bm25Params p;
  EXPECT_EQ(p.k1, 10.0);
  EXPECT_EQ(p.b, 0.5);
}

TEST(Bm25ScoreTest, DisjointQueryScoresZero) {
  TestIndex index = build_index({doc("a", {{"x", 1}}), doc("b", {{"y", 1}})});
  EXPECT_EQ(bm25_score(query({"z"}), index.docs()[0], index), 0.0);
}

TEST(Bm25ScoreTest, LengthNeutralPointEqualsIdf) {
  TestIndex index = build_index({doc("a", {{"x", 1}, {"p", 1}}),
                                 doc("b", {{"y", 1}, {"q", 1}}),
                                 doc("c", {{"z", 1}, {"r", 1}})});
  EXPECT_NEAR(bm25_score(query({"x"}), index.docs()[0], index), idf(index, "x"), 1e-12);
}

TEST(Bm25ScoreTest, WorkedExample) {
  std::vector<TestDocument> docs;
  docs.push_back(doc("d0", {{"f", 2}, {"pad", 48}}));
  for (int i = 1; i <= 9; ++i) docs.push_back(doc("d" + std::to_string(i), {{"f", 1}, {"pad", 99}}));
  for (int i = 10; i <= 98; ++i) docs.push_back(doc("d" + std::to_string(i), {{"g", 100}}));
  docs.push_back(doc("d99", {{"g", 150}}));
  TestIndex index = build_index(docs);
  ASSERT_EQ(index.doc_count(), 100u);
  ASSERT_EQ(index.avg_len(), 100.0);
  ASSERT_EQ(index.doc_freq("f"), 10);
  double expected_idf = std::log(90.5 / 10.5);
  EXPECT_NEAR(expected_idf, 2.1540, 5e-5);
  double score = bm25_score(query({"f"}), index.docs()[0], index);
  EXPECT_NEAR(score, expected_idf * 22.0 / 9.5, 1e-12);
  EXPECT_NEAR(score, 4.988, 5e-4);
}

TEST(Bm25ScoreTest, CorruptIndexThrows) {
  TestDocument d = doc("a", {{"x", 1}});
  EXPECT_THROW(bm25_score_with_idf({"x"}, d, 0.0, {}, [](std::string_view) { return 1.0; }),
               Error);
}

TEST(PredictiveScoreTest, SumsPresentTerms) {
  WeightTable weights{{"user", {1, 0.4, 0.2, 0.3}}, {"admin", {1, 0.9, 0.9, 0.9}}};
  TestDocument d = doc("t", {{"user", 3}});
  EXPECT_NEAR(predictive_score(query({"user", "admin"}), d, weights, StrategyKind::kPrec), 0.4, 1e-15);
  EXPECT_NEAR(predictive_score(query({"user", "admin"}), d, weights, StrategyKind::kRec), 0.2, 1e-15);
  EXPECT_EQ(predictive_score(query({"other"}), d, weights, StrategyKind::kF1), 0.0);
}

TEST(PredictiveScoreTest, BinaryTermFrequency) {
  WeightTable weights{{"user", {1, 0.5, 0.5, 0.5}}};
  EXPECT_EQ(predictive_score(query({"user"}), doc("a", {{"user", 1}}), weights, StrategyKind::kPrec),
            predictive_score(query({"user"}), doc("b", {{"user", 7}}), weights, StrategyKind::kPrec));
}

TEST(RankTestsTest, UntIsIdentity) {
  TestIndex index = build_index({doc("c", {{"x", 1}}), doc("a", {{"y", 1}}), doc("b", {{"z", 1}})});
  Ranking r = rank_tests({StrategyKind::kUnt, 0}, nullptr, index, nullptr);
  EXPECT_EQ(r.ids(), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RankTestsTest, RandIsDeterministicPerSeed) {
  Rng rng(3);
  TestIndex index = random_index(rng, 30, 6);
  Ranking a = rank_tests({StrategyKind::kRand, 99}, nullptr, index, nullptr);
  Ranking b = rank_tests({StrategyKind::kRand, 99}, nullptr, index, nullptr);
  Ranking c = rank_tests({StrategyKind::kRand, 100}, nullptr, index, nullptr);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.ids(), c.ids());
}

TEST(RankTestsTest, ZeroScoresKeepUntreatedOrder) {
  TestIndex index = build_index({doc("c", {{"x", 1}}), doc("a", {{"y", 1}}), doc("b", {{"z", 1}})});
  ChangeQuery q = query({"nothing"});
  Ranking r = rank_tests({StrategyKind::kBm25, 0}, &q, index, nullptr);
  EXPECT_EQ(r.ids(), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RankTestsTest, RareSharedTermRanksFirst) {
  TestIndex index = build_index({doc("one", {{"common", 2}}),
                                 doc("two", {{"common", 1}, {"rare", 1}}),
                                 doc("three", {{"common", 3}})});
  ChangeQuery q = query({"common", "rare"});
  Ranking r = rank_tests({StrategyKind::kBm25, 0}, &q, index, nullptr);
  // Brute force: only "two" has a positive-idf term.
  double best = -1.0;
  std::string best_id;
  for (const TestDocument& d : index.docs()) {
    double s = 0.0;
    for (const std::string& t : q.terms) {
      int tf = d.terms.count(t);
      if (tf == 0) continue;
      double n = 3.0;
      double nf = index.doc_freq(t);
      double w = std::max(0.0, std::log((n - nf + 0.5) / (nf + 0.5)));
      s += w * tf * 11.0 / (tf + 10.0 * (0.5 + 0.5 * d.length() / index.avg_len()));
    }
    if (s > best) {
      best = s;
      best_id = d.id;
    }
  }
  EXPECT_EQ(best_id, "two");
  EXPECT_EQ(r.entries[0].id, "two");
}

TEST(RankTestsTest, MissingInputsThrow) {
  TestIndex index = build_index({doc("a", {{"x", 1}})});
  ChangeQuery q = query({"x"});
  EXPECT_THROW(rank_tests({StrategyKind::kBm25, 0}, nullptr, index, nullptr), Error);
  EXPECT_THROW(rank_tests({StrategyKind::kPrec, 0}, &q, index, nullptr), Error);
}

TEST(StrategyTest, NamesRoundTrip) {
  for (std::string_view name : {"unt", "rand", "bm25", "bm25c", "prec", "rec", "f1"}) {
    std::optional<StrategyKind> kind = parse_strategy(name);
    ASSERT_TRUE(kind.has_value()) << name;
    EXPECT_EQ(to_string(*kind), name);
  }
  EXPECT_FALSE(parse_strategy("BM25").has_value());
}

TEST(FormatRankingTest, TabSeparated) {
  Ranking r{{{"a", 1.5}, {"b", 0.0}}};
  EXPECT_EQ(format_ranking(r), "1\t1.500000\ta\n2\t0.000000\tb\n");
}

TEST(RankPropertyTest, PermutationWithNonIncreasingScores) {
  Rng rng(41);
  WeightTable weights;
  for (char c = 'a'; c <= 'h'; ++c) {
    weights[std::string(1, c)] = {1, rng.below(100) / 100.0, rng.below(100) / 100.0,
                                  rng.below(100) / 100.0};
  }
  for (int trial = 0; trial < 200; ++trial) {
    TestIndex index = random_index(rng, rng.between(1, 25), 8);
    ChangeQuery q = query(random_terms(rng, 8));
    for (StrategyKind kind : {StrategyKind::kUnt, StrategyKind::kRand, StrategyKind::kBm25,
                              StrategyKind::kPrec, StrategyKind::kRec, StrategyKind::kF1}) {
      Ranking r = rank_tests({kind, static_cast<std::uint64_t>(trial)}, &q, index, &weights);
      std::multiset<std::string> ids;
      for (const RankedTest& e : r.entries) ids.insert(e.id);
      std::multiset<std::string> expected;
      for (const TestDocument& d : index.docs()) expected.insert(d.id);
      EXPECT_EQ(ids, expected);
      for (std::size_t i = 1; i < r.entries.size(); ++i) {
        EXPECT_GE(r.entries[i - 1].score, r.entries[i].score);
      }
    }
  }
}

TEST(RankPropertyTest, ScoreIsAdditiveOverDisjointQueries) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    TestIndex index = random_index(rng, rng.between(2, 20), 8);
    TermSet all = random_terms(rng, 8);
    TermSet q1;
    TermSet q2;
    for (const std::string& t : all) (rng.chance(0.5) ? q1 : q2).insert(t);
    for (const TestDocument& d : index.docs()) {
      double whole = bm25_score(query(all), d, index);
      double parts = bm25_score(query(q1), d, index) + bm25_score(query(q2), d, index);
      EXPECT_NEAR(whole, parts, 1e-9);
    }
  }
}

TEST(RankPropertyTest, IdfScalingKeepsPermutation) {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    TestIndex index = random_index(rng, rng.between(2, 20), 8);
    ChangeQuery q = query(random_terms(rng, 8));
    // Scaling by 1/ln(2) is the switch from natural log to base 2.
    for (double scale : {1.0 / std::log(2.0), 1.0 / std::log(10.0), 3.0}) {
      std::vector<double> scores;
      for (const TestDocument& d : index.docs()) {
        scores.push_back(bm25_score_with_idf(
            q.terms, d, index.avg_len(), {},
            [&](std::string_view t) { return scale * idf(index, t); }));
      }
      EXPECT_EQ(order_by_scores(index, scores).ids(),
                rank_tests({StrategyKind::kBm25, 0}, &q, index, nullptr).ids());
    }
  }
}

TEST(RankPropertyTest, WeightScalingKeepsPermutation) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    TestIndex index = random_index(rng, rng.between(2, 20), 8);
    ChangeQuery q = query(random_terms(rng, 8));
    WeightTable weights;
    WeightTable scaled;
    for (char c = 'a'; c <= 'h'; ++c) {
      // Multiples of 1/8 keep the scaled sums exact.
      TermWeight w{1, rng.below(9) / 8.0, rng.below(9) / 8.0, rng.below(9) / 8.0};
      weights[std::string(1, c)] = w;
      scaled[std::string(1, c)] = {1, w.mean_prec * 4, w.mean_rec * 4, w.mean_f1 * 4};
    }
    for (StrategyKind kind : {StrategyKind::kPrec, StrategyKind::kRec, StrategyKind::kF1}) {
      EXPECT_EQ(rank_tests({kind, 0}, &q, index, &weights).ids(),
                rank_tests({kind, 0}, &q, index, &scaled).ids());
    }
  }
}

TEST(RankPropertyTest, ScoreMonotoneInTermFrequency) {
  Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    TestIndex index = random_index(rng, rng.between(2, 15), 6);
    ChangeQuery q = query(random_terms(rng, 6));
    // Both variants add one token, so |d| and d-hat stay fixed.
    TestDocument base = index.docs()[rng.below(index.doc_count())];
    TestDocument more = base;
    base.terms.add(Feature("padding"));
    more.terms.add(Feature(*q.terms.begin()));
    double before = bm25_score_with_idf(q.terms, base, index.avg_len(), {},
                                        [&](std::string_view t) { return idf(index, t); });
    double after = bm25_score_with_idf(q.terms, more, index.avg_len(), {},
                                       [&](std::string_view t) { return idf(index, t); });
    EXPECT_GE(after, before);
  }
}

}  // namespace
}  // namespace lexprio
