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


#include "lexprio/learn.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <span>
#include <map>
#include <string>
#include <vector>

#include "lexprio/error.h"
#include "lexprio/rng.h"

namespace lexprio {
namespace {

TestDocument doc(std::string id, const std::vector<std::string>& terms) {
  TestDocument d;
  d.id = std::move(id);
  for (const std::string& t : terms) d.terms.add(Feature(t));
  return d;
}

// tests: id -> (failed, terms)
RunRecord record(std::string run_id, TermSet change,
                 const std::vector<std::pair<std::string, bool>>& tests) {
  RunRecord r;
  r.run_id = std::move(run_id);
  r.change_terms = std::move(change);
  for (const auto& [id, failed] : tests) {
    r.outcomes[id] = failed ? Outcome::kFail : Outcome::kPass;
    r.durations[id] = 1.0;
    r.untreated_order.push_back(id);
  }
  return r;
}

IndexSource fixed(const TestIndex& index) {
  return [&index](const RunRecord&) -> const TestIndex& { return index; };
}

TEST(PerRunTermStatsTest, WorkedExample) {
  // F = 5, T_w = 4, F_w = 2.
  std::vector<TestDocument> docs;
  std::vector<std::pair<std::string, bool>> tests;
  for (int i = 0; i < 8; ++i) {
    std::string id = "t" + std::to_string(i);
    bool has_w = i < 4;
    bool failed = i < 2 || (i >= 4 && i < 7);
    docs.push_back(doc(id, has_w ? std::vector<std::string>{"w"} : std::vector<std::string>{"x"}));
    tests.emplace_back(id, failed);
  }
  TestIndex index = build_index(docs);
  auto stats = per_run_term_stats(record("r", {"w"}, tests), index);
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_NEAR(stats["w"].prec, 0.5, 1e-15);
  EXPECT_NEAR(stats["w"].rec, 0.4, 1e-15);
  EXPECT_NEAR(stats["w"].f1, 4.0 / 9.0, 1e-15);
}

TEST(PerRunTermStatsTest, NonPredictiveTerm) {
  TestIndex index = build_index({doc("a", {"w"}), doc("b", {"x"})});
  auto stats = per_run_term_stats(record("r", {"w"}, {{"a", false}, {"b", true}}), index);
  EXPECT_EQ(stats["w"], (TermStats{0.0, 0.0, 0.0}));
}

TEST(PerRunTermStatsTest, PerfectPredictor) {
  TestIndex index = build_index({doc("a", {"w"}), doc("b", {"x"})});
  auto stats = per_run_term_stats(record("r", {"w"}, {{"a", true}, {"b", false}}), index);
  EXPECT_EQ(stats["w"], (TermStats{1.0, 1.0, 1.0}));
}

TEST(PerRunTermStatsTest, TermInNoTestHasZeroPrecision) {
  TestIndex index = build_index({doc("a", {"w"})});
  auto stats = per_run_term_stats(record("r", {"zzz"}, {{"a", true}}), index);
  EXPECT_EQ(stats["zzz"], (TermStats{0.0, 0.0, 0.0}));
}

TEST(PerRunTermStatsTest, CountsOnlyExecutedTests) {
  TestIndex index = build_index({doc("a", {"w"}), doc("b", {"w"}), doc("c", {"w"})});
  auto stats = per_run_term_stats(record("r", {"w"}, {{"a", true}, {"b", false}}), index);
  EXPECT_NEAR(stats["w"].prec, 0.5, 1e-15);
}

TEST(PerRunTermStatsTest, Errors) {
  TestIndex index = build_index({doc("a", {"w"})});
  EXPECT_THROW(per_run_term_stats(record("r", {"w"}, {{"a", false}}), index), Error);
  EXPECT_THROW(per_run_term_stats(record("r", {"w"}, {{"missing", true}}), index), Error);
}

TEST(ValidateTest, RejectsInconsistentRecords) {
  RunRecord ok = record("r", {"w"}, {{"a", true}, {"b", false}});
  EXPECT_NO_THROW(validate(ok));
  RunRecord dup = ok;
  dup.untreated_order.push_back("a");
  EXPECT_THROW(validate(dup), Error);
  RunRecord missing = ok;
  missing.durations.erase("b");
  EXPECT_THROW(validate(missing), Error);
  RunRecord negative = ok;
  negative.durations["a"] = -1.0;
  EXPECT_THROW(validate(negative), Error);
  EXPECT_THROW(validate(record("r", {"w"}, {{"a", false}})), Error);
}

TEST(AggregateWeightsTest, SingleRunEqualsItsStats) {
  TestIndex index = build_index({doc("a", {"w", "v"}), doc("b", {"w"})});
  RunRecord r = record("r", {"w", "v"}, {{"a", true}, {"b", false}});
  WeightTable table = aggregate_weights({r}, fixed(index));
  auto stats = per_run_term_stats(r, index);
  ASSERT_EQ(table.size(), 2u);
  for (const auto& [term, s] : stats) {
    EXPECT_EQ(table.at(term), (TermWeight{1, s.prec, s.rec, s.f1}));
  }
}

TEST(AggregateWeightsTest, MeansOverRunsContainingTheTerm) {
  TestIndex index = build_index({doc("a", {"w"}), doc("b", {"w"}), doc("c", {"q"})});
  RunRecord half = record("r1", {"w"}, {{"a", true}, {"b", false}, {"c", false}});
  RunRecord full = record("r2", {"w"}, {{"a", true}, {"b", true}, {"c", false}});
  RunRecord other = record("r3", {"q"}, {{"a", false}, {"b", false}, {"c", true}});
  WeightTable table = aggregate_weights({half, full, other}, fixed(index));
  EXPECT_EQ(table.at("w").sample_count, 2);
  EXPECT_NEAR(table.at("w").mean_prec, 0.75, 1e-15);
  EXPECT_EQ(table.at("q").sample_count, 1);
}

TEST(AggregateWeightsTest, TermsOnlyInTestsAreAbsent) {
  TestIndex index = build_index({doc("a", {"w", "only"})});
  WeightTable table = aggregate_weights({record("r", {"w"}, {{"a", true}})}, fixed(index));
  EXPECT_FALSE(table.contains("only"));
  EXPECT_TRUE(aggregate_weights({}, fixed(index)).empty());
}

TEST(FailureExplanationCurveTest, SingleTermExplainsEverything) {
  TestIndex index = build_index({doc("a", {"w"}), doc("b", {"w"})});
  std::vector<RunRecord> records{record("r", {"w"}, {{"a", true}, {"b", true}})};
  WeightTable table = aggregate_weights(records, fixed(index));
  auto curve = failure_explanation_curve(records, table, fixed(index));
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0], (std::pair<int, double>{1, 1.0}));
}

TEST(FailureExplanationCurveTest, DisjointHalves) {
  TestIndex index = build_index({doc("a", {"u"}), doc("b", {"v"})});
  std::vector<RunRecord> records{record("r1", {"u"}, {{"a", true}, {"b", false}}),
                                 record("r2", {"v"}, {{"a", false}, {"b", true}})};
  WeightTable table = aggregate_weights(records, fixed(index));
  auto curve = failure_explanation_curve(records, table, fixed(index));
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0], (std::pair<int, double>{1, 0.5}));
  EXPECT_EQ(curve[1], (std::pair<int, double>{2, 1.0}));
}

struct Fixture {
  TestIndex index;
  std::vector<RunRecord> records;
};

Fixture random_fixture(Rng& rng) {
  int tests = rng.between(1, 10);
  int vocabulary = rng.between(1, 8);
  auto term = [](int k) { return std::string(1, static_cast<char>('a' + k)); };
  std::vector<TestDocument> docs;
  for (int i = 0; i < tests; ++i) {
    TestDocument d;
    d.id = "t" + std::to_string(i);
    for (int k = 0; k < vocabulary; ++k) {
      if (rng.chance(0.4)) d.terms.add(Feature(term(k)), rng.between(1, 3));
    }
    docs.push_back(std::move(d));
  }
  Fixture f{build_index(docs), {}};
  int runs = rng.between(1, 6);
  for (int r = 0; r < runs; ++r) {
    RunRecord rec;
    rec.run_id = "r" + std::to_string(r);
    for (int k = 0; k < vocabulary; ++k) {
      if (rng.chance(0.5)) rec.change_terms.insert(term(k));
    }
    int forced = rng.between(0, tests - 1);
    for (int i = 0; i < tests; ++i) {
      if (i != forced && rng.chance(0.3)) continue;
      std::string id = "t" + std::to_string(i);
      rec.outcomes[id] = i == forced || rng.chance(0.4) ? Outcome::kFail : Outcome::kPass;
      rec.durations[id] = 0.5;
      rec.untreated_order.push_back(id);
    }
    f.records.push_back(std::move(rec));
  }
  return f;
}

TEST(LearnPropertyTest, StatsBoundsAndF1ZeroIffNoFailingHits) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    Fixture f = random_fixture(rng);
    for (const RunRecord& r : f.records) {
      for (const auto& [term, s] : per_run_term_stats(r, f.index)) {
        EXPECT_GE(s.prec, 0.0);
        EXPECT_LE(s.prec, 1.0);
        EXPECT_GE(s.rec, 0.0);
        EXPECT_LE(s.rec, 1.0);
        if (s.prec > 0 && s.rec > 0) {
          EXPECT_GE(s.f1, std::min(s.prec, s.rec) - 1e-15);
          EXPECT_LE(s.f1, std::max(s.prec, s.rec) + 1e-15);
        }
        int failing_hits = 0;
        for (const auto& [id, o] : r.outcomes) {
          if (o == Outcome::kFail && f.index.find(id)->terms.contains(term)) ++failing_hits;
        }
        EXPECT_EQ(s.f1 == 0.0, failing_hits == 0);
      }
    }
  }
}

TEST(LearnPropertyTest, PermutationInvariance) {
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    Fixture f = random_fixture(rng);
    WeightTable base = aggregate_weights(f.records, fixed(f.index));
    std::vector<RunRecord> shuffled = f.records;
    rng.shuffle(std::span<RunRecord>(shuffled));
    EXPECT_EQ(aggregate_weights(shuffled, fixed(f.index)), base);
  }
}

TEST(LearnPropertyTest, MatchesBruteForceRecount) {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    Fixture f = random_fixture(rng);
    std::map<std::string, std::vector<std::array<double, 3>>> samples;
    for (const RunRecord& r : f.records) {
      for (const std::string& w : r.change_terms) {
        int big_f = 0, f_w = 0, t_w = 0;
        for (const std::string& id : r.untreated_order) {
          bool failed = r.outcomes.at(id) == Outcome::kFail;
          bool has = f.index.find(id)->terms.counts().count(w) > 0;
          big_f += failed;
          t_w += has;
          f_w += failed && has;
        }
        double p = t_w == 0 ? 0.0 : double(f_w) / t_w;
        double rc = double(f_w) / big_f;
        double f1 = p + rc == 0 ? 0.0 : 2 * p * rc / (p + rc);
        samples[w].push_back({p, rc, f1});
      }
    }
    WeightTable table = aggregate_weights(f.records, fixed(f.index));
    ASSERT_EQ(table.size(), samples.size());
    for (auto& [w, list] : samples) {
      const TermWeight& got = table.at(w);
      EXPECT_EQ(got.sample_count, static_cast<int>(list.size()));
      for (int c = 0; c < 3; ++c) {
        std::vector<double> column;
        for (const auto& s : list) column.push_back(s[c]);
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (double v : column) sum += v;
        double mean = sum / column.size();
        double actual = c == 0 ? got.mean_prec : c == 1 ? got.mean_rec : got.mean_f1;
        EXPECT_EQ(actual, mean) << w;
      }
    }
  }
}

TEST(LearnPropertyTest, ExplanationCurveIsNondecreasing) {
  Rng rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    Fixture f = random_fixture(rng);
    WeightTable table = aggregate_weights(f.records, fixed(f.index));
    auto curve = failure_explanation_curve(f.records, table, fixed(f.index));
    ASSERT_EQ(curve.size(), table.size());
    for (std::size_t k = 0; k < curve.size(); ++k) {
      EXPECT_EQ(curve[k].first, static_cast<int>(k) + 1);
      EXPECT_LE(curve[k].second, 1.0);
      if (k > 0) EXPECT_GE(curve[k].second, curve[k - 1].second);
    }
  }
}

}  // namespace
}  // namespace lexprio
