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


#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "lexprio/diff.h"
#include "lexprio/error.h"
#include "lexprio/minilang/parser.h"
#include "lexprio/seedgen/corpus.h"
#include "lexprio/seedgen/runner.h"
#include "lexprio/seedgen/seed.h"

namespace lexprio::seedgen {
namespace {

FileTree small_tree() {
  return {
      {"src/calc.mini",
       "let counter = 0;\n"
       "fn scale(x) {\n"
       "  let factor = 4;\n"
       "  return x * factor;\n"
       "}\n"},
      {"tests/test_calc.mini",
       "fn test_scale() {\n"
       "  \"scales values\";\n"
       "  assert scale(2) == 8;\n"
       "}\n"
       "fn test_counter_one() {\n"
       "  counter = counter + 1;\n"
       "  assert counter == 1;\n"
       "}\n"
       "fn test_counter_two() {\n"
       "  counter = counter + 1;\n"
       "  assert counter == 1;\n"
       "}\n"},
  };
}

TEST(RunTestsTest, PassFailTimeout) {
  FileTree tree{{"tests/test_a.mini",
                 "fn test_pass() { assert 1 == 1; }\n"
                 "fn test_fail() { assert 1 == 2; }\n"
                 "fn test_hang() { while true { } }\n"
                 "fn helper() { return 1; }\n"}};
  TestReport report = run_tests(tree, 20000);
  ASSERT_EQ(report.results.size(), 3u);
  EXPECT_EQ(report.results[0].id, "tests/test_a.mini::test_pass");
  EXPECT_EQ(report.results[0].outcome, TestOutcome::kPass);
  EXPECT_EQ(report.results[1].outcome, TestOutcome::kFail);
  EXPECT_NE(report.results[1].message.find("assertion failed"), std::string::npos);
  EXPECT_EQ(report.results[2].outcome, TestOutcome::kTimeout);
  EXPECT_EQ(report.results[2].steps, 20000);
  for (const TestResult& r : report.results) {
    EXPECT_LE(r.steps, 20000);
    EXPECT_DOUBLE_EQ(r.duration_s, r.steps * kStepSeconds);
  }
  EXPECT_EQ(report.count(TestOutcome::kPass), 1);
  EXPECT_NE(report.find("tests/test_a.mini::test_fail"), nullptr);
}

TEST(RunTestsTest, EachTestGetsFreshState) {
  TestReport report = run_tests(small_tree());
  EXPECT_EQ(report.count(TestOutcome::kPass), 3);
}

TEST(RunTestsTest, NilCallIsAFailure) {
  FileTree tree{{"src/a.mini", "fn get() { return nil; }\n"},
                {"tests/test_a.mini", "fn test_nil() { let f = get(); f(); }\n"}};
  EXPECT_EQ(run_tests(tree).results[0].outcome, TestOutcome::kFail);
}

TEST(RunTestsTest, ParseFailureIsAnError) {
  FileTree tree{{"src/a.mini", "fn broken( {"}, {"tests/test_a.mini", "fn test_a() { }"}};
  EXPECT_THROW(run_tests(tree), Error);
}

TEST(RunTestsTest, ControlRunIsDeterministic) {
  CorpusParams params;
  params.modules = 3;
  params.history_steps = 2;
  FileTree tree = generate_corpus(9, params).versions.back();
  EXPECT_EQ(run_tests(tree), run_tests(tree));
}

TEST(IndexTestsTest, DocumentsFollowUntreatedOrder) {
  TestIndex index = index_tests(small_tree());
  ASSERT_EQ(index.doc_count(), 3u);
  EXPECT_EQ(index.docs()[0].id, "tests/test_calc.mini::test_scale");
  EXPECT_EQ(index.docs()[0].terms.count("scale"), 2);
  EXPECT_EQ(index.docs()[0].terms.count("scales"), 1);
  EXPECT_EQ(index.docs()[2].id, "tests/test_calc.mini::test_counter_two");
}

TEST(GenerateCorpusTest, Deterministic) {
  CorpusParams params;
  params.history_steps = 5;
  CorpusHistory a = generate_corpus(3, params);
  CorpusHistory b = generate_corpus(3, params);
  EXPECT_EQ(a.versions, b.versions);
  EXPECT_NE(generate_corpus(4, params).versions, a.versions);
}

TEST(GenerateCorpusTest, TestCount) {
  CorpusParams params;
  params.modules = 2;
  params.functions_per_module = 3;
  params.tests_per_function = 2;
  params.noise_tests = 0;
  params.history_steps = 2;
  CorpusHistory history = generate_corpus(1, params);
  EXPECT_EQ(run_tests(history.versions.front()).results.size(), 12u);
  params.noise_tests = 5;
  EXPECT_EQ(run_tests(generate_corpus(1, params).versions.front()).results.size(), 17u);
}

TEST(GenerateCorpusTest, InvalidParams) {
  CorpusParams params;
  params.modules = 0;
  EXPECT_THROW(generate_corpus(1, params), Error);
  params.modules = 1;
  params.history_steps = 1;
  EXPECT_THROW(generate_corpus(1, params), Error);
}

TEST(GenerateCorpusTest, VersionsParseAndTestsAreNamedTest) {
  CorpusParams params;
  params.history_steps = 10;
  CorpusHistory history = generate_corpus(21, params);
  ASSERT_EQ(history.versions.size(), 10u);
  for (std::size_t v = 0; v < history.versions.size(); ++v) {
    const FileTree& tree = history.versions[v];
    if (v > 0) EXPECT_NE(tree, history.versions[v - 1]);
    for (const auto& [path, text] : tree) {
      mini::Module m = mini::parse_minilang(text, path);
      if (!is_test_path(path)) continue;
      for (const mini::Stmt& item : m.items) {
        EXPECT_EQ(item.kind, mini::StmtKind::kFuncDef);
        EXPECT_EQ(item.name.rfind("test_", 0), 0u) << item.name;
      }
    }
  }
  // The unmodified suite passes on the first version.
  TestReport control = run_tests(history.versions.front());
  EXPECT_EQ(control.count(TestOutcome::kPass), static_cast<int>(control.results.size()));
}

TEST(GenerateCorpusTest, HistoryRoundTripsThroughDisk) {
  CorpusParams params;
  params.modules = 2;
  params.history_steps = 3;
  CorpusHistory history = generate_corpus(2, params);
  std::filesystem::path root =
      std::filesystem::temp_directory_path() / ("lexprio_corpus_" + std::to_string(::getpid()));
  std::filesystem::remove_all(root);
  write_history(history, root);
  EXPECT_TRUE(std::filesystem::exists(root / "history" / "0002" / "src"));
  EXPECT_EQ(read_history(root).versions, history.versions);
  EXPECT_THROW(write_history(history, root), Error);
  std::filesystem::remove_all(root);
}

TEST(ChangeBasedSeedTest, HandBuiltHistoryYieldsOneRecord) {
  FileTree v1 = small_tree();
  FileTree v0 = v1;
  v0["src/calc.mini"] =
      "let counter = 0;\n"
      "fn scale(x) {\n"
      "  let factor = 3;\n"
      "  return x * factor;\n"
      "}\n";
  SeedResult result = change_based_seed({{v0, v1}});
  ASSERT_EQ(result.records.size(), 1u);
  const RunRecord& r = result.records[0];
  EXPECT_EQ(r.run_id, tree_hash(v1) + ":src/calc.mini:ModifyNumber:3:16");
  EXPECT_EQ(r.version, "0001");
  EXPECT_EQ(r.failure_count(), 1);
  EXPECT_EQ(r.outcomes.at("tests/test_calc.mini::test_scale"), Outcome::kFail);
  EXPECT_TRUE(r.change_terms.contains("factor"));
  EXPECT_TRUE(r.change_terms.contains("scale"));
  EXPECT_EQ(r.untreated_order.size(), 3u);
  EXPECT_EQ(result.stats.candidates, 1);
  EXPECT_EQ(result.stats.kept, 1);
}

TEST(ChangeBasedSeedTest, CommentOnlyVersionIsSkipped) {
  FileTree v0 = small_tree();
  FileTree v1 = v0;
  v1["src/calc.mini"] = "// scaling helpers\n" + v0["src/calc.mini"];
  SeedResult result = change_based_seed({{v0, v1}});
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.stats.versions_without_candidates, 1);
}

TEST(ChangeBasedSeedTest, UnchangedAndTimeoutRunsAreDiscarded) {
  FileTree v0{{"src/a.mini", "fn spin() {\n  return 0;\n}\n"},
              {"tests/test_a.mini", "fn test_spin() { assert spin() == 0; }\n"}};
  FileTree v1 = v0;
  // The call is unused by any test, so omitting it changes nothing; the
  // loop bound turns non-terminating after a swap.
  v1["src/a.mini"] =
      "fn spin() {\n"
      "  let i = 3;\n"
      "  while i > 0 { i = i - 1; }\n"
      "  return i;\n"
      "}\n"
      "fn unused() { return spin(); }\n";
  SeedOptions options;
  options.budget = 10000;
  SeedResult result = change_based_seed({{v0, v1}}, options);
  EXPECT_GE(result.stats.discarded_timeout, 1);
  EXPECT_GE(result.stats.discarded_unchanged, 1);
  for (const RunRecord& r : result.records) EXPECT_GE(r.failure_count(), 1);
}

TEST(ChangeBasedSeedTest, NeedsTwoVersionsAndParseableVersions) {
  EXPECT_THROW(change_based_seed({{small_tree()}}), Error);
  FileTree broken = small_tree();
  broken["src/calc.mini"] = "fn (";
  try {
    change_based_seed({{small_tree(), broken}});
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("0001"), std::string::npos);
  }
}

TEST(ChangeBasedSeedTest, CandidatesLieInsideChangedLines) {
  CorpusParams params;
  params.modules = 3;
  params.history_steps = 8;
  CorpusHistory history = generate_corpus(17, params);
  int checked = 0;
  for (std::size_t v = 1; v < history.versions.size(); ++v) {
    const FileTree& parent = history.versions[v - 1];
    const FileTree& current = history.versions[v];
    ParsedTree parsed = parse_tree(current);
    for (const MutationCandidate& c : changed_line_candidates(parent, current, parsed)) {
      EXPECT_FALSE(is_test_path(c.path));
      std::vector<std::string> old_lines = split_lines(parent.count(c.path) ? parent.at(c.path) : "");
      std::vector<std::string> new_lines = split_lines(current.at(c.path));
      // Each target line must be new text or differ from the parent's
      // matching line under an LCS alignment.
      std::set<int> changed;
      for (const DiffHunk& h : diff_lines(parent.count(c.path) ? parent.at(c.path) : "",
                                          current.at(c.path), c.path)) {
        for (int i = 0; i < static_cast<int>(h.added_lines.size()); ++i) {
          changed.insert(h.new_start + i);
        }
      }
      for (int line = c.target.line; line <= c.target.end_line; ++line) {
        EXPECT_TRUE(changed.contains(line)) << c.id;
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(ChangeBasedSeedTest, ParallelismDoesNotChangeRecords) {
  CorpusParams params;
  params.modules = 3;
  params.history_steps = 6;
  CorpusHistory history = generate_corpus(23, params);
  SeedOptions one;
  SeedOptions eight;
  eight.parallelism = 8;
  SeedResult a = change_based_seed(history, one);
  SeedResult b = change_based_seed(history, eight);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.stats, b.stats);
  EXPECT_FALSE(a.records.empty());
}

}  // namespace
}  // namespace lexprio::seedgen
