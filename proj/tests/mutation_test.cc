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


#include "lexprio/seedgen/mutation.h"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexprio/diff.h"
#include "lexprio/error.h"
#include "lexprio/minilang/parser.h"
#include "lexprio/minilang/printer.h"
#include "lexprio/seedgen/corpus.h"

namespace lexprio::seedgen {
namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(LEXPRIO_FIXTURE_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<MutationOperator, int> per_operator(const std::vector<MutationCandidate>& cands) {
  std::map<MutationOperator, int> out;
  for (const MutationCandidate& c : cands) ++out[c.op];
  return out;
}

std::string mutate_one(const std::string& source, MutationOperator op) {
  mini::Module m = mini::parse_minilang(source, "src/t.mini");
  for (const MutationCandidate& c : enumerate_candidates(m, "src/t.mini")) {
    if (c.op == op) return mutate_source(source, m, c);
  }
  ADD_FAILURE() << "no candidate for " << to_string(op);
  return {};
}

TEST(EnumerateCandidatesTest, BasicFixture) {
  mini::Module m = mini::parse_minilang(fixture("mutation_basic.mini"), "src/basic.mini");
  std::vector<MutationCandidate> cands = enumerate_candidates(m, "src/basic.mini");
  std::vector<std::string> ids;
  for (const MutationCandidate& c : cands) ids.push_back(c.id);
  EXPECT_EQ(ids, (std::vector<std::string>{
                     "src/basic.mini:OmitCall:3:24",
                     "src/basic.mini:SwapArithmeticOperator:3:32",
                     "src/basic.mini:ModifyNumber:3:34",
                     "src/basic.mini:NegateBranchCondition:4:6",
                     "src/basic.mini:OmitCall:5:15",
                     "src/basic.mini:ModifyNumber:5:23",
                 }));
}

TEST(EnumerateCandidatesTest, WhileTrueGuardsBranchesAndCalls) {
  mini::Module m = mini::parse_minilang(fixture("mutation_loop.mini"), "src/loop.mini");
  std::vector<MutationCandidate> cands = enumerate_candidates(m, "src/loop.mini");
  std::map<MutationOperator, int> counts = per_operator(cands);
  EXPECT_EQ(counts[MutationOperator::kNegateBranchCondition], 1);
  EXPECT_EQ(counts[MutationOperator::kOmitCall], 1);
  EXPECT_EQ(counts[MutationOperator::kSwapArithmeticOperator], 2);
  EXPECT_EQ(counts[MutationOperator::kModifyNumber], 5);
  for (const MutationCandidate& c : cands) {
    bool guarded = c.op == MutationOperator::kNegateBranchCondition ||
                   c.op == MutationOperator::kOmitCall;
    // Lines 5-9 are the while-true body of drain.
    if (guarded) EXPECT_TRUE(c.anchor.line < 4 || c.anchor.line > 10) << c.id;
  }
}

TEST(EnumerateCandidatesTest, EmptyModuleAndTestFiles) {
  mini::Module empty = mini::parse_minilang("", "src/e.mini");
  EXPECT_TRUE(enumerate_candidates(empty, "src/e.mini").empty());
  mini::Module test = mini::parse_minilang("fn test_a() { assert f(1) == 2; }", "tests/t.mini");
  EXPECT_TRUE(enumerate_candidates(test, "tests/t.mini").empty());
}

TEST(EnumerateCandidatesTest, LogicalAndComparisonOperatorsAreIgnored) {
  mini::Module m = mini::parse_minilang("fn f(a, b) { return a < b and a != b or a >= b; }", "f");
  EXPECT_TRUE(enumerate_candidates(m, "src/f.mini").empty());
}

TEST(ApplyMutationTest, OperatorRewrites) {
  EXPECT_EQ(mutate_one("fn f(arg) {\n  if arg < 0 {\n    return 1;\n  }\n}\n",
                       MutationOperator::kNegateBranchCondition),
            "fn f(arg) {\n  if not (arg < 0) {\n    return 1;\n  }\n}\n");
  EXPECT_EQ(mutate_one("fn f(start, end) {\n  size = end - start;\n}\n",
                       MutationOperator::kSwapArithmeticOperator),
            "fn f(start, end) {\n  size = end + start;\n}\n");
  EXPECT_EQ(mutate_one("fn f(count) {\n  count = count + 1;\n}\n", MutationOperator::kModifyNumber),
            "fn f(count) {\n  count = count + 2;\n}\n");
  EXPECT_EQ(mutate_one("fn f(x) {\n  return g(x, h(x));\n}\n", MutationOperator::kOmitCall),
            "fn f(x) {\n  return nil;\n}\n");
  EXPECT_EQ(mutate_one("fn f(x) { return x * 2; }", MutationOperator::kSwapArithmeticOperator),
            "fn f(x) { return x / 2; }");
  EXPECT_EQ(mutate_one("fn f(x) { return x / 2; }", MutationOperator::kSwapArithmeticOperator),
            "fn f(x) { return x * 2; }");
}

TEST(ApplyMutationTest, AstMatchesSplicedSource) {
  std::string source = fixture("mutation_basic.mini");
  mini::Module m = mini::parse_minilang(source, "src/basic.mini");
  for (const MutationCandidate& c : enumerate_candidates(m, "src/basic.mini")) {
    mini::Module mutated = apply_mutation(m, c);
    mini::Module reparsed =
        mini::parse_minilang(mutate_source(source, m, c), "src/basic.mini");
    EXPECT_TRUE(mini::equivalent(mutated, reparsed)) << c.id;
    EXPECT_FALSE(mini::equivalent(mutated, m)) << c.id;
  }
}

TEST(ApplyMutationTest, UnknownCandidateThrows) {
  mini::Module m = mini::parse_minilang(fixture("mutation_basic.mini"), "src/basic.mini");
  MutationCandidate c = enumerate_candidates(m, "src/basic.mini").front();
  c.anchor.line = 99;
  EXPECT_THROW(apply_mutation(m, c), Error);
  MutationCandidate wrong_op = enumerate_candidates(m, "src/basic.mini").front();
  wrong_op.op = MutationOperator::kModifyNumber;
  EXPECT_THROW(apply_mutation(m, wrong_op), Error);
}

TEST(MutationOperatorTest, NamesRoundTrip) {
  for (MutationOperator op :
       {MutationOperator::kNegateBranchCondition, MutationOperator::kOmitCall,
        MutationOperator::kSwapArithmeticOperator, MutationOperator::kModifyNumber}) {
    EXPECT_EQ(parse_operator(to_string(op)), op);
  }
  EXPECT_FALSE(parse_operator("DeleteStatement").has_value());
}

// Every candidate of every production file in a generated history.
TEST(MutationPropertyTest, ClosureRoundTripAndSingleRegion) {
  CorpusParams params;
  params.modules = 4;
  params.history_steps = 4;
  CorpusHistory history = generate_corpus(5, params);
  int checked = 0;
  for (const FileTree& tree : history.versions) {
    for (const auto& [path, source] : tree) {
      mini::Module m = mini::parse_minilang(source, path);
      std::vector<MutationCandidate> cands = enumerate_candidates(m, path);
      std::set<std::string> ids;
      for (const MutationCandidate& c : cands) {
        EXPECT_TRUE(ids.insert(c.id).second) << c.id;
        mini::Module mutated;
        ASSERT_NO_THROW(mutated = apply_mutation(m, c)) << c.id;
        std::string text = mutate_source(source, m, c);
        EXPECT_TRUE(mini::equivalent(mutated, mini::parse_minilang(text, path))) << c.id;
        // One contiguous differing region: common prefix plus common suffix
        // covers everything outside the target span.
        std::size_t prefix = 0;
        while (prefix < source.size() && prefix < text.size() && source[prefix] == text[prefix]) {
          ++prefix;
        }
        std::size_t suffix = 0;
        while (suffix < source.size() - prefix && suffix < text.size() - prefix &&
               source[source.size() - 1 - suffix] == text[text.size() - 1 - suffix]) {
          ++suffix;
        }
        EXPECT_GE(prefix, c.target.begin) << c.id;
        EXPECT_GE(suffix, source.size() - c.target.end) << c.id;
        EXPECT_LE(diff_lines(source, text, path).size(), 1u) << c.id;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500);
}

}  // namespace
}  // namespace lexprio::seedgen
