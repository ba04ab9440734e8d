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

#include <algorithm>
#include <string>
#include <vector>

#include "lexprio/diff.h"
#include "lexprio/error.h"
#include "lexprio/io.h"
#include "lexprio/minilang/parser.h"
#include "lexprio/query.h"
#include "lexprio/rng.h"

namespace lexprio {
namespace {

const std::string kFixtures = LEXPRIO_FIXTURE_DIR;

std::string fixture(const std::string& name) {
  return read_text_file(kFixtures + "/" + name);
}

// Applies hunks (zero context) to `old_text`, independent of the diff
// implementation.
std::vector<std::string> apply_hunks(const std::vector<std::string>& old_lines,
                               const std::vector<DiffHunk>& hunks) {
  std::vector<std::string> out;
  std::size_t next = 0;  // 0-based index into old_lines
  for (const DiffHunk& h : hunks) {
    std::size_t start = h.old_len == 0 ? static_cast<std::size_t>(h.old_start)
                                       : static_cast<std::size_t>(h.old_start - 1);
    while (next < start) out.push_back(old_lines[next++]);
    for (const HunkLine& line : h.lines) {
      if (line.kind == ' ') {
        out.push_back(old_lines[next++]);
      } else if (line.kind == '-') {
        EXPECT_EQ(old_lines[next], line.text);
        ++next;
      } else {
        out.push_back(line.text);
      }
    }
  }
  while (next < old_lines.size()) out.push_back(old_lines[next++]);
  return out;
}

TEST(ParseUnifiedDiffTest, AdminCheckHunk) {
  std::vector<DiffHunk> hunks = parse_unified_diff(fixture("admin_check.patch"));
  ASSERT_EQ(hunks.size(), 1u);
  const DiffHunk& h = hunks[0];
  EXPECT_EQ(h.file, "app/views.py");
  EXPECT_EQ(h.old_start, 42);
  EXPECT_EQ(h.old_len, 1);
  EXPECT_EQ(h.new_start, 42);
  EXPECT_EQ(h.new_len, 2);
  EXPECT_EQ(h.removed_lines, (std::vector<std::string>{"return resource"}));
  EXPECT_EQ(h.added_lines,
            (std::vector<std::string>{"if session.user.is_admin():",
                                      "    return resource"}));
}

TEST(ParseUnifiedDiffTest, Empty) { EXPECT_TRUE(parse_unified_diff("").empty()); }

TEST(ParseUnifiedDiffTest, DefaultLengthAndPureDeletion) {
  std::vector<DiffHunk> hunks =
      parse_unified_diff("--- a/f\n+++ b/f\n@@ -5 +5,0 @@\n-gone\n");
  ASSERT_EQ(hunks.size(), 1u);
  EXPECT_EQ(hunks[0].old_start, 5);
  EXPECT_EQ(hunks[0].old_len, 1);
  EXPECT_EQ(hunks[0].new_start, 5);
  EXPECT_EQ(hunks[0].new_len, 0);
  EXPECT_EQ(hunks[0].removed_lines, (std::vector<std::string>{"gone"}));
}

TEST(ParseUnifiedDiffTest, FileFromNearestHeader) {
  std::vector<DiffHunk> hunks = parse_unified_diff(
      "--- a/one\n+++ b/one\n@@ -1 +1 @@\n-a\n+b\n"
      "--- a/two\n+++ b/two\n@@ -3 +3 @@\n-c\n+d\n");
  ASSERT_EQ(hunks.size(), 2u);
  EXPECT_EQ(hunks[0].file, "one");
  EXPECT_EQ(hunks[1].file, "two");
}

TEST(ParseUnifiedDiffTest, MalformedHeaderReportsLine) {
  try {
    parse_unified_diff("--- a/f\n+++ b/f\n@@ -x +1 @@\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(DiffLinesTest, InsertionRegion) {
  std::vector<DiffHunk> hunks = diff_lines("a\nb\nc\n", "a\nx\ny\nb\nc\n", "f");
  ASSERT_EQ(hunks.size(), 1u);
  EXPECT_EQ(hunks[0].added_lines, (std::vector<std::string>{"x", "y"}));
  EXPECT_TRUE(hunks[0].removed_lines.empty());
  ASSERT_EQ(hunks[0].regions.size(), 1u);
  EXPECT_EQ(hunks[0].regions[0], (ChangeRegion{2, 3}));
}

TEST(DiffLinesTest, IdenticalTextsHaveNoHunks) {
  EXPECT_TRUE(diff_lines("a\nb\n", "a\nb\n", "f").empty());
}

TEST(DiffPropertyTest, ApplyingHunksReproducesNewText) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> a;
    std::vector<std::string> b;
    for (std::size_t i = rng.below(12); i > 0; --i) a.push_back(std::string(1, "abcd"[rng.below(4)]));
    for (std::size_t i = rng.below(12); i > 0; --i) b.push_back(std::string(1, "abcd"[rng.below(4)]));
    std::string ta;
    std::string tb;
    for (const auto& l : a) ta += l + "\n";
    for (const auto& l : b) tb += l + "\n";
    std::vector<DiffHunk> hunks = diff_lines(ta, tb, "f");
    EXPECT_EQ(apply_hunks(a, hunks), b) << ta << "---\n" << tb;
    std::vector<DiffHunk> reparsed = parse_unified_diff(format_unified_diff(hunks));
    ASSERT_EQ(reparsed.size(), hunks.size());
    for (std::size_t i = 0; i < hunks.size(); ++i) {
      EXPECT_EQ(reparsed[i].removed_lines, hunks[i].removed_lines);
      EXPECT_EQ(reparsed[i].added_lines, hunks[i].added_lines);
      EXPECT_EQ(reparsed[i].old_start, hunks[i].old_start);
      EXPECT_EQ(reparsed[i].new_start, hunks[i].new_start);
    }
  }
}

TEST(ResolveContextTest, NestedFunction) {
  mini::Module module = mini::parse_minilang(fixture("context.mini"), "src/context.mini");
  EXPECT_EQ(resolve_context(module, 6),
            (std::vector<std::string>{"outer", "login_user"}));
  EXPECT_EQ(resolve_context(module, 9), (std::vector<std::string>{"outer"}));
}

TEST(ResolveContextTest, TopLevel) {
  mini::Module module = mini::parse_minilang(fixture("context.mini"), "src/context.mini");
  EXPECT_TRUE(resolve_context(module, 2).empty());
}

TEST(ResolveContextTest, BeyondEndOfFile) {
  mini::Module module = mini::parse_minilang(fixture("context.mini"), "src/context.mini");
  EXPECT_THROW(resolve_context(module, 1000000), Error);
}

TEST(BuildQueryTest, AdminCheckWithoutWindow) {
  std::vector<DiffHunk> hunks = parse_unified_diff(fixture("admin_check.patch"));
  ChangeQuery q = build_query(hunks, {}, 0, false);
  EXPECT_EQ(q.terms, (TermSet{"admin", "is", "resource", "session", "user"}));
  EXPECT_EQ(q.window, 0);
  EXPECT_FALSE(q.with_context);
}

TEST(BuildQueryTest, MissingSourceWithWindow) {
  std::vector<DiffHunk> hunks = parse_unified_diff(fixture("admin_check.patch"));
  EXPECT_THROW(build_query(hunks, {}, 2, false), Error);
  EXPECT_THROW(build_query(hunks, {}, 0, true), Error);
}

std::string context_before() {
  std::string text = fixture("context.mini");
  std::string changed = "  let level = user + 1;";
  std::size_t at = text.find(changed);
  return text.replace(at, changed.size(), "  let level = user;");
}

TEST(BuildQueryTest, WindowIsMonotone) {
  std::string after = fixture("context.mini");
  std::vector<DiffHunk> hunks = diff_lines(context_before(), after, "src/context.mini");
  SourceStore sources{{"src/context.mini", after}};
  ChangeQuery q0 = build_query(hunks, sources, 0, false);
  ChangeQuery q2 = build_query(hunks, sources, 2, false);
  EXPECT_EQ(q0.terms, (TermSet{"level", "user"}));
  EXPECT_TRUE(std::includes(q2.terms.begin(), q2.terms.end(), q0.terms.begin(),
                            q0.terms.end()));
  EXPECT_TRUE(q2.terms.contains("base"));
  EXPECT_TRUE(q2.terms.contains("limit"));
}

TEST(BuildQueryTest, ContextAddsEnclosingNames) {
  std::string after = fixture("context.mini");
  std::vector<DiffHunk> hunks = diff_lines(context_before(), after, "src/context.mini");
  SourceStore sources{{"src/context.mini", after}};
  ChangeQuery plain = build_query(hunks, sources, 0, false);
  ChangeQuery with = build_query(hunks, sources, 0, true);
  EXPECT_FALSE(plain.terms.contains("check"));
  EXPECT_TRUE(with.terms.contains("check"));
  EXPECT_TRUE(with.terms.contains("admin"));
  EXPECT_TRUE(with.with_context);
}

TEST(BuildQueryTest, NonMiniLangSourceFallsBackToLines) {
  std::string after = "alpha beta\ngammaDelta()\nepsilon\n";
  std::vector<DiffHunk> hunks = diff_lines("alpha beta\nold\nepsilon\n", after, "x.txt");
  ChangeQuery q = build_query(hunks, {{"x.txt", after}}, 1, false);
  EXPECT_EQ(q.terms, (TermSet{"alpha", "beta", "delta", "epsilon", "gamma", "old"}));
}

}  // namespace
}  // namespace lexprio
