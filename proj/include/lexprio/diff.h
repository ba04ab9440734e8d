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

#ifndef LEXPRIO_DIFF_H_
#define LEXPRIO_DIFF_H_

#include <string>
#include <string_view>
#include <vector>

namespace lexprio {

// A contiguous run of changed lines expressed in new-file line numbers.
// For a pure deletion last == first - 1 and `first` is the line that now
// follows the removed text.
struct ChangeRegion {
  int first = 0;
  int last = 0;

  bool empty() const { return last < first; }
  bool operator==(const ChangeRegion&) const = default;
};

struct HunkLine {
  char kind = ' ';  // ' ', '-' or '+'
  std::string text;
  bool operator==(const HunkLine&) const = default;
};

struct DiffHunk {
  std::string file;
  int old_start = 0;
  int old_len = 0;
  int new_start = 0;
  int new_len = 0;
  std::vector<std::string> removed_lines;
  std::vector<std::string> added_lines;
  std::vector<ChangeRegion> regions;
  // Full hunk body including context lines.
  std::vector<HunkLine> lines;

  bool operator==(const DiffHunk&) const = default;
};

// Parses unified diff text. The file of each hunk comes from the nearest
// preceding "+++" header ("b/" prefix stripped; the "---" path is used when
// the new side is /dev/null). Omitted hunk lengths default to 1. Throws
// ParseError carrying the line number of a malformed hunk header or body.
std::vector<DiffHunk> parse_unified_diff(std::string_view text);

// Line-based diff of two versions of `path` using a longest common
// subsequence matcher. Hunks carry `context` unchanged lines on each side.
std::vector<DiffHunk> diff_lines(std::string_view old_text,
                                 std::string_view new_text,
                                 const std::string& path, int context = 0);

// Renders hunks in unified format with "--- a/<file>" / "+++ b/<file>"
// headers before the first hunk of each file.
std::string format_unified_diff(const std::vector<DiffHunk>& hunks);

// Splits text into lines without their terminators.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace lexprio

#endif  // LEXPRIO_DIFF_H_
