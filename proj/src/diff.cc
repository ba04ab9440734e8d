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

#include "lexprio/diff.h"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "lexprio/error.h"

namespace lexprio {

namespace {

// Fills removed/added lines and change regions from hunk.lines.
void finish_hunk(DiffHunk& hunk) {
  hunk.removed_lines.clear();
  hunk.added_lines.clear();
  hunk.regions.clear();
  int cur_new = hunk.new_len == 0 ? hunk.new_start + 1 : hunk.new_start;
  bool in_run = false;
  ChangeRegion run;
  auto close_run = [&] {
    if (in_run) hunk.regions.push_back(run);
    in_run = false;
  };
  for (const HunkLine& line : hunk.lines) {
    if (line.kind == ' ') {
      close_run();
      ++cur_new;
      continue;
    }
    if (!in_run) {
      in_run = true;
      run = ChangeRegion{cur_new, cur_new - 1};
    }
    if (line.kind == '-') {
      hunk.removed_lines.push_back(line.text);
    } else {
      hunk.added_lines.push_back(line.text);
      run.last = cur_new;
      ++cur_new;
    }
  }
  close_run();
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string header_path(std::string_view rest) {
  // Drop a trailing timestamp separated by a tab.
  if (auto tab = rest.find('\t'); tab != std::string_view::npos) {
    rest = rest.substr(0, tab);
  }
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) {
    rest.remove_suffix(1);
  }
  if (starts_with(rest, "a/") || starts_with(rest, "b/")) rest.remove_prefix(2);
  return std::string(rest);
}

class HeaderReader {
 public:
  HeaderReader(std::string_view text, int line_no)
      : text_(text), line_no_(line_no) {}

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  int number() {
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9') {
      fail("expected a line number");
    }
    std::int64_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 100000000) fail("line number out of range");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Start and length of one side; the length defaults to 1.
  std::pair<int, int> range() {
    int start = number();
    int len = 1;
    if (accept(',')) len = number();
    return {start, len};
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("malformed hunk header at line " +
                         std::to_string(line_no_) + ": " + why,
                     line_no_, static_cast<int>(pos_) + 1);
  }

 private:
  std::string_view text_;
  int line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<DiffHunk> parse_unified_diff(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  for (std::string& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  std::vector<DiffHunk> hunks;
  std::string old_path;
  std::string file;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& line = lines[i];
    int line_no = static_cast<int>(i) + 1;
    if (starts_with(line, "--- ")) {
      old_path = header_path(std::string_view(line).substr(4));
      ++i;
      continue;
    }
    if (starts_with(line, "+++ ")) {
      file = header_path(std::string_view(line).substr(4));
      if (file == "/dev/null") file = old_path;
      ++i;
      continue;
    }
    if (!starts_with(line, "@@")) {
      ++i;
      continue;
    }
    HeaderReader header(std::string_view(line).substr(2), line_no);
    header.skip_spaces();
    header.expect('-');
    DiffHunk hunk;
    hunk.file = file;
    std::tie(hunk.old_start, hunk.old_len) = header.range();
    header.expect(' ');
    header.skip_spaces();
    header.expect('+');
    std::tie(hunk.new_start, hunk.new_len) = header.range();
    header.skip_spaces();
    header.expect('@');
    header.expect('@');
    ++i;

    int old_seen = 0;
    int new_seen = 0;
    while (old_seen < hunk.old_len || new_seen < hunk.new_len) {
      if (i >= lines.size()) {
        throw ParseError("truncated hunk starting at line " +
                             std::to_string(line_no),
                         static_cast<int>(i) + 1, 0);
      }
      const std::string& body = lines[i];
      if (starts_with(body, "\\")) {
        ++i;
        continue;
      }
      char kind = body.empty() ? ' ' : body[0];
      std::string content = body.empty() ? std::string() : body.substr(1);
      if (kind != ' ' && kind != '-' && kind != '+') {
        throw ParseError("unexpected line in hunk body at line " +
                             std::to_string(i + 1),
                         static_cast<int>(i) + 1, 1);
      }
      if (kind != '+') ++old_seen;
      if (kind != '-') ++new_seen;
      if (old_seen > hunk.old_len || new_seen > hunk.new_len) {
        throw ParseError("hunk body longer than its header at line " +
                             std::to_string(i + 1),
                         static_cast<int>(i) + 1, 1);
      }
      hunk.lines.push_back(HunkLine{kind, std::move(content)});
      ++i;
    }
    while (i < lines.size() && starts_with(lines[i], "\\")) ++i;
    finish_hunk(hunk);
    hunks.push_back(std::move(hunk));
  }
  return hunks;
}

std::vector<DiffHunk> diff_lines(std::string_view old_text,
                                 std::string_view new_text,
                                 const std::string& path, int context) {
  std::vector<std::string> a = split_lines(old_text);
  std::vector<std::string> b = split_lines(new_text);

  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  std::size_t n = a.size() - prefix - suffix;
  std::size_t m = b.size() - prefix - suffix;

  // lcs[i][j] = LCS length of a-middle[i..] and b-middle[j..].
  std::vector<std::uint32_t> lcs((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return lcs[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      if (a[prefix + i] == b[prefix + j]) {
        at(i, j) = at(i + 1, j + 1) + 1;
      } else {
        at(i, j) = std::max(at(i + 1, j), at(i, j + 1));
      }
    }
  }

  std::vector<HunkLine> script;
  script.reserve(a.size() + b.size());
  for (std::size_t k = 0; k < prefix; ++k) script.push_back({' ', a[k]});
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[prefix + i] == b[prefix + j]) {
      script.push_back({' ', a[prefix + i]});
      ++i;
      ++j;
    } else if (j >= m || (i < n && at(i + 1, j) >= at(i, j + 1))) {
      script.push_back({'-', a[prefix + i]});
      ++i;
    } else {
      script.push_back({'+', b[prefix + j]});
      ++j;
    }
  }
  for (std::size_t k = a.size() - suffix; k < a.size(); ++k) {
    script.push_back({' ', a[k]});
  }

  // Old/new line counts consumed before each script position.
  std::vector<int> old_before(script.size() + 1, 0);
  std::vector<int> new_before(script.size() + 1, 0);
  for (std::size_t k = 0; k < script.size(); ++k) {
    old_before[k + 1] = old_before[k] + (script[k].kind != '+' ? 1 : 0);
    new_before[k + 1] = new_before[k] + (script[k].kind != '-' ? 1 : 0);
  }

  std::vector<DiffHunk> hunks;
  std::size_t k = 0;
  auto ctx = static_cast<std::size_t>(std::max(context, 0));
  while (k < script.size()) {
    if (script[k].kind == ' ') {
      ++k;
      continue;
    }
    // Extend over changes separated by at most 2*context equal lines.
    std::size_t last_change = k;
    std::size_t scan = k + 1;
    while (scan < script.size()) {
      if (script[scan].kind != ' ') {
        last_change = scan;
        ++scan;
        continue;
      }
      std::size_t gap_end = scan;
      while (gap_end < script.size() && script[gap_end].kind == ' ') {
        ++gap_end;
      }
      if (gap_end < script.size() && gap_end - scan <= 2 * ctx) {
        scan = gap_end;
      } else {
        break;
      }
    }
    std::size_t lo = k >= ctx ? k - ctx : 0;
    std::size_t hi = std::min(script.size(), last_change + 1 + ctx);

    DiffHunk hunk;
    hunk.file = path;
    hunk.lines.assign(script.begin() + static_cast<long>(lo),
                      script.begin() + static_cast<long>(hi));
    hunk.old_len = old_before[hi] - old_before[lo];
    hunk.new_len = new_before[hi] - new_before[lo];
    hunk.old_start = old_before[lo] + (hunk.old_len > 0 ? 1 : 0);
    hunk.new_start = new_before[lo] + (hunk.new_len > 0 ? 1 : 0);
    finish_hunk(hunk);
    hunks.push_back(std::move(hunk));
    k = last_change + 1;
  }
  return hunks;
}

std::string format_unified_diff(const std::vector<DiffHunk>& hunks) {
  std::string out;
  const std::string* current = nullptr;
  for (const DiffHunk& hunk : hunks) {
    if (current == nullptr || *current != hunk.file) {
      out += "--- a/" + hunk.file + "\n+++ b/" + hunk.file + "\n";
      current = &hunk.file;
    }
    out += "@@ -" + std::to_string(hunk.old_start) + "," +
           std::to_string(hunk.old_len) + " +" +
           std::to_string(hunk.new_start) + "," +
           std::to_string(hunk.new_len) + " @@\n";
    for (const HunkLine& line : hunk.lines) {
      out += line.kind;
      out += line.text;
      out += '\n';
    }
  }
  return out;
}

}  // namespace lexprio
