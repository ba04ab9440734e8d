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

#ifndef LEXPRIO_QUERY_H_
#define LEXPRIO_QUERY_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/diff.h"
#include "lexprio/lex.h"
#include "lexprio/minilang/ast.h"

namespace lexprio {

using TermSet = std::set<std::string, std::less<>>;

// Distinct normalized terms describing a change.
struct ChangeQuery {
  TermSet terms;
  int window = 0;
  bool with_context = false;

  bool operator==(const ChangeQuery&) const = default;
};

// Post-change file contents keyed by the path used in diff headers.
using SourceStore = std::map<std::string, std::string, std::less<>>;

inline constexpr int kDefaultWindow = 2;

// Names of the function definitions enclosing `line`, outermost first.
// Throws lexprio::Error when `line` is outside the file.
std::vector<std::string> resolve_context(const mini::Module& source, int line);

// Features of one isolated source line: identifiers and string contents when
// the line lexes as MiniLang (unknown punctuation skipped, keywords
// dropped), scan_text otherwise.
FeatureBag line_features(std::string_view line);

// Builds the query for a change: terms of removed and added lines, of the
// `window` lines around each changed region in the post-change file, and,
// with `with_context`, the split names of the definitions enclosing each
// changed line. Post-change files that parse as MiniLang contribute through
// their AST; others line by line.
//
// Throws lexprio::Error if a hunk's file is missing from `sources` while
// window > 0 or with_context is set.
ChangeQuery build_query(const std::vector<DiffHunk>& hunks,
                        const SourceStore& sources, int window,
                        bool with_context);

}  // namespace lexprio

#endif  // LEXPRIO_QUERY_H_
