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

#ifndef LEXPRIO_LEX_H_
#define LEXPRIO_LEX_H_

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/minilang/ast.h"

namespace lexprio {

// A normalized lexical token: nonempty, lowercase ASCII letters only.
class Feature {
 public:
  // Throws std::invalid_argument if `text` violates the invariant.
  explicit Feature(std::string text);

  const std::string& text() const { return text_; }
  auto operator<=>(const Feature&) const = default;

  static bool valid(std::string_view text);

 private:
  std::string text_;
};

// Multiset of features. Counts are always >= 1.
class FeatureBag {
 public:
  FeatureBag() = default;

  void add(const Feature& feature, int count = 1);
  void add_all(const FeatureBag& other);

  int count(std::string_view term) const;
  bool contains(std::string_view term) const { return count(term) > 0; }
  // Sum of counts, |d|.
  long long length() const { return length_; }
  std::size_t distinct() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const std::map<std::string, int, std::less<>>& counts() const {
    return counts_;
  }

  // True if every count here is <= the count in `other`.
  bool is_subbag_of(const FeatureBag& other) const;

  bool operator==(const FeatureBag&) const = default;

 private:
  std::map<std::string, int, std::less<>> counts_;
  long long length_ = 0;
};

// Splits an identifier at camel-case boundaries and at every non-alphabetic
// character, lowercasing the pieces. An uppercase run followed by a
// lowercase letter splits before its last capital: "HTTPServer" yields
// "http", "server".
std::vector<Feature> split_identifier(std::string_view raw);

// Optional stoplist applied by scan_text; empty by default.
using Stoplist = std::set<std::string, std::less<>>;

// Fallback tokenizer for text in an unknown language: every maximal
// [A-Za-z0-9_] run goes through split_identifier.
FeatureBag scan_text(std::string_view text, const Stoplist& stoplist = {});

// Features of a MiniLang test function: its name, parameter names, doc
// string, and every identifier and string literal in its body. Keywords
// never contribute because only named nodes and strings are visited.
FeatureBag extract_test_features(const mini::Stmt& function);

// Features of the named nodes and strings anywhere under `stmt`.
void collect_features(const mini::Stmt& stmt, FeatureBag& bag);
void collect_features(const mini::Expr& expr, FeatureBag& bag);

}  // namespace lexprio

#endif  // LEXPRIO_LEX_H_
