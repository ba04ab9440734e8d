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

#include "lexprio/lex.h"

#include <stdexcept>
#include <utility>

namespace lexprio {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
bool is_word(char c) { return is_alpha(c) || (c >= '0' && c <= '9') || c == '_'; }

char to_lower(char c) { return is_upper(c) ? static_cast<char>(c + 32) : c; }

void emit(std::string_view piece, std::vector<Feature>& out) {
  if (piece.empty()) return;
  std::string lower;
  lower.reserve(piece.size());
  for (char c : piece) lower.push_back(to_lower(c));
  out.emplace_back(std::move(lower));
}

// Splits one purely alphabetic fragment at case boundaries.
void split_alpha_run(std::string_view run, std::vector<Feature>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < run.size(); ++i) {
    char prev = run[i - 1];
    char c = run[i];
    bool boundary = false;
    if (is_lower(prev) && is_upper(c)) {
      boundary = true;
    } else if (is_upper(prev) && is_upper(c) && i + 1 < run.size() &&
               is_lower(run[i + 1])) {
      // "HTTPServer": split before the 'S'.
      boundary = true;
    }
    if (boundary) {
      emit(run.substr(start, i - start), out);
      start = i;
    }
  }
  emit(run.substr(start), out);
}

}  // namespace

Feature::Feature(std::string text) : text_(std::move(text)) {
  if (!valid(text_)) {
    throw std::invalid_argument("not a normalized feature: '" + text_ + "'");
  }
}

bool Feature::valid(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!is_lower(c)) return false;
  }
  return true;
}

void FeatureBag::add(const Feature& feature, int count) {
  if (count <= 0) return;
  auto it = counts_.find(feature.text());
  if (it == counts_.end()) {
    counts_.emplace(feature.text(), count);
  } else {
    it->second += count;
  }
  length_ += count;
}

void FeatureBag::add_all(const FeatureBag& other) {
  for (const auto& [term, count] : other.counts_) {
    counts_[term] += count;
    length_ += count;
  }
}

int FeatureBag::count(std::string_view term) const {
  auto it = counts_.find(term);
  return it == counts_.end() ? 0 : it->second;
}

bool FeatureBag::is_subbag_of(const FeatureBag& other) const {
  for (const auto& [term, count] : counts_) {
    if (other.count(term) < count) return false;
  }
  return true;
}

std::vector<Feature> split_identifier(std::string_view raw) {
  std::vector<Feature> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (!is_alpha(raw[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < raw.size() && is_alpha(raw[j])) ++j;
    split_alpha_run(raw.substr(i, j - i), out);
    i = j;
  }
  return out;
}

FeatureBag scan_text(std::string_view text, const Stoplist& stoplist) {
  FeatureBag bag;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word(text[j])) ++j;
    for (Feature& f : split_identifier(text.substr(i, j - i))) {
      if (!stoplist.contains(f.text())) bag.add(f);
    }
    i = j;
  }
  return bag;
}

namespace {

void add_split(std::string_view raw, FeatureBag& bag) {
  for (const Feature& f : split_identifier(raw)) bag.add(f);
}

}  // namespace

void collect_features(const mini::Expr& expr, FeatureBag& bag) {
  if (expr.kind == mini::ExprKind::kName ||
      expr.kind == mini::ExprKind::kStr) {
    add_split(expr.text, bag);
  }
  for (const mini::Expr& child : expr.children) collect_features(child, bag);
}

void collect_features(const mini::Stmt& stmt, FeatureBag& bag) {
  switch (stmt.kind) {
    case mini::StmtKind::kFuncDef:
    case mini::StmtKind::kLet:
    case mini::StmtKind::kAssign:
      add_split(stmt.name, bag);
      break;
    default:
      break;
  }
  for (const mini::Param& p : stmt.params) add_split(p.name, bag);
  if (stmt.doc) add_split(stmt.doc->text, bag);
  for (const mini::Expr& e : stmt.exprs) collect_features(e, bag);
  for (const mini::Stmt& s : stmt.body) collect_features(s, bag);
  for (const mini::Stmt& s : stmt.else_body) collect_features(s, bag);
}

FeatureBag extract_test_features(const mini::Stmt& function) {
  FeatureBag bag;
  collect_features(function, bag);
  return bag;
}

}  // namespace lexprio
