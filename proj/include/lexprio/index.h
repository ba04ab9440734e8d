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

#ifndef LEXPRIO_INDEX_H_
#define LEXPRIO_INDEX_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexprio/lex.h"

namespace lexprio {

// One indexed test. `id` is "file::function".
struct TestDocument {
  std::string id;
  FeatureBag terms;

  long long length() const { return terms.length(); }
  bool operator==(const TestDocument&) const = default;
};

// Inverted lexical index over test documents.
//
// Documents keep insertion order, which is the untreated execution order.
// Derived statistics (N, n_f, total length) are maintained incrementally and
// always equal what a rebuild over docs() would produce.
class TestIndex {
 public:
  TestIndex() = default;

  const std::vector<TestDocument>& docs() const { return docs_; }
  std::size_t doc_count() const { return docs_.size(); }
  // n_f; 0 for unseen terms.
  int doc_freq(std::string_view term) const;
  const std::map<std::string, int, std::less<>>& doc_freqs() const {
    return doc_freq_;
  }
  long long total_length() const { return total_length_; }
  // d-hat; 0 for an empty index.
  double avg_len() const;

  const TestDocument* find(std::string_view id) const;
  // Insertion position of `id`, or -1.
  long position(std::string_view id) const;

  // Replaces an existing document in place or appends a new one.
  void upsert(TestDocument doc);
  // No-op for absent ids.
  void remove(std::string_view id);

  bool operator==(const TestIndex& other) const;

 private:
  friend TestIndex build_index(std::vector<TestDocument> tests);

  void add_stats(const TestDocument& doc);
  void remove_stats(const TestDocument& doc);
  void reindex_from(std::size_t first);

  std::vector<TestDocument> docs_;
  std::unordered_map<std::string, std::size_t> position_;
  std::map<std::string, int, std::less<>> doc_freq_;
  long long total_length_ = 0;
};

// Throws lexprio::Error naming the first duplicate id.
TestIndex build_index(std::vector<TestDocument> tests);

// Value-returning forms of TestIndex::upsert/remove.
TestIndex upsert_test(TestIndex index, TestDocument doc);
TestIndex remove_test(TestIndex index, std::string_view id);

// max(0, ln((N - n_f + 0.5) / (n_f + 0.5))). Throws on an empty index.
double idf(const TestIndex& index, std::string_view term);

}  // namespace lexprio

#endif  // LEXPRIO_INDEX_H_
