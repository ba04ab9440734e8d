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

#include "lexprio/index.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lexprio/error.h"

namespace lexprio {

int TestIndex::doc_freq(std::string_view term) const {
  auto it = doc_freq_.find(term);
  return it == doc_freq_.end() ? 0 : it->second;
}

double TestIndex::avg_len() const {
  if (docs_.empty()) return 0.0;
  return static_cast<double>(total_length_) /
         static_cast<double>(docs_.size());
}

const TestDocument* TestIndex::find(std::string_view id) const {
  long pos = position(id);
  return pos < 0 ? nullptr : &docs_[static_cast<std::size_t>(pos)];
}

long TestIndex::position(std::string_view id) const {
  auto it = position_.find(std::string(id));
  return it == position_.end() ? -1 : static_cast<long>(it->second);
}

void TestIndex::add_stats(const TestDocument& doc) {
  for (const auto& [term, count] : doc.terms.counts()) ++doc_freq_[term];
  total_length_ += doc.length();
}

void TestIndex::remove_stats(const TestDocument& doc) {
  for (const auto& [term, count] : doc.terms.counts()) {
    auto it = doc_freq_.find(term);
    if (--it->second == 0) doc_freq_.erase(it);
  }
  total_length_ -= doc.length();
}

void TestIndex::reindex_from(std::size_t first) {
  for (std::size_t i = first; i < docs_.size(); ++i) {
    position_[docs_[i].id] = i;
  }
}

void TestIndex::upsert(TestDocument doc) {
  auto it = position_.find(doc.id);
  if (it != position_.end()) {
    TestDocument& slot = docs_[it->second];
    remove_stats(slot);
    add_stats(doc);
    slot = std::move(doc);
    return;
  }
  add_stats(doc);
  position_.emplace(doc.id, docs_.size());
  docs_.push_back(std::move(doc));
}

void TestIndex::remove(std::string_view id) {
  auto it = position_.find(std::string(id));
  if (it == position_.end()) return;
  std::size_t pos = it->second;
  remove_stats(docs_[pos]);
  position_.erase(it);
  docs_.erase(docs_.begin() + static_cast<long>(pos));
  reindex_from(pos);
}

bool TestIndex::operator==(const TestIndex& other) const {
  return docs_ == other.docs_ && doc_freq_ == other.doc_freq_ &&
         total_length_ == other.total_length_;
}

// Computes every statistic from scratch; the incremental paths in
// upsert/remove are checked against this.
TestIndex build_index(std::vector<TestDocument> tests) {
  TestIndex index;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (!index.position_.emplace(tests[i].id, i).second) {
      throw Error("duplicate test id '" + tests[i].id + "'");
    }
  }
  for (const TestDocument& doc : tests) {
    for (const auto& [term, count] : doc.terms.counts()) {
      ++index.doc_freq_[term];
    }
    index.total_length_ += doc.length();
  }
  index.docs_ = std::move(tests);
  return index;
}

TestIndex upsert_test(TestIndex index, TestDocument doc) {
  index.upsert(std::move(doc));
  return index;
}

TestIndex remove_test(TestIndex index, std::string_view id) {
  index.remove(id);
  return index;
}

double idf(const TestIndex& index, std::string_view term) {
  if (index.doc_count() == 0) throw Error("idf is undefined on an empty index");
  double n = static_cast<double>(index.doc_count());
  double nf = static_cast<double>(index.doc_freq(term));
  return std::max(0.0, std::log((n - nf + 0.5) / (nf + 0.5)));
}

}  // namespace lexprio
