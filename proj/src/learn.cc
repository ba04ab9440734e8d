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

#include "lexprio/learn.h"

#include <algorithm>
#include <limits>
#include <set>

#include "lexprio/error.h"

namespace lexprio {

int RunRecord::failure_count() const {
  int failures = 0;
  for (const auto& [id, outcome] : outcomes) {
    if (outcome == Outcome::kFail) ++failures;
  }
  return failures;
}

void validate(const RunRecord& record) {
  std::set<std::string> ordered(record.untreated_order.begin(),
                                record.untreated_order.end());
  if (ordered.size() != record.untreated_order.size()) {
    throw Error("run " + record.run_id + ": duplicate test in order");
  }
  bool same_keys = ordered.size() == record.outcomes.size() &&
                   ordered.size() == record.durations.size();
  if (same_keys) {
    for (const auto& [id, outcome] : record.outcomes) {
      if (!ordered.contains(id) || !record.durations.contains(id)) {
        same_keys = false;
        break;
      }
    }
  }
  if (!same_keys) {
    throw Error("run " + record.run_id +
                ": outcomes, durations and order name different tests");
  }
  for (const auto& [id, seconds] : record.durations) {
    if (!(seconds >= 0.0)) {
      throw Error("run " + record.run_id + ": negative duration for " + id);
    }
  }
  if (record.failure_count() == 0) {
    throw Error("run " + record.run_id + " has no failing test");
  }
}

std::map<std::string, TermStats> per_run_term_stats(const RunRecord& record,
                                                    const TestIndex& index) {
  int failures = record.failure_count();
  if (failures == 0) {
    throw Error("run " + record.run_id + " has no failing test");
  }
  std::vector<std::pair<const TestDocument*, bool>> executed;
  executed.reserve(record.outcomes.size());
  for (const auto& [id, outcome] : record.outcomes) {
    const TestDocument* doc = index.find(id);
    if (doc == nullptr) {
      throw Error("run " + record.run_id + ": test '" + id +
                  "' is not in the index");
    }
    executed.emplace_back(doc, outcome == Outcome::kFail);
  }

  std::map<std::string, TermStats> stats;
  for (const std::string& term : record.change_terms) {
    int tests_with = 0;
    int failing_with = 0;
    for (const auto& [doc, failed] : executed) {
      if (!doc->terms.contains(term)) continue;
      ++tests_with;
      if (failed) ++failing_with;
    }
    TermStats s;
    s.prec = tests_with == 0 ? 0.0
                             : static_cast<double>(failing_with) / tests_with;
    s.rec = static_cast<double>(failing_with) / failures;
    s.f1 = s.prec + s.rec == 0.0 ? 0.0
                                 : 2.0 * s.prec * s.rec / (s.prec + s.rec);
    stats.emplace(term, s);
  }
  return stats;
}

namespace {

double sorted_mean(std::vector<double>& samples) {
  std::sort(samples.begin(), samples.end());
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

}  // namespace

WeightTable aggregate_weights(const std::vector<RunRecord>& records,
                              const IndexSource& index_for) {
  struct Samples {
    std::vector<double> prec, rec, f1;
  };
  std::map<std::string, Samples, std::less<>> samples;
  for (const RunRecord& record : records) {
    for (const auto& [term, s] :
         per_run_term_stats(record, index_for(record))) {
      Samples& acc = samples[term];
      acc.prec.push_back(s.prec);
      acc.rec.push_back(s.rec);
      acc.f1.push_back(s.f1);
    }
  }
  WeightTable table;
  for (auto& [term, acc] : samples) {
    TermWeight w;
    w.sample_count = static_cast<int>(acc.prec.size());
    w.mean_prec = sorted_mean(acc.prec);
    w.mean_rec = sorted_mean(acc.rec);
    w.mean_f1 = sorted_mean(acc.f1);
    table.emplace(term, w);
  }
  return table;
}

std::vector<std::pair<int, double>> failure_explanation_curve(
    const std::vector<RunRecord>& records, const WeightTable& table,
    const IndexSource& index_for) {
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(table.size());
  for (const auto& [term, w] : table) ranked.emplace_back(term, w.mean_f1);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  std::map<std::string, int, std::less<>> rank_of;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    rank_of.emplace(ranked[k].first, static_cast<int>(k));
  }

  // first_k[k] counts failing pairs first explained by term k.
  std::vector<long long> first_k(ranked.size(), 0);
  long long pairs = 0;
  for (const RunRecord& record : records) {
    const TestIndex& index = index_for(record);
    for (const auto& [id, outcome] : record.outcomes) {
      if (outcome != Outcome::kFail) continue;
      ++pairs;
      const TestDocument* doc = index.find(id);
      if (doc == nullptr) continue;
      int best = std::numeric_limits<int>::max();
      for (const std::string& term : record.change_terms) {
        auto it = rank_of.find(term);
        if (it != rank_of.end() && it->second < best &&
            doc->terms.contains(term)) {
          best = it->second;
        }
      }
      if (best != std::numeric_limits<int>::max()) {
        ++first_k[static_cast<std::size_t>(best)];
      }
    }
  }

  std::vector<std::pair<int, double>> curve;
  curve.reserve(ranked.size());
  long long explained = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    explained += first_k[k];
    double fraction = pairs == 0 ? 0.0
                                 : static_cast<double>(explained) /
                                       static_cast<double>(pairs);
    curve.emplace_back(static_cast<int>(k) + 1, fraction);
  }
  return curve;
}

}  // namespace lexprio
