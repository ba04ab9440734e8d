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

#include "lexprio/rank.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>
#include <utility>

#include "lexprio/error.h"
#include "lexprio/rng.h"

namespace lexprio {

namespace {

constexpr std::array<std::pair<StrategyKind, std::string_view>, 7> kNames = {{
    {StrategyKind::kUnt, "unt"},
    {StrategyKind::kRand, "rand"},
    {StrategyKind::kBm25, "bm25"},
    {StrategyKind::kBm25c, "bm25c"},
    {StrategyKind::kPrec, "prec"},
    {StrategyKind::kRec, "rec"},
    {StrategyKind::kF1, "f1"},
}};

}  // namespace

bool Strategy::needs_query() const {
  return kind != StrategyKind::kUnt && kind != StrategyKind::kRand;
}

bool Strategy::needs_weights() const {
  return kind == StrategyKind::kPrec || kind == StrategyKind::kRec ||
         kind == StrategyKind::kF1;
}

std::string_view to_string(StrategyKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (const auto& [k, label] : kNames) {
    if (label == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string> Ranking::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const RankedTest& e : entries) out.push_back(e.id);
  return out;
}

double bm25_score_with_idf(
    const TermSet& terms, const TestDocument& doc, double avg_len,
    const Bm25Params& params,
    const std::function<double(std::string_view)>& idf_of) {
  if (avg_len <= 0.0) {
    if (doc.length() > 0) {
      throw Error("corrupt index: average length is 0 but '" + doc.id +
                  "' is not empty");
    }
    return 0.0;
  }
  double norm = params.k1 * (1.0 - params.b +
                             params.b * static_cast<double>(doc.length()) /
                                 avg_len);
  double score = 0.0;
  for (const std::string& term : terms) {
    int tf = doc.terms.count(term);
    if (tf == 0) continue;
    score += idf_of(term) * (tf * (params.k1 + 1.0)) / (tf + norm);
  }
  return score;
}

double bm25_score(const ChangeQuery& query, const TestDocument& doc,
                  const TestIndex& index, const Bm25Params& params) {
  if (index.doc_count() == 0) throw Error("cannot score against an empty index");
  return bm25_score_with_idf(
      query.terms, doc, index.avg_len(), params,
      [&](std::string_view term) { return idf(index, term); });
}

double predictive_score(const ChangeQuery& query, const TestDocument& doc,
                        const WeightTable& weights, StrategyKind kind) {
  double score = 0.0;
  for (const std::string& term : query.terms) {
    if (!doc.terms.contains(term)) continue;
    auto it = weights.find(term);
    if (it == weights.end()) continue;
    switch (kind) {
      case StrategyKind::kPrec:
        score += it->second.mean_prec;
        break;
      case StrategyKind::kRec:
        score += it->second.mean_rec;
        break;
      case StrategyKind::kF1:
        score += it->second.mean_f1;
        break;
      default:
        throw Error("predictive_score needs prec, rec or f1");
    }
  }
  return score;
}

Ranking order_by_scores(const TestIndex& index,
                        const std::vector<double>& scores) {
  const auto& docs = index.docs();
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  Ranking ranking;
  ranking.entries.reserve(docs.size());
  for (std::size_t i : order) {
    ranking.entries.push_back(RankedTest{docs[i].id, scores[i]});
  }
  return ranking;
}

Ranking rank_tests(const Strategy& strategy, const ChangeQuery* query,
                   const TestIndex& index, const WeightTable* weights,
                   const Bm25Params& params) {
  std::string_view name = to_string(strategy.kind);
  if (strategy.needs_query() && query == nullptr) {
    throw Error("strategy " + std::string(name) + " requires a change query");
  }
  if (strategy.needs_weights() && weights == nullptr) {
    throw Error("strategy " + std::string(name) + " requires a weight table");
  }
  const auto& docs = index.docs();
  Ranking ranking;
  switch (strategy.kind) {
    case StrategyKind::kUnt:
      for (const TestDocument& doc : docs) {
        ranking.entries.push_back(RankedTest{doc.id, 0.0});
      }
      return ranking;
    case StrategyKind::kRand: {
      std::vector<std::size_t> order(docs.size());
      std::iota(order.begin(), order.end(), 0);
      Rng rng(strategy.seed);
      rng.shuffle(std::span<std::size_t>(order));
      for (std::size_t i : order) {
        ranking.entries.push_back(RankedTest{docs[i].id, 0.0});
      }
      return ranking;
    }
    case StrategyKind::kBm25:
    case StrategyKind::kBm25c: {
      if (docs.empty()) return ranking;
      std::map<std::string, double, std::less<>> idfs;
      for (const std::string& term : query->terms) {
        idfs.emplace(term, idf(index, term));
      }
      auto lookup = [&](std::string_view term) {
        return idfs.find(term)->second;
      };
      std::vector<double> scores;
      scores.reserve(docs.size());
      for (const TestDocument& doc : docs) {
        scores.push_back(bm25_score_with_idf(query->terms, doc,
                                             index.avg_len(), params, lookup));
      }
      return order_by_scores(index, scores);
    }
    case StrategyKind::kPrec:
    case StrategyKind::kRec:
    case StrategyKind::kF1: {
      std::vector<double> scores;
      scores.reserve(docs.size());
      for (const TestDocument& doc : docs) {
        scores.push_back(predictive_score(*query, doc, *weights, strategy.kind));
      }
      return order_by_scores(index, scores);
    }
  }
  return ranking;
}

std::string format_ranking(const Ranking& ranking) {
  std::string out;
  char buffer[64];
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%zu\t%.6f\t", i + 1,
                  ranking.entries[i].score);
    out += buffer;
    out += ranking.entries[i].id;
    out += '\n';
  }
  return out;
}

}  // namespace lexprio
