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

#include "lexprio/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <thread>

#include "json.hpp"

#include "lexprio/error.h"
#include "lexprio/rng.h"

namespace lexprio {

double apfd(std::span<const std::string> ranking,
            const std::vector<FailSet>& fault_failsets) {
  if (fault_failsets.empty()) throw Error("APFD needs at least one fault");
  std::map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    position.emplace(ranking[i], i + 1);
  }
  double n = static_cast<double>(ranking.size());
  double m = static_cast<double>(fault_failsets.size());
  double ttf_sum = 0.0;
  for (const FailSet& failset : fault_failsets) {
    if (failset.empty()) {
      throw Error("undetected fault: empty fail set, APFD is undefined");
    }
    std::size_t first = ranking.size() + 1;
    for (const std::string& id : failset) {
      auto it = position.find(id);
      if (it == position.end()) {
        throw Error("failing test '" + id + "' is not in the ranking");
      }
      first = std::min(first, it->second);
    }
    ttf_sum += static_cast<double>(first);
  }
  return 1.0 - ttf_sum / (n * m) + 1.0 / (2.0 * n);
}

double apfd(const Ranking& ranking,
            const std::vector<FailSet>& fault_failsets) {
  std::vector<std::string> ids = ranking.ids();
  return apfd(std::span<const std::string>(ids), fault_failsets);
}

double time_to_first_failure(std::span<const std::string> ranking,
                             const RunRecord& record) {
  double elapsed = 0.0;
  for (const std::string& id : ranking) {
    auto outcome = record.outcomes.find(id);
    if (outcome == record.outcomes.end()) continue;
    auto duration = record.durations.find(id);
    if (duration != record.durations.end()) elapsed += duration->second;
    if (outcome->second == Outcome::kFail) return elapsed;
  }
  throw Error("run " + record.run_id + ": no failing test in the ranking");
}

namespace {

// Magnitudes ranked with ties averaged, returned doubled so they are
// integers.
std::vector<long long> doubled_ranks(std::span<const double> differences) {
  std::size_t n = differences.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(differences[a]) < std::fabs(differences[b]);
  });
  std::vector<long long> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(differences[order[j + 1]]) ==
                            std::fabs(differences[order[i]])) {
      ++j;
    }
    // Average of 1-based ranks i+1..j+1, doubled.
    long long doubled = static_cast<long long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> nonzero(std::span<const std::pair<double, double>> pairs) {
  std::vector<double> out;
  for (const auto& [a, b] : pairs) {
    double d = a - b;
    if (d != 0.0) out.push_back(d);
  }
  return out;
}

}  // namespace

WilcoxonResult wilcoxon_exact(std::span<const double> differences) {
  std::size_t n = differences.size();
  if (n == 0) throw Error("no nonzero differences");
  if (n > 30) throw Error("exact signed-rank enumeration limited to 30 pairs");
  std::vector<long long> ranks = doubled_ranks(differences);
  long long total = 0;
  long long observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += ranks[i];
    if (differences[i] > 0) observed += ranks[i];
  }
  // Compare doubled deviations from the mean, 2*W2 - total, in integers.
  long long observed_dev = std::llabs(2 * observed - total);
  std::uint64_t extreme = 0;
  std::uint64_t count = 1ULL << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    long long w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) w += ranks[i];
    }
    if (std::llabs(2 * w - total) >= observed_dev) ++extreme;
  }
  WilcoxonResult result;
  result.w = static_cast<double>(observed) / 2.0;
  result.n = static_cast<int>(n);
  result.exact = true;
  result.p_two_sided = static_cast<double>(extreme) / static_cast<double>(count);
  return result;
}

WilcoxonResult wilcoxon_normal(std::span<const double> differences) {
  std::size_t n = differences.size();
  if (n == 0) throw Error("no nonzero differences");
  std::vector<long long> ranks = doubled_ranks(differences);
  double w = 0.0;
  std::map<long long, long long> ties;
  for (std::size_t i = 0; i < n; ++i) {
    if (differences[i] > 0) w += static_cast<double>(ranks[i]) / 2.0;
    ++ties[ranks[i]];
  }
  double nn = static_cast<double>(n);
  double mean = nn * (nn + 1.0) / 4.0;
  double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
  for (const auto& [rank, t] : ties) {
    double tt = static_cast<double>(t);
    variance -= (tt * tt * tt - tt) / 48.0;
  }
  WilcoxonResult result;
  result.w = w;
  result.n = static_cast<int>(n);
  result.exact = false;
  if (variance <= 0.0) {
    result.p_two_sided = 1.0;
    return result;
  }
  double z = std::max(0.0, std::fabs(w - mean) - 0.5) / std::sqrt(variance);
  result.p_two_sided = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

WilcoxonResult wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs) {
  std::vector<double> d = nonzero(pairs);
  if (d.empty()) throw Error("no nonzero differences");
  if (d.size() <= static_cast<std::size_t>(kExactWilcoxonLimit)) {
    return wilcoxon_exact(d);
  }
  return wilcoxon_normal(d);
}

RunEvaluation evaluate_run(const RunRecord& record,
                           const std::vector<StrategyKind>& strategies,
                           const TestIndex& index, const WeightTable* weights,
                           const EvalOptions& options) {
  validate(record);
  for (const auto& [id, outcome] : record.outcomes) {
    if (index.find(id) == nullptr) {
      throw Error("test '" + id + "' is not in the index");
    }
  }
  ChangeQuery plain;
  plain.terms = record.change_terms;
  ChangeQuery contextual;
  contextual.terms = record.change_terms;
  contextual.terms.insert(record.context_terms.begin(),
                          record.context_terms.end());
  contextual.with_context = true;

  std::vector<FailSet> faults;
  FailSet all_failing;
  for (const auto& [id, outcome] : record.outcomes) {
    if (outcome != Outcome::kFail) continue;
    faults.push_back(FailSet{id});
    all_failing.insert(id);
  }
  if (options.fault_model == FaultModel::kPerRun) {
    faults = {all_failing};
  }

  RunEvaluation eval;
  eval.run_id = record.run_id;
  eval.tests = static_cast<int>(record.outcomes.size());
  eval.failures = static_cast<int>(all_failing.size());
  for (StrategyKind kind : strategies) {
    Strategy strategy{kind, 0};
    if (kind == StrategyKind::kRand) {
      strategy.seed = fnv1a(record.run_id, fnv1a(std::to_string(options.rand_seed)));
    }
    const ChangeQuery* query =
        kind == StrategyKind::kBm25c ? &contextual : &plain;
    Ranking ranking = rank_tests(strategy, query, index, weights, options.bm25);
    std::vector<std::string> executed;
    executed.reserve(record.outcomes.size());
    for (const RankedTest& entry : ranking.entries) {
      if (record.outcomes.contains(entry.id)) executed.push_back(entry.id);
    }
    eval.apfd.push_back(apfd(std::span<const std::string>(executed), faults));
    eval.ttf_s.push_back(
        time_to_first_failure(std::span<const std::string>(executed), record));
  }
  return eval;
}

StrategyReport strategy_report(const std::vector<RunRecord>& records,
                               const std::vector<StrategyKind>& strategies,
                               const IndexSource& index_for,
                               const WeightTable* weights,
                               const EvalOptions& options) {
  if (strategies.empty()) throw Error("no strategies to evaluate");
  if (records.empty()) throw Error("no run records to evaluate");
  for (StrategyKind kind : strategies) {
    if (Strategy{kind, 0}.needs_weights() && weights == nullptr) {
      throw Error("strategy " + std::string(to_string(kind)) +
                  " requires a weight table");
    }
  }

  // Index lookups may build state lazily; resolve them up front on this
  // thread.
  std::vector<const TestIndex*> indexes(records.size(), nullptr);
  std::vector<std::optional<std::string>> errors(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      indexes[i] = &index_for(records[i]);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  }

  std::vector<std::optional<RunEvaluation>> results(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      if (errors[i]) continue;
      try {
        results[i] = evaluate_run(records[i], strategies, *indexes[i],
                                  weights, options);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  int threads = std::max(1, options.parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  StrategyReport report;
  report.strategies = strategies;
  report.alpha = options.alpha;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (results[i]) {
      report.runs.push_back(std::move(*results[i]));
    } else {
      report.excluded.emplace_back(records[i].run_id, *errors[i]);
    }
  }
  if (report.runs.empty()) throw Error("every run record was excluded");
  std::stable_sort(report.runs.begin(), report.runs.end(),
                   [](const RunEvaluation& a, const RunEvaluation& b) {
                     return a.run_id < b.run_id;
                   });

  double runs = static_cast<double>(report.runs.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    StrategySummary summary;
    summary.strategy = strategies[s];
    double sum = 0.0;
    double ttf = 0.0;
    for (const RunEvaluation& r : report.runs) {
      sum += r.apfd[s];
      ttf += r.ttf_s[s];
    }
    summary.mean_apfd = sum / runs;
    summary.mean_ttf_s = ttf / runs;
    double sq = 0.0;
    for (const RunEvaluation& r : report.runs) {
      double d = r.apfd[s] - summary.mean_apfd;
      sq += d * d;
    }
    summary.sd_apfd = std::sqrt(sq / runs);
    report.summaries.push_back(summary);

    std::vector<double> times;
    times.reserve(report.runs.size());
    for (const RunEvaluation& r : report.runs) times.push_back(r.ttf_s[s]);
    std::sort(times.begin(), times.end());
    std::vector<CurvePoint> curve{{0.0, 0.0}};
    for (std::size_t k = 0; k < times.size(); ++k) {
      curve.push_back({times[k], static_cast<double>(k + 1) / runs});
    }
    report.curves.push_back(std::move(curve));
  }

  for (std::size_t a = 0; a < strategies.size(); ++a) {
    for (std::size_t b = 0; b < strategies.size(); ++b) {
      if (a == b) continue;
      PairwiseComparison cmp;
      cmp.better = strategies[a];
      cmp.baseline = strategies[b];
      std::vector<std::pair<double, double>> pairs;
      int improved = 0;
      for (const RunEvaluation& r : report.runs) {
        pairs.emplace_back(r.apfd[a], r.apfd[b]);
        if (r.apfd[a] > r.apfd[b]) ++improved;
      }
      cmp.improvement_fraction = improved / runs;
      std::vector<double> d = nonzero(pairs);
      if (!d.empty()) {
        cmp.wilcoxon = wilcoxon_signed_rank(pairs);
        cmp.significant = cmp.wilcoxon.p_two_sided < options.alpha;
      }
      report.pairs.push_back(cmp);
    }
  }
  return report;
}

namespace {

std::string fixed(double v, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
  return buffer;
}

}  // namespace

std::string format_summary_csv(const StrategyReport& report) {
  std::string out = "strategy,mean_apfd,sd_apfd,mean_ttf_s\n";
  for (const StrategySummary& s : report.summaries) {
    out += std::string(to_string(s.strategy)) + "," + fixed(s.mean_apfd) +
           "," + fixed(s.sd_apfd) + "," + fixed(s.mean_ttf_s) + "\n";
  }
  return out;
}

std::string format_apfd_table(const StrategyReport& report) {
  std::string header = "runs";
  std::string row = std::to_string(report.runs.size());
  for (const StrategySummary& s : report.summaries) {
    std::string name(to_string(s.strategy));
    for (char& c : name) c = static_cast<char>(std::toupper(c));
    header += "," + name;
    row += "," + fixed(100.0 * s.mean_apfd, 1) + " \xC2\xB1 " +
           fixed(100.0 * s.sd_apfd, 1);
  }
  return header + "\n" + row + "\n";
}

std::string format_curves_csv(const StrategyReport& report) {
  std::string out = "strategy,time_s,fraction_detected\n";
  for (std::size_t s = 0; s < report.strategies.size(); ++s) {
    std::string name(to_string(report.strategies[s]));
    for (const CurvePoint& p : report.curves[s]) {
      out += name + "," + fixed(p.time_s) + "," + fixed(p.fraction) + "\n";
    }
  }
  return out;
}

std::string format_runs_csv(const StrategyReport& report) {
  std::string out = "run_id,tests,failures";
  for (StrategyKind k : report.strategies) {
    out += "," + std::string(to_string(k)) + "_apfd";
  }
  for (StrategyKind k : report.strategies) {
    out += "," + std::string(to_string(k)) + "_ttf_s";
  }
  out += "\n";
  for (const RunEvaluation& r : report.runs) {
    out += r.run_id + "," + std::to_string(r.tests) + "," +
           std::to_string(r.failures);
    for (double v : r.apfd) out += "," + fixed(v);
    for (double v : r.ttf_s) out += "," + fixed(v);
    out += "\n";
  }
  return out;
}

std::string format_wilcoxon_json(const StrategyReport& report) {
  nlohmann::ordered_json doc;
  doc["alpha"] = report.alpha;
  doc["runs"] = report.runs.size();
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const PairwiseComparison& cmp : report.pairs) {
    nlohmann::ordered_json entry;
    entry["strategy"] = to_string(cmp.better);
    entry["baseline"] = to_string(cmp.baseline);
    entry["improvement_fraction"] = cmp.improvement_fraction;
    entry["n_nonzero"] = cmp.wilcoxon.n;
    entry["w"] = cmp.wilcoxon.w;
    entry["p_two_sided"] = cmp.wilcoxon.p_two_sided;
    entry["exact"] = cmp.wilcoxon.exact;
    entry["significant"] = cmp.significant;
    pairs.push_back(std::move(entry));
  }
  doc["pairs"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

}  // namespace lexprio
