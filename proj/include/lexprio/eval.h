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

#ifndef LEXPRIO_EVAL_H_
#define LEXPRIO_EVAL_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexprio/learn.h"
#include "lexprio/rank.h"

namespace lexprio {

using FailSet = std::set<std::string, std::less<>>;

// Average percentage of faults detected:
//   1 - sum(TTF(f)) / (n * m) + 1 / (2n)
// where TTF(f) is the 1-based position of the first test of f's fail set.
// Throws if there are no faults, a fail set is empty, or a fail set names a
// test that is not ranked.
double apfd(std::span<const std::string> ranking,
            const std::vector<FailSet>& fault_failsets);
double apfd(const Ranking& ranking, const std::vector<FailSet>& fault_failsets);

// Summed duration of the tests up to and including the first failing one.
// Tests in `ranking` that the record did not execute are skipped.
double time_to_first_failure(std::span<const std::string> ranking,
                             const RunRecord& record);

struct WilcoxonResult {
  // Sum of the ranks of positive differences.
  double w = 0.0;
  double p_two_sided = 1.0;
  // Number of nonzero differences.
  int n = 0;
  bool exact = false;
};

inline constexpr int kExactWilcoxonLimit = 12;

// Paired two-sided signed-rank test on a - b. Zero differences are dropped
// and tied magnitudes get average ranks. Exact by enumeration of all sign
// assignments up to kExactWilcoxonLimit nonzero differences, normal
// approximation with continuity and tie correction above. Throws when every
// difference is zero.
WilcoxonResult wilcoxon_signed_rank(
    std::span<const std::pair<double, double>> pairs);

// Both routes on a list of nonzero differences, regardless of size.
WilcoxonResult wilcoxon_exact(std::span<const double> differences);
WilcoxonResult wilcoxon_normal(std::span<const double> differences);

// How a run's failures map onto the faults of the APFD formula.
enum class FaultModel {
  // Every failing test is a fault with a singleton fail set.
  kPerFailingTest,
  // The run is one fault exposed by any failing test (m = 1).
  kPerRun,
};

struct EvalOptions {
  Bm25Params bm25;
  std::uint64_t rand_seed = 0;
  FaultModel fault_model = FaultModel::kPerFailingTest;
  double alpha = 0.001;
  int parallelism = 1;
};

struct StrategySummary {
  StrategyKind strategy = StrategyKind::kUnt;
  double mean_apfd = 0.0;
  // Population standard deviation over runs.
  double sd_apfd = 0.0;
  double mean_ttf_s = 0.0;
};

// Comparison of `better` against `baseline` over the same runs.
struct PairwiseComparison {
  StrategyKind better = StrategyKind::kUnt;
  StrategyKind baseline = StrategyKind::kUnt;
  // Fraction of runs where `better` has strictly higher APFD.
  double improvement_fraction = 0.0;
  // nullopt-equivalent when all differences are zero: n == 0, p == 1.
  WilcoxonResult wilcoxon;
  bool significant = false;
};

struct CurvePoint {
  double time_s = 0.0;
  double fraction = 0.0;
};

struct RunEvaluation {
  std::string run_id;
  int tests = 0;
  int failures = 0;
  // Indexed like StrategyReport::strategies.
  std::vector<double> apfd;
  std::vector<double> ttf_s;
};

struct StrategyReport {
  std::vector<StrategyKind> strategies;
  std::vector<StrategySummary> summaries;
  std::vector<PairwiseComparison> pairs;
  // Cumulative fraction of runs whose fault was detected by a given
  // elapsed time, per strategy.
  std::vector<std::vector<CurvePoint>> curves;
  // Sorted by run_id.
  std::vector<RunEvaluation> runs;
  // Runs excluded from every strategy, with the reason.
  std::vector<std::pair<std::string, std::string>> excluded;
  double alpha = 0.001;
};

// Ranks every record under every strategy and aggregates APFD and
// time-to-first-failure. A run that fails for any strategy is dropped from
// all of them. RAND draws a per-run seed from options.rand_seed and the
// run id. Throws if `strategies` or `records` is empty, if a predictive
// strategy is requested without weights, or if every run was excluded.
StrategyReport strategy_report(const std::vector<RunRecord>& records,
                               const std::vector<StrategyKind>& strategies,
                               const IndexSource& index_for,
                               const WeightTable* weights,
                               const EvalOptions& options = {});

// One run under one strategy.
RunEvaluation evaluate_run(const RunRecord& record,
                           const std::vector<StrategyKind>& strategies,
                           const TestIndex& index, const WeightTable* weights,
                           const EvalOptions& options);

// strategy,mean_apfd,sd_apfd,mean_ttf_s
std::string format_summary_csv(const StrategyReport& report);
// One column per strategy in percent, "mean ± sd".
std::string format_apfd_table(const StrategyReport& report);
// strategy,time_s,fraction_detected
std::string format_curves_csv(const StrategyReport& report);
// run_id,tests,failures,<strategy>_apfd...,<strategy>_ttf_s...
std::string format_runs_csv(const StrategyReport& report);
// Pairwise comparisons as a JSON document.
std::string format_wilcoxon_json(const StrategyReport& report);

}  // namespace lexprio

#endif  // LEXPRIO_EVAL_H_
