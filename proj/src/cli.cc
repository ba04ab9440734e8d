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

#include "lexprio/cli.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "lexprio/diff.h"
#include "lexprio/error.h"
#include "lexprio/eval.h"
#include "lexprio/io.h"
#include "lexprio/learn.h"
#include "lexprio/query.h"
#include "lexprio/rank.h"
#include "lexprio/seedgen/corpus.h"
#include "lexprio/seedgen/mutation.h"
#include "lexprio/seedgen/runner.h"
#include "lexprio/seedgen/seed.h"

namespace lexprio {

namespace {

namespace fs = std::filesystem;

// Raised after parsing for argument combinations CLI11 cannot express.
class UsageError : public Error {
 public:
  UsageError(std::string message, const CLI::App* app)
      : Error(std::move(message)), app_(app) {}
  const CLI::App* app() const { return app_; }

 private:
  const CLI::App* app_;
};

const std::vector<std::string> kAllStrategies = {"unt", "rand", "bm25", "bm25c",
                                                 "prec", "rec", "f1"};

// Test indexes for run records: one snapshot for every record, or the
// index of the record's version in a corpus history.
class IndexProvider {
 public:
  static IndexProvider from_snapshot(const fs::path& path) {
    IndexProvider p;
    p.snapshot_ = std::make_unique<TestIndex>(index_from_json(read_text_file(path)));
    return p;
  }

  static IndexProvider from_corpus(const fs::path& root) {
    IndexProvider p;
    p.history_ = std::make_unique<seedgen::CorpusHistory>(seedgen::read_history(root));
    return p;
  }

  const TestIndex& operator()(const RunRecord& record) {
    if (snapshot_) return *snapshot_;
    auto it = cache_.find(record.version);
    if (it != cache_.end()) return it->second;
    for (std::size_t v = 0; v < history_->versions.size(); ++v) {
      if (seedgen::version_name(v) == record.version) {
        return cache_.emplace(record.version,
                              seedgen::index_tests(history_->versions[v]))
            .first->second;
      }
    }
    throw Error("run " + record.run_id + ": version '" + record.version +
                "' is not in the corpus");
  }

 private:
  std::unique_ptr<TestIndex> snapshot_;
  std::unique_ptr<seedgen::CorpusHistory> history_;
  std::map<std::string, TestIndex> cache_;
};

struct IndexInputs {
  std::string corpus;
  std::string index;

  void add_to(CLI::App* cmd) {
    auto* c = cmd->add_option("--corpus", corpus,
                              "Corpus root; each record uses its version's index")
                  ->check(CLI::ExistingDirectory);
    auto* i = cmd->add_option("--index", index, "Index snapshot used for every record")
                  ->check(CLI::ExistingFile);
    c->excludes(i);
  }

  IndexProvider provider(const CLI::App* cmd) const {
    if (!index.empty()) return IndexProvider::from_snapshot(index);
    if (!corpus.empty()) return IndexProvider::from_corpus(corpus);
    throw UsageError("one of --corpus or --index is required", cmd);
  }
};

std::vector<StrategyKind> parse_strategies(const std::vector<std::string>& names) {
  std::vector<StrategyKind> out;
  for (const std::string& name : names) out.push_back(*parse_strategy(name));
  return out;
}

bool any_predictive(const std::vector<StrategyKind>& kinds) {
  return std::any_of(kinds.begin(), kinds.end(), [](StrategyKind k) {
    return Strategy{k, 0}.needs_weights();
  });
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct EvalInputs {
  std::string records;
  IndexInputs index;
  std::string weights;
  std::vector<std::string> strategies = kAllStrategies;
  std::uint64_t rand_seed = 0;
  int parallelism = 1;
  double alpha = 0.001;
  std::string fault_model = "per-test";
  double k1 = 10.0;
  double b = 0.5;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--records", records, "Run records (JSON lines)")
        ->required()
        ->check(CLI::ExistingFile);
    index.add_to(cmd);
    cmd->add_option("--weights", weights,
                    "Weight table; learned from the records when omitted")
        ->check(CLI::ExistingFile);
    cmd->add_option("--strategies", strategies, "Comma-separated strategies")
        ->delimiter(',')
        ->check(CLI::IsMember(kAllStrategies))
        ->capture_default_str();
    cmd->add_option("--rand-seed", rand_seed, "Seed of the RAND strategy")
        ->capture_default_str();
    cmd->add_option("--parallelism", parallelism, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "Significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--fault-model", fault_model,
                    "per-test: each failing test is a fault; per-run: one fault per run")
        ->check(CLI::IsMember({"per-test", "per-run"}))
        ->capture_default_str();
    cmd->add_option("--k1", k1, "BM25 k1")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--b", b, "BM25 b")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  }

  struct Loaded {
    std::vector<RunRecord> records;
    std::optional<IndexProvider> provider;
    std::optional<WeightTable> weights;
    StrategyReport report;
  };

  Loaded run(const CLI::App* cmd) const {
    Loaded loaded;
    loaded.provider.emplace(index.provider(cmd));
    loaded.records = records_from_jsonl(read_text_file(records));
    std::vector<StrategyKind> kinds = parse_strategies(strategies);
    IndexSource source = [&](const RunRecord& r) -> const TestIndex& {
      return (*loaded.provider)(r);
    };
    if (!weights.empty()) {
      loaded.weights = weights_from_json(read_text_file(weights));
    } else if (any_predictive(kinds)) {
      loaded.weights = aggregate_weights(loaded.records, source);
    }
    EvalOptions options;
    options.bm25 = Bm25Params{k1, b};
    options.rand_seed = rand_seed;
    options.parallelism = parallelism;
    options.alpha = alpha;
    options.fault_model =
        fault_model == "per-run" ? FaultModel::kPerRun : FaultModel::kPerFailingTest;
    loaded.report = strategy_report(loaded.records, kinds, source,
                                    loaded.weights ? &*loaded.weights : nullptr,
                                    options);
    return loaded;
  }
};

// "<hash>:<path>:<operator>:<line>:<column>" -> operator.
std::string operator_of(const std::string& run_id) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = run_id.find(':', start);
    parts.push_back(run_id.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 5) return "unknown";
  return parts[parts.size() - 3];
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Lexical test prioritization and mutation fault seeding", "lexprio"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // gen-corpus
  std::uint64_t corpus_seed = 1;
  std::string corpus_out;
  seedgen::CorpusParams params;
  auto* gen = app.add_subcommand("gen-corpus", "Generate a versioned MiniLang corpus");
  gen->add_option("--seed", corpus_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", corpus_out, "Output root; history/ is created inside")
      ->required();
  gen->add_option("--modules", params.modules)->capture_default_str();
  gen->add_option("--functions-per-module", params.functions_per_module)
      ->capture_default_str();
  gen->add_option("--tests-per-function", params.tests_per_function)
      ->capture_default_str();
  gen->add_option("--vocab-size", params.vocab_size)->capture_default_str();
  gen->add_option("--history-steps", params.history_steps,
                  "Number of versions including the first")
      ->capture_default_str();
  gen->add_option("--noise-tests", params.noise_tests)->capture_default_str();

  // seed
  std::string seed_corpus;
  std::string seed_out;
  seedgen::SeedOptions seed_options;
  auto* seed = app.add_subcommand("seed", "Change-based fault seeding over a corpus");
  seed->add_option("--corpus", seed_corpus, "Corpus root")
      ->required()
      ->check(CLI::ExistingDirectory);
  seed->add_option("--out", seed_out, "Run records output (JSON lines)")->required();
  seed->add_option("--budget", seed_options.budget, "Step budget per test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seed->add_option("--window", seed_options.window, "Lines of context around a change")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  seed->add_option("--parallelism", seed_options.parallelism, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // index
  std::string index_corpus;
  std::string index_version;
  std::string index_tree;
  std::string index_out;
  auto* index_cmd = app.add_subcommand("index", "Snapshot the test index of a version");
  auto* ic = index_cmd->add_option("--corpus", index_corpus, "Corpus root")
                 ->check(CLI::ExistingDirectory);
  index_cmd->add_option("--version", index_version, "Version name, latest by default")
      ->needs(ic);
  auto* it = index_cmd->add_option("--tree", index_tree, "Directory holding tests/")
                 ->check(CLI::ExistingDirectory);
  ic->excludes(it);
  index_cmd->add_option("--out", index_out, "Snapshot path, standard output by default");

  // learn
  std::string learn_records;
  IndexInputs learn_index;
  std::string learn_out;
  std::string learn_explain;
  auto* learn = app.add_subcommand("learn", "Aggregate term weights from run records");
  learn->add_option("--records", learn_records, "Run records (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  learn_index.add_to(learn);
  learn->add_option("--out", learn_out, "Weight table path, standard output by default");
  learn->add_option("--explain", learn_explain,
                    "Also write the failure explanation curve as CSV");

  // rank
  std::string rank_strategy;
  std::string rank_diff;
  std::string rank_index;
  std::string rank_weights;
  std::string rank_root = ".";
  int rank_window = kDefaultWindow;
  bool rank_context = false;
  std::uint64_t rank_seed = 0;
  Bm25Params rank_bm25;
  auto* rank = app.add_subcommand("rank", "Rank tests for a unified diff");
  rank->add_option("--strategy", rank_strategy, "unt, rand, bm25, bm25c, prec, rec or f1")
      ->required()
      ->check(CLI::IsMember(kAllStrategies));
  rank->add_option("--diff", rank_diff, "Unified diff of the change")
      ->required()
      ->check(CLI::ExistingFile);
  rank->add_option("--index", rank_index, "Index snapshot")
      ->required()
      ->check(CLI::ExistingFile);
  rank->add_option("--weights", rank_weights, "Weight table (prec, rec, f1)")
      ->check(CLI::ExistingFile);
  rank->add_option("--source-root", rank_root,
                   "Directory holding the post-change files named in the diff")
      ->capture_default_str();
  rank->add_option("--window", rank_window, "Lines of context around a change")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rank->add_flag("--context", rank_context,
                 "Add enclosing definition names to the query (implied by bm25c)");
  rank->add_option("--seed", rank_seed, "Seed of the RAND strategy")->capture_default_str();
  rank->add_option("--k1", rank_bm25.k1, "BM25 k1")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rank->add_option("--b", rank_bm25.b, "BM25 b")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // eval
  EvalInputs eval_inputs;
  std::string eval_out;
  auto* eval = app.add_subcommand("eval", "APFD table (mean \xC2\xB1 sd) per strategy");
  eval_inputs.add_to(eval);
  eval->add_option("--out", eval_out, "Table path, standard output by default");

  // report
  EvalInputs report_inputs;
  std::string report_dir;
  auto* report = app.add_subcommand("report", "Write tables, curves and tests to a directory");
  report_inputs.add_to(report);
  report->add_option("--out-dir", report_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      seedgen::CorpusHistory history = seedgen::generate_corpus(corpus_seed, params);
      seedgen::write_history(history, corpus_out);
      std::size_t tests = seedgen::index_tests(history.versions.back()).doc_count();
      out << "versions=" << history.versions.size() << "\n"
          << "tests=" << tests << "\n";
    } else if (seed->parsed()) {
      seedgen::CorpusHistory history = seedgen::read_history(seed_corpus);
      seedgen::SeedResult result = seedgen::change_based_seed(history, seed_options);
      write_text_file(seed_out, records_to_jsonl(result.records));
      const seedgen::SeedStats& s = result.stats;
      out << "versions_visited=" << s.versions_visited << "\n"
          << "versions_without_passing_tests=" << s.versions_without_passing_tests << "\n"
          << "versions_without_candidates=" << s.versions_without_candidates << "\n"
          << "candidates=" << s.candidates << "\n"
          << "kept=" << s.kept << "\n"
          << "discarded_unchanged=" << s.discarded_unchanged << "\n"
          << "discarded_timeout=" << s.discarded_timeout << "\n";
    } else if (index_cmd->parsed()) {
      seedgen::FileTree tree;
      if (!index_tree.empty()) {
        tree = seedgen::read_tree(index_tree);
      } else if (!index_corpus.empty()) {
        seedgen::CorpusHistory history = seedgen::read_history(index_corpus);
        if (history.versions.empty()) throw Error("corpus has no versions");
        std::size_t v = history.versions.size() - 1;
        if (!index_version.empty()) {
          bool found = false;
          for (std::size_t k = 0; k < history.versions.size(); ++k) {
            if (seedgen::version_name(k) == index_version) {
              v = k;
              found = true;
            }
          }
          if (!found) throw Error("no version " + index_version);
        }
        tree = history.versions[v];
      } else {
        throw UsageError("one of --corpus or --tree is required", index_cmd);
      }
      emit(index_out, index_to_json(seedgen::index_tests(tree)), out);
    } else if (learn->parsed()) {
      IndexProvider provider = learn_index.provider(learn);
      std::vector<RunRecord> records =
          records_from_jsonl(read_text_file(learn_records));
      IndexSource source = [&](const RunRecord& r) -> const TestIndex& {
        return provider(r);
      };
      WeightTable table = aggregate_weights(records, source);
      emit(learn_out, weights_to_json(table), out);
      if (!learn_explain.empty()) {
        std::string csv = "k,explained_fraction\n";
        for (const auto& [k, fraction] :
             failure_explanation_curve(records, table, source)) {
          char line[64];
          std::snprintf(line, sizeof(line), "%d,%.6f\n", k, fraction);
          csv += line;
        }
        write_text_file(learn_explain, csv);
      }
    } else if (rank->parsed()) {
      Strategy strategy{*parse_strategy(rank_strategy), rank_seed};
      if (strategy.needs_weights() && rank_weights.empty()) {
        throw UsageError("--strategy " + rank_strategy + " requires --weights", rank);
      }
      TestIndex index = index_from_json(read_text_file(rank_index));
      std::optional<WeightTable> weights;
      if (!rank_weights.empty()) {
        weights = weights_from_json(read_text_file(rank_weights));
      }
      std::vector<DiffHunk> hunks = parse_unified_diff(read_text_file(rank_diff));
      SourceStore sources;
      for (const DiffHunk& hunk : hunks) {
        fs::path file = fs::path(rank_root) / hunk.file;
        if (!sources.contains(hunk.file) && fs::is_regular_file(file)) {
          sources.emplace(hunk.file, read_text_file(file));
        }
      }
      bool with_context = rank_context || strategy.kind == StrategyKind::kBm25c;
      ChangeQuery query = build_query(hunks, sources, rank_window, with_context);
      Ranking ranking = rank_tests(strategy, &query, index,
                                   weights ? &*weights : nullptr, rank_bm25);
      out << format_ranking(ranking);
    } else if (eval->parsed()) {
      EvalInputs::Loaded loaded = eval_inputs.run(eval);
      for (const auto& [run_id, reason] : loaded.report.excluded) {
        err << "excluded " << run_id << ": " << reason << "\n";
      }
      emit(eval_out, format_apfd_table(loaded.report), out);
    } else if (report->parsed()) {
      EvalInputs::Loaded loaded = report_inputs.run(report);
      const StrategyReport& r = loaded.report;
      fs::path dir = report_dir;
      write_text_file(dir / "summary.csv", format_summary_csv(r));
      write_text_file(dir / "apfd_table.csv", format_apfd_table(r));
      write_text_file(dir / "curves.csv", format_curves_csv(r));
      write_text_file(dir / "runs.csv", format_runs_csv(r));
      write_text_file(dir / "wilcoxon.json", format_wilcoxon_json(r));
      std::string excluded = "run_id,reason\n";
      for (const auto& [run_id, reason] : r.excluded) {
        excluded += run_id + ",\"" + reason + "\"\n";
      }
      write_text_file(dir / "excluded.csv", excluded);

      std::map<std::string, int> by_operator;
      std::map<int, int> by_failures;
      for (const RunRecord& rec : loaded.records) {
        ++by_operator[operator_of(rec.run_id)];
        ++by_failures[rec.failure_count()];
      }
      std::string ops = "operator,runs\n";
      for (const auto& [op, n] : by_operator) ops += op + "," + std::to_string(n) + "\n";
      write_text_file(dir / "operators.csv", ops);
      std::string fails = "failing_tests,runs\n";
      for (const auto& [k, n] : by_failures) {
        fails += std::to_string(k) + "," + std::to_string(n) + "\n";
      }
      write_text_file(dir / "failures.csv", fails);

      if (loaded.weights && !loaded.weights->empty()) {
        IndexSource source = [&](const RunRecord& rec) -> const TestIndex& {
          return (*loaded.provider)(rec);
        };
        std::string csv = "k,explained_fraction\n";
        for (const auto& [k, fraction] :
             failure_explanation_curve(loaded.records, *loaded.weights, source)) {
          char line[64];
          std::snprintf(line, sizeof(line), "%d,%.6f\n", k, fraction);
          csv += line;
        }
        write_text_file(dir / "explanation.csv", csv);
        write_text_file(dir / "weights.json", weights_to_json(*loaded.weights));
      }
      out << format_apfd_table(r);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << e.app()->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace lexprio
