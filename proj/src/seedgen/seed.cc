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

#include "lexprio/seedgen/seed.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <set>
#include <thread>

#include "lexprio/diff.h"
#include "lexprio/error.h"
#include "lexprio/minilang/parser.h"

namespace lexprio::seedgen {

namespace {

enum class Verdict { kKept, kUnchanged, kTimeout };

struct MutantRun {
  Verdict verdict = Verdict::kUnchanged;
  RunRecord record;
};

const mini::Module* module_for(const ParsedTree& parsed,
                               const std::string& path) {
  for (const mini::Module& m : parsed.production) {
    if (m.path == path) return &m;
  }
  return nullptr;
}

MutantRun run_mutant(const FileTree& tree, const ParsedTree& parsed,
                     const MutationCandidate& candidate,
                     const std::vector<std::string>& passing,
                     const std::string& version, const std::string& hash,
                     const SeedOptions& options) {
  const std::string& source = tree.at(candidate.path);
  const mini::Module* original = module_for(parsed, candidate.path);
  std::string mutant_text = mutate_source(source, *original, candidate);
  mini::Module mutant = mini::parse_minilang(mutant_text, candidate.path);

  RunOptions run;
  run.budget = options.budget;
  run.replacement = &mutant;
  run.only = passing;
  run.stop_on_timeout = true;
  TestReport report = run_tests(parsed, run);

  MutantRun out;
  if (report.count(TestOutcome::kTimeout) > 0) {
    out.verdict = Verdict::kTimeout;
    return out;
  }
  if (report.count(TestOutcome::kFail) == 0) {
    out.verdict = Verdict::kUnchanged;
    return out;
  }
  out.verdict = Verdict::kKept;
  RunRecord& record = out.record;
  record.run_id = hash + ":" + candidate.id;
  record.version = version;
  for (const TestResult& r : report.results) {
    record.outcomes[r.id] =
        r.outcome == TestOutcome::kFail ? Outcome::kFail : Outcome::kPass;
    record.durations[r.id] = r.duration_s;
    record.untreated_order.push_back(r.id);
  }
  std::vector<DiffHunk> hunks = diff_lines(source, mutant_text, candidate.path);
  SourceStore sources{{candidate.path, mutant_text}};
  ChangeQuery plain = build_query(hunks, sources, options.window, false);
  ChangeQuery contextual = build_query(hunks, sources, options.window, true);
  record.change_terms = plain.terms;
  for (const std::string& term : contextual.terms) {
    if (!plain.terms.contains(term)) record.context_terms.insert(term);
  }
  return out;
}

}  // namespace

std::vector<MutationCandidate> changed_line_candidates(
    const FileTree& parent, const FileTree& current, const ParsedTree& parsed) {
  std::vector<MutationCandidate> out;
  for (const mini::Module& module : parsed.production) {
    const std::string& path = module.path;
    auto before = parent.find(path);
    std::string_view old_text =
        before == parent.end() ? std::string_view() : before->second;
    std::set<int> changed;
    for (const DiffHunk& hunk : diff_lines(old_text, current.at(path), path)) {
      for (const ChangeRegion& region : hunk.regions) {
        for (int line = region.first; line <= region.last; ++line) {
          changed.insert(line);
        }
      }
    }
    if (changed.empty()) continue;
    for (MutationCandidate& c : enumerate_candidates(module, path)) {
      bool inside = true;
      for (int line = c.target.line; line <= c.target.end_line; ++line) {
        if (!changed.contains(line)) {
          inside = false;
          break;
        }
      }
      if (inside) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MutationCandidate& a, const MutationCandidate& b) {
              return a.id < b.id;
            });
  return out;
}

SeedResult change_based_seed(const CorpusHistory& history,
                             const SeedOptions& options) {
  if (history.versions.size() < 2) {
    throw Error("change-based seeding needs at least two versions");
  }
  SeedResult result;
  for (std::size_t v = history.versions.size() - 1; v >= 1; --v) {
    const FileTree& tree = history.versions[v];
    std::string version = version_name(v);
    ++result.stats.versions_visited;
    ParsedTree parsed;
    try {
      parsed = parse_tree(tree);
    } catch (const Error& e) {
      throw Error("version " + version + " does not parse: " + e.what());
    }

    RunOptions control_options;
    control_options.budget = options.budget;
    TestReport control = run_tests(parsed, control_options);
    std::vector<std::string> passing;
    for (const TestResult& r : control.results) {
      if (r.outcome == TestOutcome::kPass) passing.push_back(r.id);
    }
    if (passing.empty()) {
      ++result.stats.versions_without_passing_tests;
      continue;
    }

    std::vector<MutationCandidate> candidates =
        changed_line_candidates(history.versions[v - 1], tree, parsed);
    if (candidates.empty()) {
      ++result.stats.versions_without_candidates;
      continue;
    }
    result.stats.candidates += static_cast<int>(candidates.size());

    std::string hash = tree_hash(tree);
    std::vector<MutantRun> runs(candidates.size());
    std::vector<std::exception_ptr> errors(candidates.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= candidates.size()) return;
        try {
          runs[i] = run_mutant(tree, parsed, candidates[i], passing, version,
                               hash, options);
        } catch (...) {
          errors[i] = std::current_exception();
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
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      switch (runs[i].verdict) {
        case Verdict::kKept:
          ++result.stats.kept;
          result.records.push_back(std::move(runs[i].record));
          break;
        case Verdict::kUnchanged:
          ++result.stats.discarded_unchanged;
          break;
        case Verdict::kTimeout:
          ++result.stats.discarded_timeout;
          break;
      }
    }
  }
  return result;
}

}  // namespace lexprio::seedgen
