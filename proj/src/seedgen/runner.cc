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

#include "lexprio/seedgen/runner.h"

#include <algorithm>
#include <set>

#include "lexprio/error.h"
#include "lexprio/lex.h"
#include "lexprio/minilang/interpreter.h"
#include "lexprio/minilang/parser.h"

namespace lexprio::seedgen {

bool is_test_path(std::string_view path) {
  return path.starts_with("tests/");
}

std::string_view to_string(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::kPass:
      return "pass";
    case TestOutcome::kFail:
      return "fail";
    case TestOutcome::kTimeout:
      return "timeout";
  }
  return "?";
}

const TestResult* TestReport::find(std::string_view id) const {
  for (const TestResult& r : results) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

int TestReport::count(TestOutcome outcome) const {
  return static_cast<int>(std::count_if(
      results.begin(), results.end(),
      [&](const TestResult& r) { return r.outcome == outcome; }));
}

ParsedTree parse_tree(const FileTree& tree) {
  ParsedTree parsed;
  for (const auto& [path, text] : tree) {
    if (!path.ends_with(".mini")) continue;
    mini::Module module = mini::parse_minilang(text, path);
    if (is_test_path(path)) {
      parsed.tests.push_back(std::move(module));
    } else {
      parsed.production.push_back(std::move(module));
    }
  }
  return parsed;
}

namespace {

bool is_test_function(const mini::Stmt& stmt) {
  return stmt.kind == mini::StmtKind::kFuncDef && stmt.name.starts_with("test");
}

TestResult run_one(const std::vector<const mini::Module*>& modules,
                   const mini::Stmt& test, std::string id,
                   std::int64_t budget) {
  TestResult result;
  result.id = std::move(id);
  mini::Interpreter interpreter(modules, budget);
  try {
    interpreter.load();
    std::vector<mini::Value> args(test.params.size(), mini::Nil{});
    interpreter.call(test.name, std::move(args));
    result.outcome = TestOutcome::kPass;
  } catch (const mini::BudgetExceeded&) {
    result.outcome = TestOutcome::kTimeout;
  } catch (const mini::RuntimeFault& fault) {
    result.outcome = TestOutcome::kFail;
    result.message = fault.what();
  }
  result.steps = interpreter.steps();
  result.duration_s = static_cast<double>(result.steps) * kStepSeconds;
  return result;
}

}  // namespace

TestReport run_tests(const ParsedTree& tree, const RunOptions& options) {
  std::vector<const mini::Module*> production;
  for (const mini::Module& m : tree.production) {
    if (options.replacement != nullptr && m.path == options.replacement->path) {
      production.push_back(options.replacement);
    } else {
      production.push_back(&m);
    }
  }
  std::set<std::string, std::less<>> only(options.only.begin(),
                                          options.only.end());
  TestReport report;
  for (const mini::Module& file : tree.tests) {
    std::vector<const mini::Module*> modules = production;
    modules.push_back(&file);
    for (const mini::Stmt& stmt : file.items) {
      if (!is_test_function(stmt)) continue;
      std::string id = file.path + "::" + stmt.name;
      if (!only.empty() && !only.contains(id)) continue;
      report.results.push_back(
          run_one(modules, stmt, std::move(id), options.budget));
      if (options.stop_on_timeout &&
          report.results.back().outcome == TestOutcome::kTimeout) {
        return report;
      }
    }
  }
  return report;
}

TestReport run_tests(const FileTree& tree, std::int64_t budget) {
  RunOptions options;
  options.budget = budget;
  return run_tests(parse_tree(tree), options);
}

TestIndex index_tests(const ParsedTree& tree) {
  std::vector<TestDocument> docs;
  for (const mini::Module& file : tree.tests) {
    for (const mini::Stmt& stmt : file.items) {
      if (!is_test_function(stmt)) continue;
      docs.push_back(
          TestDocument{file.path + "::" + stmt.name, extract_test_features(stmt)});
    }
  }
  return build_index(std::move(docs));
}

TestIndex index_tests(const FileTree& tree) {
  return index_tests(parse_tree(tree));
}

}  // namespace lexprio::seedgen
