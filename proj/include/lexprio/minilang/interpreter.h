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

#ifndef LEXPRIO_MINILANG_INTERPRETER_H_
#define LEXPRIO_MINILANG_INTERPRETER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "lexprio/error.h"
#include "lexprio/minilang/ast.h"

namespace lexprio::mini {

// Failed assertion or runtime error inside interpreted code.
class RuntimeFault : public Error {
 public:
  using Error::Error;
};

// The step budget ran out.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class Builtin { kLen, kStr, kAbs, kMin, kMax };

struct Nil {
  bool operator==(const Nil&) const = default;
};

struct FunctionRef {
  const Stmt* def = nullptr;
  bool operator==(const FunctionRef&) const = default;
};

using Value =
    std::variant<Nil, std::int64_t, bool, std::string, FunctionRef, Builtin>;

std::string to_display(const Value& value);

// Tree-walking evaluator with a deterministic step counter. One instance
// models one isolated execution: construction registers every function of
// `modules`, load() runs their top-level statements in order.
//
// Every executed statement, loop test and call costs one step. Exceeding
// `budget` throws BudgetExceeded and pins steps() to the budget.
class Interpreter {
 public:
  Interpreter(std::span<const Module* const> modules, std::int64_t budget);

  void load();
  Value call(std::string_view function, std::vector<Value> args);

  std::int64_t steps() const { return steps_; }

 private:
  struct Frame {
    std::vector<std::pair<std::string, Value>> vars;
    Value* find(std::string_view name);
  };

  struct Flow {
    bool returned = false;
    Value value;
  };

  void tick();
  Flow exec_block(const std::vector<Stmt>& body, Frame* frame);
  Flow exec(const Stmt& stmt, Frame* frame);
  Value eval(const Expr& expr, Frame* frame);
  Value binary(const Expr& expr, Frame* frame);
  Value lookup(const Expr& name, Frame* frame);
  Value invoke(const Value& callee, std::vector<Value> args, const Expr& site);
  Value invoke_builtin(Builtin builtin, const std::vector<Value>& args,
                       const Expr& site);

  std::vector<const Module*> modules_;
  std::unordered_map<std::string, const Stmt*> functions_;
  std::unordered_map<std::string, Value> globals_;
  std::int64_t budget_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
};

bool truthy(const Value& value);

}  // namespace lexprio::mini

#endif  // LEXPRIO_MINILANG_INTERPRETER_H_
