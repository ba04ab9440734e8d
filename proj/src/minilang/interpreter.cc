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

#include "lexprio/minilang/interpreter.h"

#include <algorithm>
#include <limits>

namespace lexprio::mini {

namespace {

constexpr int kMaxCallDepth = 200;

[[noreturn]] void fault(const Expr& site, const std::string& message) {
  throw RuntimeFault("line " + std::to_string(site.span.line) + ": " +
                     message);
}

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0:
      return "nil";
    case 1:
      return "number";
    case 2:
      return "bool";
    case 3:
      return "string";
    default:
      return "function";
  }
}

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::string to_display(const Value& value) {
  switch (value.index()) {
    case 0:
      return "nil";
    case 1:
      return std::to_string(std::get<std::int64_t>(value));
    case 2:
      return std::get<bool>(value) ? "true" : "false";
    case 3:
      return std::get<std::string>(value);
    case 4:
      return "<fn " + std::get<FunctionRef>(value).def->name + ">";
    default:
      return "<builtin>";
  }
}

bool truthy(const Value& value) {
  switch (value.index()) {
    case 0:
      return false;
    case 1:
      return std::get<std::int64_t>(value) != 0;
    case 2:
      return std::get<bool>(value);
    case 3:
      return !std::get<std::string>(value).empty();
    default:
      return true;
  }
}

Value* Interpreter::Frame::find(std::string_view name) {
  for (auto& [key, value] : vars) {
    if (key == name) return &value;
  }
  return nullptr;
}

Interpreter::Interpreter(std::span<const Module* const> modules,
                         std::int64_t budget)
    : modules_(modules.begin(), modules.end()), budget_(budget) {
  for (const Module* module : modules_) {
    for (const Stmt* fn : functions(*module)) functions_[fn->name] = fn;
  }
}

void Interpreter::tick() {
  if (++steps_ > budget_) {
    steps_ = budget_;
    throw BudgetExceeded("step budget of " + std::to_string(budget_) +
                         " exhausted");
  }
}

void Interpreter::load() {
  for (const Module* module : modules_) {
    for (const Stmt& item : module->items) {
      if (item.kind == StmtKind::kFuncDef) continue;
      Flow flow = exec(item, nullptr);
      if (flow.returned) {
        throw RuntimeFault("line " + std::to_string(item.span.line) +
                           ": return outside function");
      }
    }
  }
}

Value Interpreter::call(std::string_view function, std::vector<Value> args) {
  auto it = functions_.find(std::string(function));
  if (it == functions_.end()) {
    throw RuntimeFault("undefined function '" + std::string(function) + "'");
  }
  Expr site;
  site.span = it->second->span;
  return invoke(FunctionRef{it->second}, std::move(args), site);
}

Interpreter::Flow Interpreter::exec_block(const std::vector<Stmt>& body,
                                          Frame* frame) {
  for (const Stmt& stmt : body) {
    Flow flow = exec(stmt, frame);
    if (flow.returned) return flow;
  }
  return {};
}

Interpreter::Flow Interpreter::exec(const Stmt& stmt, Frame* frame) {
  tick();
  switch (stmt.kind) {
    case StmtKind::kFuncDef:
      if (frame != nullptr) {
        if (Value* slot = frame->find(stmt.name)) {
          *slot = FunctionRef{&stmt};
        } else {
          frame->vars.emplace_back(stmt.name, FunctionRef{&stmt});
        }
      }
      return {};
    case StmtKind::kLet: {
      Value value = eval(stmt.exprs[0], frame);
      if (frame == nullptr) {
        globals_[stmt.name] = std::move(value);
      } else if (Value* slot = frame->find(stmt.name)) {
        *slot = std::move(value);
      } else {
        frame->vars.emplace_back(stmt.name, std::move(value));
      }
      return {};
    }
    case StmtKind::kAssign: {
      Value value = eval(stmt.exprs[0], frame);
      if (frame != nullptr) {
        if (Value* slot = frame->find(stmt.name)) {
          *slot = std::move(value);
          return {};
        }
      }
      auto it = globals_.find(stmt.name);
      if (it == globals_.end()) {
        fault(stmt.exprs[0],
              "assignment to undefined variable '" + stmt.name + "'");
      }
      it->second = std::move(value);
      return {};
    }
    case StmtKind::kIf:
      if (truthy(eval(stmt.exprs[0], frame))) {
        return exec_block(stmt.body, frame);
      }
      if (stmt.has_else) return exec_block(stmt.else_body, frame);
      return {};
    case StmtKind::kWhile:
      while (truthy(eval(stmt.exprs[0], frame))) {
        Flow flow = exec_block(stmt.body, frame);
        if (flow.returned) return flow;
        tick();
      }
      return {};
    case StmtKind::kReturn: {
      Flow flow;
      flow.returned = true;
      if (!stmt.exprs.empty()) flow.value = eval(stmt.exprs[0], frame);
      return flow;
    }
    case StmtKind::kAssert:
      if (!truthy(eval(stmt.exprs[0], frame))) {
        fault(stmt.exprs[0], "assertion failed");
      }
      return {};
    case StmtKind::kExpr:
      eval(stmt.exprs[0], frame);
      return {};
  }
  return {};
}

Value Interpreter::lookup(const Expr& name, Frame* frame) {
  if (frame != nullptr) {
    if (Value* v = frame->find(name.text)) return *v;
  }
  if (auto it = globals_.find(name.text); it != globals_.end()) {
    return it->second;
  }
  if (auto it = functions_.find(name.text); it != functions_.end()) {
    return FunctionRef{it->second};
  }
  if (name.text == "len") return Builtin::kLen;
  if (name.text == "str") return Builtin::kStr;
  if (name.text == "abs") return Builtin::kAbs;
  if (name.text == "min") return Builtin::kMin;
  if (name.text == "max") return Builtin::kMax;
  fault(name, "undefined name '" + name.text + "'");
}

Value Interpreter::eval(const Expr& expr, Frame* frame) {
  switch (expr.kind) {
    case ExprKind::kNum:
      return expr.number;
    case ExprKind::kStr:
      return expr.text;
    case ExprKind::kBool:
      return expr.boolean;
    case ExprKind::kNil:
      return Nil{};
    case ExprKind::kName:
      return lookup(expr, frame);
    case ExprKind::kNot:
      return !truthy(eval(expr.children[0], frame));
    case ExprKind::kBinOp:
      return binary(expr, frame);
    case ExprKind::kCall: {
      Value callee = eval(expr.children[0], frame);
      std::vector<Value> args;
      args.reserve(expr.children.size() - 1);
      for (std::size_t i = 1; i < expr.children.size(); ++i) {
        args.push_back(eval(expr.children[i], frame));
      }
      return invoke(callee, std::move(args), expr);
    }
  }
  return Nil{};
}

Value Interpreter::binary(const Expr& expr, Frame* frame) {
  if (expr.op == BinaryOp::kAnd) {
    Value lhs = eval(expr.children[0], frame);
    return truthy(lhs) ? eval(expr.children[1], frame) : lhs;
  }
  if (expr.op == BinaryOp::kOr) {
    Value lhs = eval(expr.children[0], frame);
    return truthy(lhs) ? lhs : eval(expr.children[1], frame);
  }
  Value lhs = eval(expr.children[0], frame);
  Value rhs = eval(expr.children[1], frame);
  if (expr.op == BinaryOp::kEq) return lhs == rhs;
  if (expr.op == BinaryOp::kNe) return lhs != rhs;

  const auto* a = std::get_if<std::int64_t>(&lhs);
  const auto* b = std::get_if<std::int64_t>(&rhs);
  if (a != nullptr && b != nullptr) {
    auto ua = static_cast<std::uint64_t>(*a);
    auto ub = static_cast<std::uint64_t>(*b);
    switch (expr.op) {
      case BinaryOp::kAdd:
        return wrap(ua + ub);
      case BinaryOp::kSub:
        return wrap(ua - ub);
      case BinaryOp::kMul:
        return wrap(ua * ub);
      case BinaryOp::kDiv:
        if (*b == 0) fault(expr, "division by zero");
        if (*a == std::numeric_limits<std::int64_t>::min() && *b == -1) {
          return *a;
        }
        return *a / *b;
      case BinaryOp::kLt:
        return *a < *b;
      case BinaryOp::kLe:
        return *a <= *b;
      case BinaryOp::kGt:
        return *a > *b;
      case BinaryOp::kGe:
        return *a >= *b;
      default:
        break;
    }
  }
  const auto* s = std::get_if<std::string>(&lhs);
  const auto* t = std::get_if<std::string>(&rhs);
  if (s != nullptr && t != nullptr) {
    switch (expr.op) {
      case BinaryOp::kAdd:
        return *s + *t;
      case BinaryOp::kLt:
        return *s < *t;
      case BinaryOp::kLe:
        return *s <= *t;
      case BinaryOp::kGt:
        return *s > *t;
      case BinaryOp::kGe:
        return *s >= *t;
      default:
        break;
    }
  }
  fault(expr, std::string("unsupported operands for '") +
                  std::string(to_string(expr.op)) + "': " + type_name(lhs) +
                  " and " + type_name(rhs));
}

Value Interpreter::invoke(const Value& callee, std::vector<Value> args,
                          const Expr& site) {
  tick();
  if (const auto* builtin = std::get_if<Builtin>(&callee)) {
    return invoke_builtin(*builtin, args, site);
  }
  const auto* fn = std::get_if<FunctionRef>(&callee);
  if (fn == nullptr) {
    fault(site, std::string("cannot call a value of type ") +
                    type_name(callee));
  }
  const Stmt& def = *fn->def;
  if (args.size() != def.params.size()) {
    fault(site, "'" + def.name + "' expects " +
                    std::to_string(def.params.size()) + " arguments, got " +
                    std::to_string(args.size()));
  }
  if (depth_ >= kMaxCallDepth) fault(site, "maximum call depth exceeded");
  Frame frame;
  frame.vars.reserve(def.params.size() + 4);
  for (std::size_t i = 0; i < args.size(); ++i) {
    frame.vars.emplace_back(def.params[i].name, std::move(args[i]));
  }
  ++depth_;
  Flow flow;
  try {
    flow = exec_block(def.body, &frame);
  } catch (...) {
    --depth_;
    throw;
  }
  --depth_;
  return flow.returned ? std::move(flow.value) : Value{Nil{}};
}

Value Interpreter::invoke_builtin(Builtin builtin,
                                  const std::vector<Value>& args,
                                  const Expr& site) {
  auto number = [&](std::size_t i) {
    const auto* v = std::get_if<std::int64_t>(&args[i]);
    if (v == nullptr) fault(site, "expected a number argument");
    return *v;
  };
  std::size_t arity = (builtin == Builtin::kMin || builtin == Builtin::kMax)
                          ? 2
                          : 1;
  if (args.size() != arity) fault(site, "wrong number of arguments");
  switch (builtin) {
    case Builtin::kLen: {
      const auto* s = std::get_if<std::string>(&args[0]);
      if (s == nullptr) fault(site, "len() expects a string");
      return static_cast<std::int64_t>(s->size());
    }
    case Builtin::kStr:
      return to_display(args[0]);
    case Builtin::kAbs: {
      std::int64_t v = number(0);
      return v < 0 ? wrap(0 - static_cast<std::uint64_t>(v)) : v;
    }
    case Builtin::kMin:
      return std::min(number(0), number(1));
    case Builtin::kMax:
      return std::max(number(0), number(1));
  }
  return Nil{};
}

}  // namespace lexprio::mini
