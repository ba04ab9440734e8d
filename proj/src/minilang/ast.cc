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

#include "lexprio/minilang/ast.h"

#include <algorithm>

namespace lexprio::mini {

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return "+";
    case BinaryOp::kSub:
      return "-";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kLt:
      return "<";
    case BinaryOp::kLe:
      return "<=";
    case BinaryOp::kGt:
      return ">";
    case BinaryOp::kGe:
      return ">=";
    case BinaryOp::kEq:
      return "==";
    case BinaryOp::kNe:
      return "!=";
    case BinaryOp::kAnd:
      return "and";
    case BinaryOp::kOr:
      return "or";
  }
  return "?";
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::kAdd || op == BinaryOp::kSub ||
         op == BinaryOp::kMul || op == BinaryOp::kDiv;
}

namespace {

template <typename T>
bool all_equivalent(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](const T& x, const T& y) { return equivalent(x, y); });
}

}  // namespace

bool equivalent(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::kBinOp:
      if (a.op != b.op) return false;
      break;
    case ExprKind::kNum:
      if (a.number != b.number) return false;
      break;
    case ExprKind::kBool:
      if (a.boolean != b.boolean) return false;
      break;
    case ExprKind::kStr:
    case ExprKind::kName:
      if (a.text != b.text) return false;
      break;
    default:
      break;
  }
  return all_equivalent(a.children, b.children);
}

bool equivalent(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.has_else != b.has_else) {
    return false;
  }
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name) return false;
  }
  if (a.doc.has_value() != b.doc.has_value()) return false;
  if (a.doc && a.doc->text != b.doc->text) return false;
  return all_equivalent(a.exprs, b.exprs) && all_equivalent(a.body, b.body) &&
         all_equivalent(a.else_body, b.else_body);
}

bool equivalent(const Module& a, const Module& b) {
  return all_equivalent(a.items, b.items);
}

std::vector<const Stmt*> functions(const Module& module) {
  std::vector<const Stmt*> out;
  for (const Stmt& item : module.items) {
    if (item.kind == StmtKind::kFuncDef) out.push_back(&item);
  }
  return out;
}

}  // namespace lexprio::mini
