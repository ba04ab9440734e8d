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

#ifndef LEXPRIO_MINILANG_AST_H_
#define LEXPRIO_MINILANG_AST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexprio::mini {

// Position of a node in its source text. line/column are 1-based and point
// at the first character; begin/end are byte offsets of the half-open range
// covered by the node.
struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class BinaryOp {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAnd,
  kOr,
};

std::string_view to_string(BinaryOp op);
bool is_arithmetic(BinaryOp op);

enum class ExprKind { kCall, kBinOp, kNot, kNum, kStr, kBool, kNil, kName };

// Expression node. Children layout by kind:
//   kCall:  children[0] = callee, children[1..] = arguments
//   kBinOp: children[0] = lhs, children[1] = rhs
//   kNot:   children[0] = operand
struct Expr {
  ExprKind kind = ExprKind::kNil;
  SourceSpan span;
  BinaryOp op = BinaryOp::kAdd;
  // Position of the operator token (kBinOp) or the opening parenthesis
  // (kCall). Mutation candidates are anchored here.
  SourceSpan anchor;
  std::int64_t number = 0;
  bool boolean = false;
  // Identifier for kName, decoded value for kStr.
  std::string text;
  std::vector<Expr> children;
};

struct Param {
  std::string name;
  SourceSpan span;
};

struct DocString {
  std::string text;
  SourceSpan span;
};

enum class StmtKind {
  kFuncDef,
  kLet,
  kAssign,
  kIf,
  kWhile,
  kReturn,
  kAssert,
  kExpr,
};

// Statement node. Field use by kind:
//   kFuncDef: name, name_span, params, doc, body
//   kLet, kAssign: name, name_span, exprs[0] = value
//   kIf: exprs[0] = condition, body, else_body (has_else)
//   kWhile: exprs[0] = condition, body
//   kReturn: exprs is empty or holds the value
//   kAssert, kExpr: exprs[0]
struct Stmt {
  StmtKind kind = StmtKind::kExpr;
  SourceSpan span;
  std::string name;
  SourceSpan name_span;
  std::vector<Param> params;
  std::optional<DocString> doc;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  bool has_else = false;
};

struct Module {
  std::string path;
  std::vector<Stmt> items;
  int line_count = 0;
};

// Structural equality that ignores source positions.
bool equivalent(const Expr& a, const Expr& b);
bool equivalent(const Stmt& a, const Stmt& b);
bool equivalent(const Module& a, const Module& b);

// Top-level function definitions of a module, in source order.
std::vector<const Stmt*> functions(const Module& module);

}  // namespace lexprio::mini

#endif  // LEXPRIO_MINILANG_AST_H_
