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

#include "lexprio/minilang/printer.h"

#include <string_view>

namespace lexprio::mini {

namespace {

// Binding strength; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinOp:
      switch (e.op) {
        case BinaryOp::kOr:
          return 1;
        case BinaryOp::kAnd:
          return 2;
        case BinaryOp::kAdd:
        case BinaryOp::kSub:
          return 5;
        case BinaryOp::kMul:
        case BinaryOp::kDiv:
          return 6;
        default:
          return 4;
      }
    case ExprKind::kNot:
      return 3;
    default:
      return 7;
  }
}

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kNum:
      out += std::to_string(e.number);
      return;
    case ExprKind::kStr:
      out += quote(e.text);
      return;
    case ExprKind::kBool:
      out += e.boolean ? "true" : "false";
      return;
    case ExprKind::kNil:
      out += "nil";
      return;
    case ExprKind::kName:
      out += e.text;
      return;
    case ExprKind::kNot:
      out += "not ";
      print_operand(e.children[0], precedence(e), out);
      return;
    case ExprKind::kCall:
      print_operand(e.children[0], 7, out);
      out += '(';
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        if (i > 1) out += ", ";
        print(e.children[i], out);
      }
      out += ')';
      return;
    case ExprKind::kBinOp: {
      // Left associative: the right operand needs parentheses at equal
      // precedence.
      int prec = precedence(e);
      print_operand(e.children[0], prec, out);
      out += ' ';
      out += to_string(e.op);
      out += ' ';
      print_operand(e.children[1], prec + 1, out);
      return;
    }
  }
}

void indent(int depth, std::string& out) { out.append(2 * depth, ' '); }

void print_block(const std::vector<Stmt>& body, int depth, std::string& out);

void print(const Stmt& s, int depth, std::string& out) {
  indent(depth, out);
  switch (s.kind) {
    case StmtKind::kFuncDef:
      out += "fn " + s.name + "(";
      for (std::size_t i = 0; i < s.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += s.params[i].name;
      }
      out += ") {\n";
      if (s.doc) {
        indent(depth + 1, out);
        out += quote(s.doc->text) + ";\n";
      }
      print_block(s.body, depth + 1, out);
      indent(depth, out);
      out += "}\n";
      return;
    case StmtKind::kLet:
    case StmtKind::kAssign:
      if (s.kind == StmtKind::kLet) out += "let ";
      out += s.name + " = ";
      print(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kIf: {
      const Stmt* cur = &s;
      while (true) {
        out += "if ";
        print(cur->exprs[0], out);
        out += " {\n";
        print_block(cur->body, depth + 1, out);
        indent(depth, out);
        out += "}";
        if (!cur->has_else) break;
        if (cur->else_body.size() == 1 &&
            cur->else_body[0].kind == StmtKind::kIf) {
          out += " else ";
          cur = &cur->else_body[0];
          continue;
        }
        out += " else {\n";
        print_block(cur->else_body, depth + 1, out);
        indent(depth, out);
        out += "}";
        break;
      }
      out += "\n";
      return;
    }
    case StmtKind::kWhile:
      out += "while ";
      print(s.exprs[0], out);
      out += " {\n";
      print_block(s.body, depth + 1, out);
      indent(depth, out);
      out += "}\n";
      return;
    case StmtKind::kReturn:
      out += "return";
      if (!s.exprs.empty()) {
        out += ' ';
        print(s.exprs[0], out);
      }
      out += ";\n";
      return;
    case StmtKind::kAssert:
      out += "assert ";
      print(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kExpr:
      // A bare string first in a function body would read back as a doc
      // string; parenthesize it.
      if (s.exprs[0].kind == ExprKind::kStr) {
        out += "(" + quote(s.exprs[0].text) + ");\n";
        return;
      }
      print(s.exprs[0], out);
      out += ";\n";
      return;
  }
}

void print_block(const std::vector<Stmt>& body, int depth, std::string& out) {
  for (const Stmt& s : body) print(s, depth, out);
}

}  // namespace

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string print_expr(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::string print_module(const Module& module) {
  std::string out;
  for (std::size_t i = 0; i < module.items.size(); ++i) {
    const Stmt& item = module.items[i];
    if (i > 0 && (item.kind == StmtKind::kFuncDef ||
                  module.items[i - 1].kind == StmtKind::kFuncDef)) {
      out += '\n';
    }
    print(item, 0, out);
  }
  return out;
}

}  // namespace lexprio::mini
