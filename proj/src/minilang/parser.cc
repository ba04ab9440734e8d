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

#include "lexprio/minilang/parser.h"

#include <charconv>
#include <utility>
#include <vector>

#include "lexprio/error.h"
#include "lexprio/minilang/lexer.h"

namespace lexprio::mini {

namespace {

// Nesting limit for blocks and expressions; keeps recursion bounded on
// adversarial input.
constexpr int kMaxDepth = 256;

SourceSpan span_of(const Token& token) {
  return SourceSpan{token.line, token.column, token.line, token.begin,
                    token.end};
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Stmt> parse_items() {
    std::vector<Stmt> items;
    while (!at(TokenKind::kEof)) items.push_back(statement());
    return items;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        const Token& t = parser.current();
        throw ParseError("nesting too deep", t.line, t.column);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  const Token& current() const { return tokens_[pos_]; }
  const Token& lookahead(std::size_t n) const {
    std::size_t i = pos_ + n;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& previous() const { return tokens_[pos_ - 1]; }
  bool at(TokenKind kind) const { return current().kind == kind; }

  const Token& advance() {
    const Token& token = tokens_[pos_];
    if (token.kind != TokenKind::kEof) ++pos_;
    return token;
  }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = current();
    std::string found = t.kind == TokenKind::kEof ? "end of input"
                                                  : "'" + t.text + "'";
    if (t.kind != TokenKind::kEof && t.text.empty()) found = "token";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what);
    return advance();
  }

  // Closes a span that started at `start` with the previously consumed
  // token.
  SourceSpan close(SourceSpan start) const {
    const Token& last = previous();
    start.end = last.end;
    start.end_line = last.line;
    return start;
  }

  Stmt statement() {
    DepthGuard guard(*this);
    switch (current().kind) {
      case TokenKind::kFn:
        return function();
      case TokenKind::kLet:
        return binding(StmtKind::kLet);
      case TokenKind::kIf:
        return if_statement();
      case TokenKind::kWhile: {
        Stmt stmt;
        stmt.kind = StmtKind::kWhile;
        stmt.span = span_of(advance());
        stmt.exprs.push_back(expression());
        stmt.body = block();
        stmt.span = close(stmt.span);
        return stmt;
      }
      case TokenKind::kReturn: {
        Stmt stmt;
        stmt.kind = StmtKind::kReturn;
        stmt.span = span_of(advance());
        if (!at(TokenKind::kSemicolon)) stmt.exprs.push_back(expression());
        expect(TokenKind::kSemicolon, "';'");
        stmt.span = close(stmt.span);
        return stmt;
      }
      case TokenKind::kAssert: {
        Stmt stmt;
        stmt.kind = StmtKind::kAssert;
        stmt.span = span_of(advance());
        stmt.exprs.push_back(expression());
        expect(TokenKind::kSemicolon, "';'");
        stmt.span = close(stmt.span);
        return stmt;
      }
      case TokenKind::kIdent:
        if (lookahead(1).kind == TokenKind::kAssign) {
          return binding(StmtKind::kAssign);
        }
        break;
      default:
        break;
    }
    Stmt stmt;
    stmt.kind = StmtKind::kExpr;
    stmt.span = span_of(current());
    stmt.exprs.push_back(expression());
    expect(TokenKind::kSemicolon, "';'");
    stmt.span = close(stmt.span);
    return stmt;
  }

  Stmt function() {
    Stmt stmt;
    stmt.kind = StmtKind::kFuncDef;
    stmt.span = span_of(advance());
    const Token& name = expect(TokenKind::kIdent, "function name");
    stmt.name = name.text;
    stmt.name_span = span_of(name);
    expect(TokenKind::kLParen, "'('");
    if (!at(TokenKind::kRParen)) {
      do {
        const Token& param = expect(TokenKind::kIdent, "parameter name");
        stmt.params.push_back(Param{param.text, span_of(param)});
      } while (accept(TokenKind::kComma));
    }
    expect(TokenKind::kRParen, "')'");
    expect(TokenKind::kLBrace, "'{'");
    if (at(TokenKind::kString) &&
        (lookahead(1).kind == TokenKind::kSemicolon ||
         lookahead(1).kind == TokenKind::kRBrace)) {
      const Token& doc = advance();
      stmt.doc = DocString{doc.text, span_of(doc)};
      accept(TokenKind::kSemicolon);
    }
    while (!at(TokenKind::kRBrace)) {
      if (at(TokenKind::kEof)) fail("expected '}'");
      stmt.body.push_back(statement());
    }
    advance();
    stmt.span = close(stmt.span);
    return stmt;
  }

  Stmt binding(StmtKind kind) {
    Stmt stmt;
    stmt.kind = kind;
    stmt.span = span_of(current());
    if (kind == StmtKind::kLet) advance();
    const Token& name = expect(TokenKind::kIdent, "variable name");
    stmt.name = name.text;
    stmt.name_span = span_of(name);
    expect(TokenKind::kAssign, "'='");
    stmt.exprs.push_back(expression());
    expect(TokenKind::kSemicolon, "';'");
    stmt.span = close(stmt.span);
    return stmt;
  }

  Stmt if_statement() {
    Stmt stmt;
    stmt.kind = StmtKind::kIf;
    stmt.span = span_of(advance());
    stmt.exprs.push_back(expression());
    stmt.body = block();
    if (accept(TokenKind::kElse)) {
      stmt.has_else = true;
      if (at(TokenKind::kIf)) {
        DepthGuard guard(*this);
        stmt.else_body.push_back(if_statement());
      } else {
        stmt.else_body = block();
      }
    }
    stmt.span = close(stmt.span);
    return stmt;
  }

  std::vector<Stmt> block() {
    expect(TokenKind::kLBrace, "'{'");
    std::vector<Stmt> body;
    while (!at(TokenKind::kRBrace)) {
      if (at(TokenKind::kEof)) fail("expected '}'");
      body.push_back(statement());
    }
    advance();
    return body;
  }

  Expr binary(BinaryOp op, Expr lhs, Expr rhs, const Token& op_token) {
    Expr e;
    e.kind = ExprKind::kBinOp;
    e.op = op;
    e.anchor = span_of(op_token);
    e.span = lhs.span;
    e.span.end = rhs.span.end;
    e.span.end_line = rhs.span.end_line;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  Expr expression() {
    DepthGuard guard(*this);
    return or_expr();
  }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (at(TokenKind::kOr)) {
      const Token& op = advance();
      Expr rhs = and_expr();
      lhs = binary(BinaryOp::kOr, std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (at(TokenKind::kAnd)) {
      const Token& op = advance();
      Expr rhs = not_expr();
      lhs = binary(BinaryOp::kAnd, std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  Expr not_expr() {
    if (at(TokenKind::kNot)) {
      DepthGuard guard(*this);
      Expr e;
      e.kind = ExprKind::kNot;
      e.span = span_of(advance());
      e.anchor = e.span;
      e.children.push_back(not_expr());
      e.span = close(e.span);
      return e;
    }
    return comparison();
  }

  Expr comparison() {
    Expr lhs = sum();
    while (true) {
      BinaryOp op;
      switch (current().kind) {
        case TokenKind::kEq:
          op = BinaryOp::kEq;
          break;
        case TokenKind::kNe:
          op = BinaryOp::kNe;
          break;
        case TokenKind::kLt:
          op = BinaryOp::kLt;
          break;
        case TokenKind::kLe:
          op = BinaryOp::kLe;
          break;
        case TokenKind::kGt:
          op = BinaryOp::kGt;
          break;
        case TokenKind::kGe:
          op = BinaryOp::kGe;
          break;
        default:
          return lhs;
      }
      const Token& op_token = advance();
      Expr rhs = sum();
      lhs = binary(op, std::move(lhs), std::move(rhs), op_token);
    }
  }

  Expr sum() {
    Expr lhs = term();
    while (at(TokenKind::kPlus) || at(TokenKind::kMinus)) {
      BinaryOp op = at(TokenKind::kPlus) ? BinaryOp::kAdd : BinaryOp::kSub;
      const Token& op_token = advance();
      Expr rhs = term();
      lhs = binary(op, std::move(lhs), std::move(rhs), op_token);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = call();
    while (at(TokenKind::kStar) || at(TokenKind::kSlash)) {
      BinaryOp op = at(TokenKind::kStar) ? BinaryOp::kMul : BinaryOp::kDiv;
      const Token& op_token = advance();
      Expr rhs = call();
      lhs = binary(op, std::move(lhs), std::move(rhs), op_token);
    }
    return lhs;
  }

  Expr call() {
    Expr callee = primary();
    while (at(TokenKind::kLParen)) {
      Expr e;
      e.kind = ExprKind::kCall;
      e.span = callee.span;
      e.anchor = span_of(advance());
      e.children.push_back(std::move(callee));
      if (!at(TokenKind::kRParen)) {
        do {
          e.children.push_back(expression());
        } while (accept(TokenKind::kComma));
      }
      expect(TokenKind::kRParen, "')'");
      e.span = close(e.span);
      callee = std::move(e);
    }
    return callee;
  }

  Expr primary() {
    Expr e;
    const Token& token = current();
    e.span = span_of(token);
    e.anchor = e.span;
    switch (token.kind) {
      case TokenKind::kNumber: {
        e.kind = ExprKind::kNum;
        auto [ptr, ec] = std::from_chars(
            token.text.data(), token.text.data() + token.text.size(), e.number);
        if (ec != std::errc()) fail("integer literal out of range");
        advance();
        return e;
      }
      case TokenKind::kString:
        e.kind = ExprKind::kStr;
        e.text = token.text;
        advance();
        return e;
      case TokenKind::kTrue:
      case TokenKind::kFalse:
        e.kind = ExprKind::kBool;
        e.boolean = token.kind == TokenKind::kTrue;
        advance();
        return e;
      case TokenKind::kNil:
        e.kind = ExprKind::kNil;
        advance();
        return e;
      case TokenKind::kIdent:
        e.kind = ExprKind::kName;
        e.text = token.text;
        advance();
        return e;
      case TokenKind::kLParen: {
        // The span widens to cover the parentheses; the anchor keeps
        // pointing at the inner node.
        SourceSpan outer = span_of(advance());
        Expr inner = expression();
        expect(TokenKind::kRParen, "')'");
        inner.span.line = outer.line;
        inner.span.column = outer.column;
        inner.span.begin = outer.begin;
        inner.span = close(inner.span);
        return inner;
      }
      default:
        fail("expected expression");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

int count_lines(std::string_view text) {
  if (text.empty()) return 0;
  int lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  if (text.back() != '\n') ++lines;
  return lines;
}

}  // namespace

Module parse_minilang(std::string_view text, const std::string& path) {
  Module module;
  module.path = path;
  module.line_count = count_lines(text);
  try {
    module.items = Parser(tokenize(text)).parse_items();
  } catch (const ParseError& e) {
    std::string where = path.empty() ? std::string("<input>") : path;
    throw ParseError(where + ":" + std::to_string(e.line()) + ":" +
                         std::to_string(e.column()) + ": " + e.what(),
                     e.line(), e.column());
  }
  return module;
}

}  // namespace lexprio::mini
