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

#include "lexprio/minilang/lexer.h"

#include <array>
#include <limits>
#include <utility>

#include "lexprio/error.h"

namespace lexprio::mini {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 13> kKeywords = {{
    {"fn", TokenKind::kFn},
    {"let", TokenKind::kLet},
    {"if", TokenKind::kIf},
    {"else", TokenKind::kElse},
    {"while", TokenKind::kWhile},
    {"return", TokenKind::kReturn},
    {"assert", TokenKind::kAssert},
    {"and", TokenKind::kAnd},
    {"or", TokenKind::kOr},
    {"not", TokenKind::kNot},
    {"true", TokenKind::kTrue},
    {"false", TokenKind::kFalse},
    {"nil", TokenKind::kNil},
}};

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Scanner {
 public:
  Scanner(std::string_view source, bool lenient)
      : source_(source), lenient_(lenient) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (pos_ >= source_.size()) break;
      Token token;
      token.line = line_;
      token.column = column_;
      token.begin = pos_;
      if (!scan(token)) continue;
      token.end = pos_;
      tokens.push_back(std::move(token));
    }
    Token eof;
    eof.kind = TokenKind::kEof;
    eof.line = line_;
    eof.column = column_;
    eof.begin = eof.end = pos_;
    tokens.push_back(std::move(eof));
    return tokens;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < source_.size() ? source_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (source_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < source_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < source_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  // Returns false when the character was skipped (lenient mode only).
  bool scan(Token& token) {
    char c = peek();
    if (is_alpha(c)) {
      while (is_alpha(peek()) || is_digit(peek())) advance();
      token.text = std::string(source_.substr(token.begin, pos_ - token.begin));
      token.kind = TokenKind::kIdent;
      for (const auto& [word, kind] : kKeywords) {
        if (word == token.text) token.kind = kind;
      }
      return true;
    }
    if (is_digit(c)) {
      std::uint64_t value = 0;
      bool overflow = false;
      while (is_digit(peek())) {
        value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
        if (value > static_cast<std::uint64_t>(
                        std::numeric_limits<std::int64_t>::max())) {
          overflow = true;
        }
        advance();
      }
      if (overflow) {
        throw ParseError("number literal out of range", token.line,
                         token.column);
      }
      token.kind = TokenKind::kNumber;
      token.text = std::string(source_.substr(token.begin, pos_ - token.begin));
      return true;
    }
    if (c == '"') {
      advance();
      std::string value;
      while (true) {
        if (pos_ >= source_.size() || peek() == '\n') {
          throw ParseError("unterminated string literal", token.line,
                           token.column);
        }
        char ch = peek();
        if (ch == '"') {
          advance();
          break;
        }
        if (ch == '\\' && (peek(1) == '"' || peek(1) == '\\')) {
          advance();
          ch = peek();
        }
        value.push_back(ch);
        advance();
      }
      token.kind = TokenKind::kString;
      token.text = std::move(value);
      return true;
    }
    auto single = [&](TokenKind kind) {
      advance();
      token.kind = kind;
      return true;
    };
    auto pair = [&](char second, TokenKind two, TokenKind one) {
      advance();
      if (peek() == second) {
        advance();
        token.kind = two;
      } else {
        token.kind = one;
      }
      return true;
    };
    switch (c) {
      case '(':
        return single(TokenKind::kLParen);
      case ')':
        return single(TokenKind::kRParen);
      case '{':
        return single(TokenKind::kLBrace);
      case '}':
        return single(TokenKind::kRBrace);
      case ',':
        return single(TokenKind::kComma);
      case ';':
        return single(TokenKind::kSemicolon);
      case '+':
        return single(TokenKind::kPlus);
      case '-':
        return single(TokenKind::kMinus);
      case '*':
        return single(TokenKind::kStar);
      case '/':
        return single(TokenKind::kSlash);
      case '=':
        return pair('=', TokenKind::kEq, TokenKind::kAssign);
      case '<':
        return pair('=', TokenKind::kLe, TokenKind::kLt);
      case '>':
        return pair('=', TokenKind::kGe, TokenKind::kGt);
      case '!':
        if (peek(1) == '=') {
          advance();
          advance();
          token.kind = TokenKind::kNe;
          return true;
        }
        break;
      default:
        break;
    }
    if (lenient_) {
      advance();
      return false;
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     token.line, token.column);
  }

  std::string_view source_;
  bool lenient_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (const auto& [keyword, kind] : kKeywords) {
    if (keyword == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source) {
  return Scanner(source, false).run();
}

std::vector<Token> tokenize_lenient(std::string_view source) {
  return Scanner(source, true).run();
}

}  // namespace lexprio::mini
