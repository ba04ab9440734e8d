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

#ifndef LEXPRIO_MINILANG_LEXER_H_
#define LEXPRIO_MINILANG_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexprio::mini {

enum class TokenKind {
  kIdent,
  kNumber,
  kString,
  // keywords
  kFn,
  kLet,
  kIf,
  kElse,
  kWhile,
  kReturn,
  kAssert,
  kAnd,
  kOr,
  kNot,
  kTrue,
  kFalse,
  kNil,
  // punctuation
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemicolon,
  kAssign,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kEof,
};

struct Token {
  TokenKind kind = TokenKind::kEof;
  // Identifier spelling, digits, or the decoded string value.
  std::string text;
  int line = 1;
  int column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_keyword(std::string_view word);

// Tokenizes a complete source text. Throws ParseError on characters outside
// the language, unterminated strings and out-of-range numbers.
std::vector<Token> tokenize(std::string_view source);

// Lenient variant used on isolated diff lines: characters that are not part
// of the language are skipped instead of rejected. Still throws on
// unterminated strings.
std::vector<Token> tokenize_lenient(std::string_view source);

}  // namespace lexprio::mini

#endif  // LEXPRIO_MINILANG_LEXER_H_
