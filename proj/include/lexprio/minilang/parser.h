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

#ifndef LEXPRIO_MINILANG_PARSER_H_
#define LEXPRIO_MINILANG_PARSER_H_

#include <string>
#include <string_view>

#include "lexprio/minilang/ast.h"

namespace lexprio::mini {

// Parses a MiniLang source file.
//
//   module    := stmt*
//   stmt      := "fn" IDENT "(" params? ")" "{" STRING ";"? stmt* "}"
//              | "let" IDENT "=" expr ";" | IDENT "=" expr ";"
//              | "if" expr block ("else" (if-stmt | block))?
//              | "while" expr block | "return" expr? ";"
//              | "assert" expr ";" | expr ";"
//   expr      := or ; or := and ("or" and)* ; and := not ("and" not)*
//   not       := "not" not | compare
//   compare   := sum (("=="|"!="|"<"|"<="|">"|">=") sum)*
//   sum       := term (("+"|"-") term)* ; term := call (("*"|"/") call)*
//   call      := primary ("(" args? ")")*
//   primary   := NUMBER | STRING | "true" | "false" | "nil" | IDENT
//              | "(" expr ")"
//
// A string literal statement directly after a function's opening brace is
// the function's documentation string. Line comments start with "//".
// Throws ParseError with the offending line and column.
Module parse_minilang(std::string_view text, const std::string& path);

}  // namespace lexprio::mini

#endif  // LEXPRIO_MINILANG_PARSER_H_
