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

#ifndef LEXPRIO_MINILANG_PRINTER_H_
#define LEXPRIO_MINILANG_PRINTER_H_

#include <string>

#include "lexprio/minilang/ast.h"

namespace lexprio::mini {

// Canonical source form: two-space indentation, one statement per line,
// minimal parentheses. print(parse(print(m))) == print(m).
std::string print_expr(const Expr& expr);
std::string print_module(const Module& module);

// Quotes a string literal, escaping '"' and '\'.
std::string quote(const std::string& value);

}  // namespace lexprio::mini

#endif  // LEXPRIO_MINILANG_PRINTER_H_
