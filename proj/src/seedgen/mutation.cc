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

#include "lexprio/seedgen/mutation.h"

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>
#include <utility>

#include "lexprio/error.h"
#include "lexprio/seedgen/runner.h"

namespace lexprio::seedgen {

namespace {

using mini::BinaryOp;
using mini::Expr;
using mini::ExprKind;
using mini::Module;
using mini::SourceSpan;
using mini::Stmt;
using mini::StmtKind;

constexpr std::array<std::pair<MutationOperator, std::string_view>, 4>
    kOperatorNames = {{
        {MutationOperator::kNegateBranchCondition, "NegateBranchCondition"},
        {MutationOperator::kOmitCall, "OmitCall"},
        {MutationOperator::kSwapArithmeticOperator, "SwapArithmeticOperator"},
        {MutationOperator::kModifyNumber, "ModifyNumber"},
    }};

bool is_true_literal(const Expr& e) {
  return e.kind == ExprKind::kBool && e.boolean;
}

// Visits every expression with the guard state of its position. `Visitor`
// provides condition(ExprT&, bool guarded) for if conditions and
// expr(ExprT&, bool guarded) for every expression node.
template <typename StmtT, typename Visitor>
void walk_stmt(StmtT& stmt, bool guarded, Visitor& visit);

template <typename ExprT, typename Visitor>
void walk_expr(ExprT& expr, bool guarded, Visitor& visit) {
  visit.expr(expr, guarded);
  for (auto& child : expr.children) walk_expr(child, guarded, visit);
}

template <typename BodyT, typename Visitor>
void walk_body(BodyT& body, bool guarded, Visitor& visit) {
  for (auto& stmt : body) walk_stmt(stmt, guarded, visit);
}

template <typename StmtT, typename Visitor>
void walk_stmt(StmtT& stmt, bool guarded, Visitor& visit) {
  switch (stmt.kind) {
    case StmtKind::kFuncDef:
      walk_body(stmt.body, guarded, visit);
      return;
    case StmtKind::kIf:
      visit.condition(stmt.exprs[0], guarded);
      walk_expr(stmt.exprs[0], guarded, visit);
      walk_body(stmt.body, guarded, visit);
      walk_body(stmt.else_body, guarded, visit);
      return;
    case StmtKind::kWhile:
      walk_expr(stmt.exprs[0], guarded, visit);
      walk_body(stmt.body, guarded || is_true_literal(stmt.exprs[0]), visit);
      return;
    default:
      for (auto& e : stmt.exprs) walk_expr(e, guarded, visit);
      return;
  }
}

bool same_position(const SourceSpan& a, const SourceSpan& b) {
  return a.line == b.line && a.column == b.column;
}

bool mutable_number(const Expr& e) {
  return e.kind == ExprKind::kNum &&
         e.number < std::numeric_limits<std::int64_t>::max();
}

struct Collector {
  const std::string& path;
  std::vector<MutationCandidate> out;

  void add(MutationOperator op, const SourceSpan& anchor,
           const SourceSpan& target) {
    MutationCandidate c;
    c.path = path;
    c.op = op;
    c.anchor = anchor;
    c.target = target;
    c.id = path + ":" + std::string(to_string(op)) + ":" +
           std::to_string(anchor.line) + ":" + std::to_string(anchor.column);
    out.push_back(std::move(c));
  }

  void condition(const Expr& cond, bool guarded) {
    if (!guarded) {
      add(MutationOperator::kNegateBranchCondition, cond.span, cond.span);
    }
  }

  void expr(const Expr& e, bool guarded) {
    if (e.kind == ExprKind::kCall && !guarded) {
      add(MutationOperator::kOmitCall, e.anchor, e.span);
    } else if (e.kind == ExprKind::kBinOp && mini::is_arithmetic(e.op)) {
      add(MutationOperator::kSwapArithmeticOperator, e.anchor, e.anchor);
    } else if (mutable_number(e)) {
      add(MutationOperator::kModifyNumber, e.anchor, e.anchor);
    }
  }
};

// Locates the node a candidate refers to.
template <typename ModuleT>
struct Finder {
  using ExprT = std::conditional_t<std::is_const_v<ModuleT>, const Expr, Expr>;
  const MutationCandidate& candidate;
  ExprT* found = nullptr;

  void condition(ExprT& cond, bool guarded) {
    if (!guarded && candidate.op == MutationOperator::kNegateBranchCondition &&
        same_position(cond.span, candidate.anchor)) {
      found = &cond;
    }
  }

  void expr(ExprT& e, bool guarded) {
    if (!same_position(e.anchor, candidate.anchor)) return;
    switch (candidate.op) {
      case MutationOperator::kOmitCall:
        if (e.kind == ExprKind::kCall && !guarded) found = &e;
        break;
      case MutationOperator::kSwapArithmeticOperator:
        if (e.kind == ExprKind::kBinOp && mini::is_arithmetic(e.op)) {
          found = &e;
        }
        break;
      case MutationOperator::kModifyNumber:
        if (mutable_number(e)) found = &e;
        break;
      case MutationOperator::kNegateBranchCondition:
        break;
    }
  }
};

template <typename ModuleT>
auto* find_target(ModuleT& module, const MutationCandidate& candidate) {
  Finder<ModuleT> finder{candidate};
  walk_body(module.items, false, finder);
  if (finder.found == nullptr) {
    throw Error("mutation " + candidate.id +
                ": no applicable node at this position");
  }
  return finder.found;
}

BinaryOp swapped(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return BinaryOp::kSub;
    case BinaryOp::kSub:
      return BinaryOp::kAdd;
    case BinaryOp::kMul:
      return BinaryOp::kDiv;
    case BinaryOp::kDiv:
      return BinaryOp::kMul;
    default:
      throw Error("not an arithmetic operator");
  }
}

}  // namespace

std::string_view to_string(MutationOperator op) {
  for (const auto& [k, name] : kOperatorNames) {
    if (k == op) return name;
  }
  return "?";
}

std::optional<MutationOperator> parse_operator(std::string_view name) {
  for (const auto& [k, label] : kOperatorNames) {
    if (label == name) return k;
  }
  return std::nullopt;
}

std::vector<MutationCandidate> enumerate_candidates(const Module& module,
                                                    const std::string& path) {
  if (is_test_path(path)) return {};
  Collector collector{path, {}};
  walk_body(module.items, false, collector);
  std::stable_sort(collector.out.begin(), collector.out.end(),
                   [](const MutationCandidate& a, const MutationCandidate& b) {
                     return std::tie(a.anchor.begin, a.op) <
                            std::tie(b.anchor.begin, b.op);
                   });
  return std::move(collector.out);
}

Module apply_mutation(const Module& module,
                      const MutationCandidate& candidate) {
  Module copy = module;
  Expr* node = find_target(copy, candidate);
  switch (candidate.op) {
    case MutationOperator::kNegateBranchCondition: {
      Expr negated;
      negated.kind = ExprKind::kNot;
      negated.span = node->span;
      negated.anchor = node->span;
      negated.children.push_back(std::move(*node));
      *node = std::move(negated);
      break;
    }
    case MutationOperator::kOmitCall: {
      Expr nil;
      nil.kind = ExprKind::kNil;
      nil.span = node->span;
      nil.anchor = node->span;
      *node = std::move(nil);
      break;
    }
    case MutationOperator::kSwapArithmeticOperator:
      node->op = swapped(node->op);
      break;
    case MutationOperator::kModifyNumber:
      node->number += 1;
      break;
  }
  return copy;
}

std::string mutate_source(std::string_view source, const Module& module,
                          const MutationCandidate& candidate) {
  const Expr* node = find_target(module, candidate);
  const SourceSpan& target = candidate.target;
  if (target.begin > target.end || target.end > source.size()) {
    throw Error("mutation " + candidate.id + ": target outside the source");
  }
  std::string_view original = source.substr(target.begin, target.end - target.begin);
  std::string replacement;
  switch (candidate.op) {
    case MutationOperator::kNegateBranchCondition:
      replacement = "not (" + std::string(original) + ")";
      break;
    case MutationOperator::kOmitCall:
      replacement = "nil";
      break;
    case MutationOperator::kSwapArithmeticOperator:
      replacement = std::string(mini::to_string(swapped(node->op)));
      break;
    case MutationOperator::kModifyNumber:
      replacement = std::to_string(node->number + 1);
      break;
  }
  std::string out;
  out.reserve(source.size() + replacement.size());
  out.append(source.substr(0, target.begin));
  out.append(replacement);
  out.append(source.substr(target.end));
  return out;
}

}  // namespace lexprio::seedgen
