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

#ifndef LEXPRIO_SEEDGEN_MUTATION_H_
#define LEXPRIO_SEEDGEN_MUTATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/minilang/ast.h"

namespace lexprio::seedgen {

enum class MutationOperator {
  kNegateBranchCondition,
  kOmitCall,
  kSwapArithmeticOperator,
  kModifyNumber,
};

// "NegateBranchCondition", "OmitCall", "SwapArithmeticOperator",
// "ModifyNumber".
std::string_view to_string(MutationOperator op);
std::optional<MutationOperator> parse_operator(std::string_view name);

struct MutationCandidate {
  // "<path>:<operator>:<line>:<column>" of the anchor.
  std::string id;
  std::string path;
  MutationOperator op = MutationOperator::kModifyNumber;
  // Operator token for swaps, opening parenthesis for calls, first
  // character of the condition or literal otherwise.
  mini::SourceSpan anchor;
  // Text region rewritten by the mutation.
  mini::SourceSpan target;

  bool operator==(const MutationCandidate&) const = default;
};

// Candidate locations of a production module in source order. Negated
// conditions and omitted calls are not offered inside the body of a
// `while true` loop. Test files yield no candidates.
std::vector<MutationCandidate> enumerate_candidates(const mini::Module& module,
                                                    const std::string& path);

// Returns a copy of `module` with the candidate's node replaced. Throws
// lexprio::Error if no node of the right kind sits at the anchor.
mini::Module apply_mutation(const mini::Module& module,
                            const MutationCandidate& candidate);

// Rewrites `source` in place of the candidate's target, leaving all other
// bytes untouched. `module` must be the parse of `source`.
std::string mutate_source(std::string_view source, const mini::Module& module,
                          const MutationCandidate& candidate);

}  // namespace lexprio::seedgen

#endif  // LEXPRIO_SEEDGEN_MUTATION_H_
