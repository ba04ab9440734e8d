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

#ifndef LEXPRIO_IO_H_
#define LEXPRIO_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexprio/index.h"
#include "lexprio/learn.h"

namespace lexprio {

// {"docs": [{"id": ..., "terms": {token: count}}]}. Derived statistics are
// recomputed on load.
std::string index_to_json(const TestIndex& index);
TestIndex index_from_json(std::string_view text);

// One JSON object per line:
//   {"run_id", "version", "change_terms", "context_terms",
//    "tests": [{"id", "outcome", "duration_s"}], "order"}
// "version" and "context_terms" may be absent on input.
std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(std::string_view line);
std::string records_to_jsonl(const std::vector<RunRecord>& records);
// Blank lines are skipped. Errors carry the 1-based line number.
std::vector<RunRecord> records_from_jsonl(std::string_view text);

// {term: {"n", "prec", "rec", "f1"}}
std::string weights_to_json(const WeightTable& table);
WeightTable weights_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
// Creates missing parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lexprio

#endif  // LEXPRIO_IO_H_
