# Copyright 2026 The Lexprio Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Lexical test prioritization: BM25 and learned term weights over test code."""

from lexprio._core import (
    LexprioError,
    TestIndex,
    WeightTable,
    apfd,
    learn,
    mutation_candidates,
    rank,
    run_cli,
    scan_text,
    split_identifier,
    wilcoxon,
)

__all__ = [
    "LexprioError",
    "TestIndex",
    "WeightTable",
    "apfd",
    "learn",
    "mutation_candidates",
    "rank",
    "run_cli",
    "scan_text",
    "split_identifier",
    "wilcoxon",
]
