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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lexprio/cli.h"
#include "lexprio/error.h"
#include "lexprio/eval.h"
#include "lexprio/index.h"
#include "lexprio/io.h"
#include "lexprio/learn.h"
#include "lexprio/lex.h"
#include "lexprio/minilang/parser.h"
#include "lexprio/rank.h"
#include "lexprio/seedgen/mutation.h"

namespace py = pybind11;

PYBIND11_MAKE_OPAQUE(lexprio::WeightTable)

namespace lexprio {
namespace {

TestIndex index_from_docs(const std::vector<std::pair<std::string, std::map<std::string, int>>>& docs) {
  std::vector<TestDocument> out;
  out.reserve(docs.size());
  for (const auto& [id, terms] : docs) {
    TestDocument d;
    d.id = id;
    for (const auto& [term, count] : terms) d.terms.add(Feature(term), count);
    out.push_back(std::move(d));
  }
  return build_index(std::move(out));
}

std::vector<std::pair<std::string, double>> rank(const std::string& strategy,
                                                 const TestIndex& index,
                                                 const std::vector<std::string>& query_terms,
                                                 const WeightTable* weights, std::uint64_t seed,
                                                 double k1, double b) {
  std::optional<StrategyKind> kind = parse_strategy(strategy);
  if (!kind) throw py::value_error("unknown strategy '" + strategy + "'");
  ChangeQuery query;
  query.terms = TermSet(query_terms.begin(), query_terms.end());
  Ranking ranking = rank_tests({*kind, seed}, &query, index, weights, Bm25Params{k1, b});
  std::vector<std::pair<std::string, double>> out;
  for (const RankedTest& e : ranking.entries) out.emplace_back(e.id, e.score);
  return out;
}

}  // namespace
}  // namespace lexprio

PYBIND11_MODULE(_core, m) {
  using namespace lexprio;
  m.doc() = "Lexical test prioritization core";

  py::register_exception<Error>(m, "LexprioError", PyExc_RuntimeError);

  m.def(
      "split_identifier",
      [](const std::string& raw) {
        std::vector<std::string> out;
        for (const Feature& f : split_identifier(raw)) out.push_back(f.text());
        return out;
      },
      py::arg("raw"), "Lower-case alphabetic fragments of an identifier.");
  m.def(
      "scan_text", [](const std::string& text) { return scan_text(text).counts(); },
      py::arg("text"), "Bag of split identifiers in free text.");

  py::class_<TestIndex>(m, "TestIndex")
      .def(py::init(&index_from_docs), py::arg("docs"),
           "Builds an index from (test id, {term: count}) pairs.")
      .def_static(
          "from_json", [](const std::string& text) { return index_from_json(text); },
          py::arg("text"))
      .def("to_json", [](const TestIndex& i) { return index_to_json(i); })
      .def("__len__", &TestIndex::doc_count)
      .def_property_readonly("avg_len", &TestIndex::avg_len)
      .def("doc_freq", [](const TestIndex& i, const std::string& t) { return i.doc_freq(t); })
      .def("idf", [](const TestIndex& i, const std::string& t) { return idf(i, t); })
      .def("ids", [](const TestIndex& i) {
        std::vector<std::string> out;
        for (const TestDocument& d : i.docs()) out.push_back(d.id);
        return out;
      });

  py::class_<WeightTable>(m, "WeightTable")
      .def_static(
          "from_json", [](const std::string& text) { return weights_from_json(text); },
          py::arg("text"))
      .def("to_json", [](const WeightTable& w) { return weights_to_json(w); })
      .def("__len__", [](const WeightTable& w) { return w.size(); })
      .def("__getitem__", [](const WeightTable& w, const std::string& term) {
        auto it = w.find(term);
        if (it == w.end()) throw py::key_error(term);
        const TermWeight& t = it->second;
        return py::dict(py::arg("n") = t.sample_count, py::arg("prec") = t.mean_prec,
                        py::arg("rec") = t.mean_rec, py::arg("f1") = t.mean_f1);
      });

  m.def(
      "rank",
      [](const std::string& strategy, const TestIndex& index,
         const std::vector<std::string>& query, const WeightTable* weights, std::uint64_t seed,
         double k1, double b) { return rank(strategy, index, query, weights, seed, k1, b); },
      py::arg("strategy"), py::arg("index"), py::arg("query"), py::arg("weights") = nullptr,
      py::arg("seed") = 0, py::arg("k1") = 10.0, py::arg("b") = 0.5,
      "Ranked (test id, score) pairs for a set of change terms.");

  m.def(
      "learn",
      [](const std::string& records_jsonl, const TestIndex& index) {
        std::vector<RunRecord> records = records_from_jsonl(records_jsonl);
        return aggregate_weights(records,
                                 [&](const RunRecord&) -> const TestIndex& { return index; });
      },
      py::arg("records_jsonl"), py::arg("index"),
      "Term weights from run records that share one index.");

  m.def(
      "apfd",
      [](const std::vector<std::string>& order, const std::vector<std::vector<std::string>>& faults) {
        std::vector<FailSet> sets;
        for (const auto& f : faults) sets.emplace_back(f.begin(), f.end());
        return apfd(std::span<const std::string>(order), sets);
      },
      py::arg("order"), py::arg("faults"));

  m.def(
      "wilcoxon",
      [](const std::vector<std::pair<double, double>>& pairs) {
        WilcoxonResult r = wilcoxon_signed_rank(pairs);
        return py::dict(py::arg("w") = r.w, py::arg("p") = r.p_two_sided, py::arg("n") = r.n,
                        py::arg("exact") = r.exact);
      },
      py::arg("pairs"), "Two-sided signed-rank test over (a, b) pairs.");

  m.def(
      "mutation_candidates",
      [](const std::string& source, const std::string& path) {
        mini::Module module = mini::parse_minilang(source, path);
        std::vector<std::string> out;
        for (const auto& c : seedgen::enumerate_candidates(module, path)) out.push_back(c.id);
        return out;
      },
      py::arg("source"), py::arg("path"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = dispatch(args, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI subcommand; returns (exit code, stdout, stderr).");
}
