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

#include "lexprio/io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lexprio/error.h"

namespace lexprio {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("malformed " + std::string(what) + ": " + e.what());
  }
}

template <typename T>
T field(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(std::string("missing field '") + key + "'");
  }
  try {
    return it->template get<T>();
  } catch (const Json::exception&) {
    throw Error(std::string("field '") + key + "' has the wrong type");
  }
}

TermSet term_set(const Json& array) {
  TermSet out;
  for (const Json& term : array) {
    if (!term.is_string() || !Feature::valid(term.get<std::string>())) {
      throw Error("invalid term " + term.dump());
    }
    out.insert(term.get<std::string>());
  }
  return out;
}

}  // namespace

std::string index_to_json(const TestIndex& index) {
  Json docs = Json::array();
  for (const TestDocument& doc : index.docs()) {
    Json terms = Json::object();
    for (const auto& [term, count] : doc.terms.counts()) terms[term] = count;
    docs.push_back(Json{{"id", doc.id}, {"terms", std::move(terms)}});
  }
  return Json{{"docs", std::move(docs)}}.dump(1) + "\n";
}

TestIndex index_from_json(std::string_view text) {
  Json root = parse_json(text, "index snapshot");
  if (!root.is_object() || !root.contains("docs") || !root["docs"].is_array()) {
    throw Error("index snapshot needs a 'docs' array");
  }
  std::vector<TestDocument> docs;
  for (const Json& entry : root["docs"]) {
    TestDocument doc;
    doc.id = field<std::string>(entry, "id");
    Json terms = field<Json>(entry, "terms");
    if (!terms.is_object()) throw Error("'terms' of " + doc.id + " is not an object");
    for (const auto& [term, count] : terms.items()) {
      if (!Feature::valid(term) || !count.is_number_integer() ||
          count.get<long long>() < 1) {
        throw Error("invalid term entry '" + term + "' in " + doc.id);
      }
      doc.terms.add(Feature(term), count.get<int>());
    }
    docs.push_back(std::move(doc));
  }
  return build_index(std::move(docs));
}

std::string record_to_json(const RunRecord& record) {
  Json tests = Json::array();
  for (const std::string& id : record.untreated_order) {
    auto outcome = record.outcomes.find(id);
    auto duration = record.durations.find(id);
    if (outcome == record.outcomes.end() || duration == record.durations.end()) {
      throw Error("run " + record.run_id + ": order names unknown test " + id);
    }
    tests.push_back(Json{
        {"id", id},
        {"outcome", outcome->second == Outcome::kFail ? "fail" : "pass"},
        {"duration_s", duration->second}});
  }
  Json out;
  out["run_id"] = record.run_id;
  out["version"] = record.version;
  out["change_terms"] = record.change_terms;
  out["context_terms"] = record.context_terms;
  out["tests"] = std::move(tests);
  out["order"] = record.untreated_order;
  return out.dump();
}

RunRecord record_from_json(std::string_view line) {
  Json root = parse_json(line, "run record");
  if (!root.is_object()) throw Error("run record is not an object");
  RunRecord record;
  record.run_id = field<std::string>(root, "run_id");
  if (root.contains("version")) record.version = field<std::string>(root, "version");
  record.change_terms = term_set(field<Json>(root, "change_terms"));
  if (root.contains("context_terms")) {
    record.context_terms = term_set(field<Json>(root, "context_terms"));
  }
  for (const Json& test : field<Json>(root, "tests")) {
    std::string id = field<std::string>(test, "id");
    std::string outcome = field<std::string>(test, "outcome");
    if (outcome != "pass" && outcome != "fail") {
      throw Error("test " + id + ": outcome must be pass or fail");
    }
    record.outcomes[id] = outcome == "fail" ? Outcome::kFail : Outcome::kPass;
    record.durations[id] = field<double>(test, "duration_s");
  }
  record.untreated_order = field<std::vector<std::string>>(root, "order");
  validate(record);
  return record;
}

std::string records_to_jsonl(const std::vector<RunRecord>& records) {
  std::string out;
  for (const RunRecord& r : records) {
    out += record_to_json(r);
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> records_from_jsonl(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string weights_to_json(const WeightTable& table) {
  Json out = Json::object();
  for (const auto& [term, w] : table) {
    out[term] = Json{{"n", w.sample_count},
                     {"prec", w.mean_prec},
                     {"rec", w.mean_rec},
                     {"f1", w.mean_f1}};
  }
  return out.dump(1) + "\n";
}

WeightTable weights_from_json(std::string_view text) {
  Json root = parse_json(text, "weight table");
  if (!root.is_object()) throw Error("weight table is not an object");
  WeightTable table;
  for (const auto& [term, entry] : root.items()) {
    if (!Feature::valid(term)) throw Error("invalid term '" + term + "'");
    TermWeight w;
    w.sample_count = field<int>(entry, "n");
    w.mean_prec = field<double>(entry, "prec");
    w.mean_rec = field<double>(entry, "rec");
    w.mean_f1 = field<double>(entry, "f1");
    if (w.sample_count < 1) throw Error("term '" + term + "': n must be >= 1");
    for (double v : {w.mean_prec, w.mean_rec, w.mean_f1}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error("term '" + term + "': weights must lie in [0, 1]");
      }
    }
    table.emplace(term, w);
  }
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace lexprio
