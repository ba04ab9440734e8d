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

#include "lexprio/seedgen/corpus.h"

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string_view>

#include "lexprio/error.h"
#include "lexprio/minilang/interpreter.h"
#include "lexprio/minilang/parser.h"
#include "lexprio/rng.h"

namespace lexprio::seedgen {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 200> kNouns = {
    "account", "album",   "anchor",  "apple",   "arrow",   "atlas",
    "badge",   "banner",  "barrel",  "basket",  "beacon",  "bucket",
    "budget",  "buffer",  "bundle",  "cabin",   "cable",   "camera",
    "candle",  "canvas",  "carpet",  "castle",  "channel", "chapter",
    "cipher",  "circle",  "cluster", "coffee",  "comet",   "copper",
    "cotton",  "credit",  "crystal", "cursor",  "dealer",  "desert",
    "device",  "dialog",  "domain",  "donor",   "dragon",  "drawer",
    "engine",  "envelope", "falcon", "feather", "fiber",   "filter",
    "flame",   "fleet",   "flower",  "forest",  "fossil",  "frame",
    "galaxy",  "garden",  "garnet",  "gate",    "glacier", "globe",
    "granite", "gravel",  "harbor",  "harvest", "helmet",  "hollow",
    "horizon", "invoice", "island",  "jacket",  "jewel",   "journal",
    "kernel",  "kettle",  "ladder",  "lantern", "ledger",  "lemon",
    "lens",    "lever",   "library", "linen",   "locket",  "magnet",
    "maple",   "marble",  "market",  "meadow",  "medal",   "mirror",
    "monitor", "mortar",  "motor",   "mountain", "needle", "nickel",
    "number",  "oasis",   "ocean",   "orbit",   "orchard", "packet",
    "paddle",  "palace",  "panel",   "parcel",  "pebble",  "pencil",
    "pepper",  "pillar",  "pilot",   "planet",  "pocket",  "portal",
    "potato",  "prism",   "puzzle",  "quartz",  "quiver",  "rabbit",
    "radar",   "ribbon",  "river",   "rocket",  "saddle",  "salmon",
    "sandal",  "satchel", "season",  "sensor",  "shadow",  "shelter",
    "signal",  "silver",  "socket",  "spider",  "spiral",  "sponge",
    "stable",  "statue",  "stone",   "summit",  "sunset",  "switch",
    "symbol",  "tablet",  "teapot",  "temple",  "thistle", "thunder",
    "ticket",  "timber",  "token",   "tower",   "tractor", "trail",
    "treasure", "tunnel", "turbine", "umbrella", "valley", "vapor",
    "velvet",  "vessel",  "violet",  "voyage",  "wagon",   "walnut",
    "wander",  "warden",  "whistle", "willow",  "window",  "winter",
    "wizard",  "yarn",    "zenith",  "zephyr",  "acorn",   "beetle",
    "blossom", "bramble", "breeze",  "canyon",  "cedar",   "cobalt",
    "coral",   "crater",  "dune",    "ember",   "fjord",   "grotto",
    "hazel",   "iris",    "juniper", "lagoon",  "lotus",   "mango",
    "nectar",  "onyx",
};

constexpr std::array<std::string_view, 24> kVerbs = {
    "compute", "update", "check",   "build",  "merge",  "scale",
    "count",   "find",   "resolve", "apply",  "adjust", "render",
    "collect", "measure", "sort",   "load",   "store",  "filter",
    "assign",  "shift",  "balance", "track",  "select", "prepare",
};

constexpr std::array<std::string_view, 10> kSuffixes = {
    "count", "size", "total", "value", "offset",
    "level", "rate", "score", "amount", "delta",
};

constexpr std::array<std::string_view, 8> kDocPhrases = {
    "checks",  "verifies", "covers", "exercises",
    "asserts", "tests",    "probes", "validates",
};

constexpr std::array<std::string_view, 6> kOrdinals = {
    "first", "second", "third", "fourth", "fifth", "sixth",
};

// Nouns beyond the fixed pool are built from syllables.
std::string synthetic_noun(std::size_t k) {
  static constexpr std::array<std::string_view, 12> kOnsets = {
      "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t"};
  static constexpr std::array<std::string_view, 5> kVowels = {"a", "e", "i",
                                                              "o", "u"};
  std::string out;
  for (int syllable = 0; syllable < 3; ++syllable) {
    out += kOnsets[k % kOnsets.size()];
    k /= kOnsets.size();
    out += kVowels[k % kVowels.size()];
    k /= kVowels.size();
  }
  return out + "x";
}

struct FunctionModel {
  std::string name;
  std::string verb;
  std::vector<std::string> nouns;
  std::vector<std::string> params;
  // Local accumulating the result.
  std::string acc;
  // Body lines, indented by two spaces, ending with the return.
  std::vector<std::string> body;
  int module = 0;
};

struct TestModel {
  std::string name;
  std::string doc;
  int function = 0;
  std::vector<std::int64_t> args;
};

struct WorkflowModel {
  std::string name;
  std::string doc;
  std::vector<int> calls;
  std::vector<std::int64_t> first_args;
  // Constant extra arguments for calls after the first.
  std::vector<std::vector<std::int64_t>> extra_args;
};

struct ModuleModel {
  std::string theme;
  std::int64_t limit = 0;
  std::vector<int> functions;
};

std::string literal(std::int64_t v) {
  if (v >= 0) return std::to_string(v);
  if (v == std::numeric_limits<std::int64_t>::min()) {
    return "0 - 9223372036854775807 - 1";
  }
  return "0 - " + std::to_string(-v);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

class Generator {
 public:
  Generator(std::uint64_t seed, const CorpusParams& params)
      : rng_(seed), params_(params) {}

  CorpusHistory run() {
    build_vocabulary();
    build_modules();
    build_tests();
    CorpusHistory history;
    history.versions.push_back(render());
    for (int step = 1; step < params_.history_steps; ++step) {
      evolve();
      history.versions.push_back(render());
    }
    return history;
  }

 private:
  void build_vocabulary() {
    std::vector<std::string> pool(kNouns.begin(), kNouns.end());
    for (std::size_t k = 0; pool.size() < static_cast<std::size_t>(
                                              params_.vocab_size + params_.modules);
         ++k) {
      pool.push_back(synthetic_noun(k));
    }
    rng_.shuffle(std::span<std::string>(pool));
    themes_.assign(pool.begin(), pool.begin() + params_.modules);
    nouns_.assign(pool.begin() + params_.modules,
                  pool.begin() + params_.modules + params_.vocab_size);
  }

  std::string pick_noun() { return nouns_[rng_.below(nouns_.size())]; }

  std::string pick_suffix() {
    return std::string(kSuffixes[rng_.below(kSuffixes.size())]);
  }

  void build_modules() {
    std::set<std::string> names;
    for (int m = 0; m < params_.modules; ++m) {
      ModuleModel module;
      module.theme = themes_[m];
      module.limit = rng_.between(2, 9);
      for (int f = 0; f < params_.functions_per_module; ++f) {
        FunctionModel fn;
        fn.module = m;
        int attempts = 0;
        do {
          if (++attempts > 10000) {
            throw Error("vocabulary too small for distinct function names");
          }
          fn.verb = std::string(kVerbs[rng_.below(kVerbs.size())]);
          fn.nouns = {pick_noun(), pick_noun()};
          if (fn.nouns[0] == fn.nouns[1]) continue;
          fn.name = fn.verb + "_" + fn.nouns[0] + "_" + fn.nouns[1];
        } while (fn.nouns[0] == fn.nouns[1] || names.contains(fn.name));
        names.insert(fn.name);
        int arity = rng_.between(1, 3);
        fn.params.push_back(fn.nouns[0]);
        if (arity >= 2) fn.params.push_back(fn.nouns[1] + "_" + pick_suffix());
        if (arity >= 3) {
          std::string p;
          do {
            p = fn.nouns[0] + "_" + pick_suffix();
          } while (p == fn.params.back());
          fn.params.push_back(p);
        }
        fn.acc = fn.nouns[1] + "_result";
        module.functions.push_back(static_cast<int>(functions_.size()));
        functions_.push_back(std::move(fn));
        functions_.back().body = make_body(static_cast<int>(functions_.size()) - 1);
      }
      modules_.push_back(std::move(module));
    }
  }

  // An operand: a name from `names` or a small constant.
  std::string operand(const std::vector<std::string>& names) {
    if (rng_.chance(0.25)) return std::to_string(rng_.between(1, 9));
    return names[rng_.below(names.size())];
  }

  std::string arithmetic(const std::vector<std::string>& names) {
    static constexpr std::array<std::string_view, 3> kOps = {" + ", " - ",
                                                             " * "};
    std::string lhs = names[rng_.below(names.size())];
    int shape = static_cast<int>(rng_.below(6));
    switch (shape) {
      case 0:
        return lhs + " / " + std::to_string(rng_.between(2, 5));
      case 1:
        return "abs(" + lhs + " - " + operand(names) + ")";
      case 2:
        return (rng_.chance(0.5) ? "max(" : "min(") + lhs + ", " +
               operand(names) + ")";
      default:
        return lhs + std::string(kOps[rng_.below(kOps.size())]) +
               operand(names);
    }
  }

  std::vector<std::string> make_body(int id) {
    FunctionModel& fn = functions_[id];
    std::string theme_limit = themes_[fn.module] + "_limit";
    std::vector<std::string> names = fn.params;
    std::vector<std::string> body;

    std::string first;
    do {
      first = fn.nouns[0] + "_" + pick_suffix();
    } while (std::find(names.begin(), names.end(), first) != names.end());
    body.push_back("  let " + first + " = " + arithmetic(names) + ";");
    names.push_back(first);

    if (id > 0 && rng_.chance(0.7)) {
      int callee = static_cast<int>(rng_.below(static_cast<std::uint64_t>(id)));
      const FunctionModel& target = functions_[callee];
      std::vector<std::string> args;
      for (std::size_t i = 0; i < target.params.size(); ++i) {
        args.push_back(operand(names));
      }
      std::string local = target.nouns[0] + "_" + fn.nouns[1];
      if (std::find(names.begin(), names.end(), local) == names.end()) {
        body.push_back("  let " + local + " = " + target.name + "(" +
                       join(args, ", ") + ");");
        names.push_back(local);
      }
    }

    body.push_back("  let " + fn.acc + " = " + arithmetic(names) + ";");
    names.push_back(fn.acc);

    std::string tested = names[rng_.below(names.size())];
    body.push_back("  if " + tested + " > " +
                   std::to_string(rng_.between(2, 9)) + " {");
    body.push_back("    " + fn.acc + " = " + fn.acc + " - " + operand(names) +
                   ";");
    if (rng_.chance(0.6)) {
      body.push_back("  } else {");
      body.push_back("    " + fn.acc + " = " + fn.acc + " + " +
                     operand(names) + ";");
    }
    body.push_back("  }");

    if (rng_.chance(0.5)) {
      std::string index = fn.nouns[0] + "_index";
      body.push_back("  let " + index + " = 0;");
      body.push_back("  while " + index + " < " +
                     std::to_string(rng_.between(2, 6)) + " {");
      body.push_back("    " + fn.acc + " = " + fn.acc + " + " + index + " * " +
                     std::to_string(rng_.between(1, 4)) + ";");
      body.push_back("    " + index + " = " + index + " + 1;");
      body.push_back("  }");
    }

    if (rng_.chance(0.4)) {
      body.push_back("  " + fn.acc + " = " + fn.acc + " + " + theme_limit +
                     ";");
    }
    body.push_back("  return " + fn.acc + " + " + operand(names) + ";");
    return body;
  }

  void build_tests() {
    for (std::size_t id = 0; id < functions_.size(); ++id) {
      const FunctionModel& fn = functions_[id];
      for (int k = 1; k <= params_.tests_per_function; ++k) {
        TestModel test;
        test.function = static_cast<int>(id);
        test.name = "test_" + fn.name + "_case" + std::to_string(k);
        test.doc = std::string(kDocPhrases[rng_.below(kDocPhrases.size())]) +
                   " " + fn.verb + " " + fn.nouns[0] + " " + fn.nouns[1];
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
          test.args.push_back(rng_.between(0, 12));
        }
        tests_by_module_[fn.module].push_back(std::move(test));
      }
    }
    for (int w = 1; w <= params_.noise_tests; ++w) {
      WorkflowModel flow;
      flow.name = "test_workflow_" + std::to_string(w);
      int calls = rng_.between(2, 3);
      std::vector<std::string> themes;
      for (int c = 0; c < calls; ++c) {
        int id = static_cast<int>(rng_.below(functions_.size()));
        flow.calls.push_back(id);
        const std::string& theme = themes_[functions_[id].module];
        if (std::find(themes.begin(), themes.end(), theme) == themes.end()) {
          themes.push_back(theme);
        }
      }
      flow.doc = "runs the " + join(themes, " and ") + " pipeline";
      for (std::size_t i = 0; i < functions_[flow.calls[0]].params.size();
           ++i) {
        flow.first_args.push_back(rng_.between(0, 12));
      }
      for (std::size_t c = 1; c < flow.calls.size(); ++c) {
        std::vector<std::int64_t> extra;
        for (std::size_t i = 1; i < functions_[flow.calls[c]].params.size();
             ++i) {
          extra.push_back(rng_.between(0, 12));
        }
        flow.extra_args.push_back(std::move(extra));
      }
      workflows_.push_back(std::move(flow));
    }
  }

  void evolve() {
    int changes = rng_.between(1, 3);
    std::set<int> touched;
    for (int c = 0; c < changes; ++c) {
      int id = static_cast<int>(rng_.below(functions_.size()));
      if (!touched.insert(id).second) continue;
      FunctionModel& fn = functions_[id];
      double roll = static_cast<double>(rng_.below(100)) / 100.0;
      if (roll < 0.4) {
        fn.body = make_body(id);
      } else if (roll < 0.7) {
        std::vector<std::string> names = fn.params;
        names.push_back(fn.acc);
        std::string line = "  " + fn.acc + " = " + fn.acc + " + " +
                           arithmetic(names) + ";";
        fn.body.insert(fn.body.end() - 1, line);
      } else {
        tweak_number(fn);
      }
    }
  }

  void tweak_number(FunctionModel& fn) {
    std::vector<std::size_t> with_digit;
    for (std::size_t i = 0; i < fn.body.size(); ++i) {
      const std::string& line = fn.body[i];
      if (std::any_of(line.begin(), line.end(),
                      [](char ch) { return ch >= '0' && ch <= '9'; })) {
        with_digit.push_back(i);
      }
    }
    if (with_digit.empty()) {
      fn.body.insert(fn.body.end() - 1,
                     "  " + fn.acc + " = " + fn.acc + " + " +
                         std::to_string(rng_.between(1, 9)) + ";");
      return;
    }
    std::string& line = fn.body[with_digit[rng_.below(with_digit.size())]];
    std::size_t pos = line.find_first_of("0123456789");
    std::size_t end = line.find_first_not_of("0123456789", pos);
    if (end == std::string::npos) end = line.size();
    std::string old = line.substr(pos, end - pos);
    std::string fresh;
    do {
      fresh = std::to_string(rng_.between(2, 9));
    } while (fresh == old);
    line.replace(pos, end - pos, fresh);
  }

  std::string render_module(const ModuleModel& module) const {
    std::string out = "// " + module.theme + " module\n";
    out += "let " + module.theme + "_limit = " + std::to_string(module.limit) +
           ";\n";
    for (int id : module.functions) {
      const FunctionModel& fn = functions_[id];
      out += "\nfn " + fn.name + "(" + join(fn.params, ", ") + ") {\n";
      for (const std::string& line : fn.body) out += line + "\n";
      out += "}\n";
    }
    return out;
  }

  std::int64_t expect(mini::Interpreter& interpreter, const std::string& name,
                      const std::vector<std::int64_t>& args) const {
    std::vector<mini::Value> values(args.begin(), args.end());
    mini::Value result = interpreter.call(name, std::move(values));
    const auto* number = std::get_if<std::int64_t>(&result);
    if (number == nullptr) {
      throw Error("generated function " + name + " returned " +
                  mini::to_display(result));
    }
    return *number;
  }

  FileTree render() const {
    FileTree tree;
    for (const ModuleModel& module : modules_) {
      tree["src/" + module.theme + ".mini"] = render_module(module);
    }
    std::vector<mini::Module> parsed;
    for (const auto& [path, text] : tree) {
      parsed.push_back(mini::parse_minilang(text, path));
    }
    std::vector<const mini::Module*> pointers;
    for (const mini::Module& m : parsed) pointers.push_back(&m);

    // One interpreter per expected value keeps step counts per call
    // bounded by the default budget.
    auto evaluate = [&](const std::string& name,
                        const std::vector<std::int64_t>& args) {
      mini::Interpreter interpreter(pointers, kDefaultBudget);
      interpreter.load();
      return expect(interpreter, name, args);
    };

    for (std::size_t m = 0; m < modules_.size(); ++m) {
      std::string out;
      for (const TestModel& test : tests_by_module_.at(static_cast<int>(m))) {
        const FunctionModel& fn = functions_[test.function];
        std::int64_t expected = evaluate(fn.name, test.args);
        out += "fn " + test.name + "() {\n";
        out += "  \"" + test.doc + "\";\n";
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
          out += "  let " + fn.params[i] + " = " +
                 std::to_string(test.args[i]) + ";\n";
        }
        out += "  let result = " + fn.name + "(" + join(fn.params, ", ") +
               ");\n";
        out += "  assert result == " + literal(expected) + ";\n";
        out += "}\n\n";
      }
      out.pop_back();
      tree["tests/test_" + modules_[m].theme + ".mini"] = out;
    }

    if (!workflows_.empty()) {
      std::string out;
      for (const WorkflowModel& flow : workflows_) {
        out += "fn " + flow.name + "() {\n";
        out += "  \"" + flow.doc + "\";\n";
        std::int64_t value = 0;
        for (std::size_t c = 0; c < flow.calls.size(); ++c) {
          const FunctionModel& fn = functions_[flow.calls[c]];
          std::vector<std::int64_t> args;
          std::vector<std::string> arg_text;
          if (c == 0) {
            args = flow.first_args;
            for (std::int64_t a : args) arg_text.push_back(std::to_string(a));
          } else {
            args.push_back(value);
            arg_text.push_back(std::string(kOrdinals[c - 1]));
            for (std::int64_t a : flow.extra_args[c - 1]) {
              args.push_back(a);
              arg_text.push_back(std::to_string(a));
            }
          }
          value = evaluate(fn.name, args);
          out += "  let " + std::string(kOrdinals[c]) + " = " + fn.name + "(" +
                 join(arg_text, ", ") + ");\n";
        }
        out += "  assert " + std::string(kOrdinals[flow.calls.size() - 1]) +
               " == " + literal(value) + ";\n";
        out += "}\n\n";
      }
      out.pop_back();
      tree["tests/test_workflow.mini"] = out;
    }
    return tree;
  }

  Rng rng_;
  CorpusParams params_;
  std::vector<std::string> themes_;
  std::vector<std::string> nouns_;
  std::vector<ModuleModel> modules_;
  std::vector<FunctionModel> functions_;
  std::map<int, std::vector<TestModel>> tests_by_module_;
  std::vector<WorkflowModel> workflows_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

CorpusHistory generate_corpus(std::uint64_t seed, const CorpusParams& params) {
  if (params.modules < 1) throw Error("corpus needs at least one module");
  if (params.functions_per_module < 1 || params.tests_per_function < 1 ||
      params.vocab_size < 1) {
    throw Error(
        "functions_per_module, tests_per_function and vocab_size must be >= 1");
  }
  if (params.history_steps < 2) {
    throw Error("history_steps must be >= 2");
  }
  if (params.noise_tests < 0) throw Error("noise_tests must be >= 0");
  if (params.vocab_size < 2) throw Error("vocab_size must be >= 2");
  return Generator(seed, params).run();
}

std::string version_name(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%04zu", index);
  return buffer;
}

std::string tree_hash(const FileTree& tree) {
  std::uint64_t hash = fnv1a("");
  for (const auto& [path, text] : tree) {
    hash = fnv1a(path, hash);
    hash = fnv1a(std::string_view("\0", 1), hash);
    hash = fnv1a(text, hash);
    hash = fnv1a(std::string_view("\0", 1), hash);
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return std::string(buffer).substr(0, 12);
}

void write_history(const CorpusHistory& history, const fs::path& root) {
  fs::path base = root / "history";
  if (fs::exists(base)) {
    throw Error(base.string() + " already exists");
  }
  for (std::size_t v = 0; v < history.versions.size(); ++v) {
    fs::path dir = base / version_name(v);
    for (const auto& [path, text] : history.versions[v]) {
      fs::path file = dir / path;
      fs::create_directories(file.parent_path());
      std::ofstream out(file, std::ios::binary);
      out << text;
      if (!out) throw Error("cannot write " + file.string());
    }
  }
}

FileTree read_tree(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  FileTree tree;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), dir).generic_string();
    tree[rel] = read_file(entry.path());
  }
  return tree;
}

CorpusHistory read_history(const fs::path& root) {
  fs::path base = root / "history";
  if (!fs::is_directory(base)) {
    throw Error("no history directory under " + root.string());
  }
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(base)) {
    if (entry.is_directory()) names.insert(entry.path().filename().string());
  }
  CorpusHistory history;
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!names.contains(version_name(v))) {
      throw Error("history is missing version " + version_name(v));
    }
    history.versions.push_back(read_tree(base / version_name(v)));
  }
  return history;
}

}  // namespace lexprio::seedgen
