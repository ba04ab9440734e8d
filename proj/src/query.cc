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

#include "lexprio/query.h"

#include <algorithm>
#include <optional>

#include "lexprio/error.h"
#include "lexprio/minilang/lexer.h"
#include "lexprio/minilang/parser.h"

namespace lexprio {

namespace {

using LineSet = std::set<int>;

void add_split(std::string_view raw, TermSet& terms) {
  for (const Feature& f : split_identifier(raw)) terms.insert(f.text());
}

void add_bag(const FeatureBag& bag, TermSet& terms) {
  for (const auto& [term, count] : bag.counts()) terms.insert(term);
}

void collect_on_lines(const mini::Expr& e, const LineSet& lines,
                      TermSet& terms) {
  if ((e.kind == mini::ExprKind::kName || e.kind == mini::ExprKind::kStr) &&
      lines.contains(e.anchor.line)) {
    add_split(e.text, terms);
  }
  for (const mini::Expr& c : e.children) collect_on_lines(c, lines, terms);
}

void collect_on_lines(const mini::Stmt& s, const LineSet& lines,
                      TermSet& terms) {
  bool named = s.kind == mini::StmtKind::kFuncDef ||
               s.kind == mini::StmtKind::kLet ||
               s.kind == mini::StmtKind::kAssign;
  if (named && lines.contains(s.name_span.line)) add_split(s.name, terms);
  for (const mini::Param& p : s.params) {
    if (lines.contains(p.span.line)) add_split(p.name, terms);
  }
  if (s.doc && lines.contains(s.doc->span.line)) add_split(s.doc->text, terms);
  for (const mini::Expr& e : s.exprs) collect_on_lines(e, lines, terms);
  for (const mini::Stmt& c : s.body) collect_on_lines(c, lines, terms);
  for (const mini::Stmt& c : s.else_body) collect_on_lines(c, lines, terms);
}

void enclosing(const std::vector<mini::Stmt>& body, int line,
               std::vector<std::string>& names) {
  for (const mini::Stmt& s : body) {
    if (line < s.span.line || line > s.span.end_line) continue;
    if (s.kind == mini::StmtKind::kFuncDef) names.push_back(s.name);
    enclosing(s.body, line, names);
    enclosing(s.else_body, line, names);
  }
}

struct ParsedSource {
  const std::string* text = nullptr;
  std::optional<mini::Module> module;
  std::vector<std::string> lines;
};

}  // namespace

std::vector<std::string> resolve_context(const mini::Module& source,
                                         int line) {
  if (line < 1 || line > source.line_count) {
    throw Error("line " + std::to_string(line) + " is outside " +
                (source.path.empty() ? std::string("the file") : source.path) +
                " (" + std::to_string(source.line_count) + " lines)");
  }
  std::vector<std::string> names;
  enclosing(source.items, line, names);
  return names;
}

FeatureBag line_features(std::string_view line) {
  std::vector<mini::Token> tokens;
  try {
    tokens = mini::tokenize_lenient(line);
  } catch (const ParseError&) {
    return scan_text(line);
  }
  FeatureBag bag;
  for (const mini::Token& t : tokens) {
    if (t.kind == mini::TokenKind::kIdent ||
        t.kind == mini::TokenKind::kString) {
      for (const Feature& f : split_identifier(t.text)) bag.add(f);
    }
  }
  return bag;
}

ChangeQuery build_query(const std::vector<DiffHunk>& hunks,
                        const SourceStore& sources, int window,
                        bool with_context) {
  ChangeQuery query;
  query.window = std::max(window, 0);
  query.with_context = with_context;
  std::map<std::string, ParsedSource, std::less<>> parsed;

  for (const DiffHunk& hunk : hunks) {
    for (const std::string& line : hunk.removed_lines) {
      add_bag(line_features(line), query.terms);
    }

    auto src = sources.find(hunk.file);
    if (src == sources.end()) {
      if (query.window > 0 || with_context) {
        throw Error("no post-change source for '" + hunk.file + "'");
      }
      for (const std::string& line : hunk.added_lines) {
        add_bag(line_features(line), query.terms);
      }
      continue;
    }

    auto [it, inserted] = parsed.try_emplace(hunk.file);
    ParsedSource& ps = it->second;
    if (inserted) {
      ps.text = &src->second;
      ps.lines = split_lines(src->second);
      try {
        ps.module = mini::parse_minilang(src->second, hunk.file);
      } catch (const ParseError&) {
        ps.module.reset();
      }
    }
    int line_count = static_cast<int>(ps.lines.size());

    LineSet lines;
    for (const ChangeRegion& region : hunk.regions) {
      for (int l = region.first; l <= region.last; ++l) lines.insert(l);
      if (query.window > 0) {
        int lo = std::max(1, region.first - query.window);
        int hi = std::min(line_count, region.last + query.window);
        for (int l = lo; l <= hi; ++l) lines.insert(l);
      }
    }

    if (ps.module) {
      for (const mini::Stmt& item : ps.module->items) {
        collect_on_lines(item, lines, query.terms);
      }
    } else {
      for (int l : lines) {
        if (l >= 1 && l <= line_count) {
          add_bag(line_features(ps.lines[static_cast<std::size_t>(l - 1)]),
                  query.terms);
        }
      }
    }

    if (with_context && ps.module && line_count > 0) {
      for (const ChangeRegion& region : hunk.regions) {
        int first = std::clamp(region.first, 1, line_count);
        int last = std::clamp(std::max(region.first, region.last), 1,
                              line_count);
        if (region.empty()) first = last = std::clamp(region.first - 1, 1,
                                                      line_count);
        for (int l = first; l <= last; ++l) {
          for (const std::string& name : resolve_context(*ps.module, l)) {
            add_split(name, query.terms);
          }
        }
      }
    }
  }
  return query;
}

}  // namespace lexprio
