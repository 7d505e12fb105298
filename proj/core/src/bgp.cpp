// Copyright 2026 The mtp2skill Authors
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

#include "mtp2skill/bgp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "turtle_lexer.hpp"

namespace mtp2skill::rdf {

namespace {

// Variables are numbered; a solution is a vector of optional terms.
using Solution = std::vector<std::optional<Term>>;

struct CompiledPattern {
  // Either a constant term or a variable slot.
  struct Slot {
    std::optional<Term> constant;
    int var = -1;
  };
  Slot s, p, o;
};

class Compiler {
 public:
  int slot_of(const std::string& name) {
    auto [it, inserted] = ids_.emplace(name, static_cast<int>(ids_.size()));
    return it->second;
  }
  int find(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? -1 : it->second;
  }
  std::size_t count() const { return ids_.size(); }

  CompiledPattern::Slot compile(const PatternTerm& t, const Bindings& inputs) {
    CompiledPattern::Slot slot;
    if (const auto* v = std::get_if<Variable>(&t)) {
      if (auto it = inputs.find(v->name); it != inputs.end())
        slot.constant = it->second;
      else
        slot.var = slot_of(v->name);
    } else {
      slot.constant = std::get<Term>(t);
    }
    return slot;
  }

 private:
  std::map<std::string, int> ids_;
};

std::optional<Term> resolve(const CompiledPattern::Slot& slot, const Solution& sol) {
  if (slot.constant) return slot.constant;
  return sol[static_cast<std::size_t>(slot.var)];
}

int bound_positions(const CompiledPattern& p, const std::vector<bool>& bound) {
  auto b = [&](const CompiledPattern::Slot& s) {
    return s.constant || bound[static_cast<std::size_t>(s.var)] ? 1 : 0;
  };
  return b(p.s) + b(p.p) + b(p.o);
}

bool bind(const CompiledPattern::Slot& slot, const Term& value, Solution& sol) {
  if (slot.constant) return *slot.constant == value;
  auto& cell = sol[static_cast<std::size_t>(slot.var)];
  if (cell) return *cell == value;
  cell = value;
  return true;
}

}  // namespace

std::size_t SolutionTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

std::vector<Term> SolutionTable::values(std::string_view name) const {
  auto c = column(name);
  std::vector<Term> out;
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

SolutionTable query_bgp(const RdfGraph& graph, const BgpQuery& query, const Bindings& inputs) {
  Compiler compiler;
  std::vector<CompiledPattern> patterns;
  for (const auto& tp : query.patterns)
    patterns.push_back({compiler.compile(tp.subject, inputs), compiler.compile(tp.predicate, inputs),
                        compiler.compile(tp.object, inputs)});

  for (const auto& v : query.projection)
    if (compiler.find(v) < 0 && !inputs.count(v))
      throw std::invalid_argument("projected variable ?" + v + " occurs in no pattern");
  for (const auto& [v, _] : query.filters)
    if (compiler.find(v) < 0 && !inputs.count(v))
      throw std::invalid_argument("filtered variable ?" + v + " occurs in no pattern");

  // Greedy join order: at each step take the pattern with the most bound
  // positions, ties broken by declaration order.
  std::vector<std::size_t> order;
  {
    std::vector<bool> bound(compiler.count(), false);
    std::vector<bool> used(patterns.size(), false);
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      std::size_t best = patterns.size();
      int bestScore = -1;
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (used[i]) continue;
        int score = bound_positions(patterns[i], bound);
        if (score > bestScore) {
          bestScore = score;
          best = i;
        }
      }
      used[best] = true;
      order.push_back(best);
      for (const auto* s : {&patterns[best].s, &patterns[best].p, &patterns[best].o})
        if (s->var >= 0) bound[static_cast<std::size_t>(s->var)] = true;
    }
  }

  std::vector<Solution> current{Solution(compiler.count())};
  for (std::size_t idx : order) {
    const auto& pat = patterns[idx];
    std::vector<Solution> next;
    for (const auto& sol : current) {
      auto s = resolve(pat.s, sol);
      auto p = resolve(pat.p, sol);
      auto o = resolve(pat.o, sol);
      if (p && !p->is_iri()) continue;
      if (s && s->is_literal()) continue;
      for (const Triple& t : graph.match(s, p, o)) {
        Solution ext = sol;
        if (bind(pat.s, t.subject, ext) && bind(pat.p, t.predicate, ext) &&
            bind(pat.o, t.object, ext))
          next.push_back(std::move(ext));
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }

  SolutionTable table;
  table.columns = query.projection;
  std::set<std::vector<Term>> rows;
  for (const auto& sol : current) {
    bool keep = true;
    for (const auto& [v, expected] : query.filters) {
      int id = compiler.find(v);
      const std::optional<Term> value =
          id >= 0 ? sol[static_cast<std::size_t>(id)] : std::optional<Term>(inputs.at(v));
      if (!value || *value != expected) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    std::vector<Term> row;
    for (const auto& v : query.projection) {
      int id = compiler.find(v);
      row.push_back(id >= 0 ? *sol[static_cast<std::size_t>(id)] : inputs.at(v));
    }
    rows.insert(std::move(row));
  }
  table.rows.assign(rows.begin(), rows.end());
  return table;
}

namespace {

std::map<std::string, std::string> with_standard(const std::map<std::string, std::string>& extra) {
  std::map<std::string, std::string> prefixes(extra.begin(), extra.end());
  for (const auto& [label, iri] : standard_prefixes()) prefixes.emplace(label, iri);
  return prefixes;
}

PatternTerm read_pattern_term(detail::Lexer& lex, detail::TermReader& reader) {
  auto tok = lex.next();
  if (tok.type == detail::Token::Type::Var) return Variable{tok.text};
  if (tok.type == detail::Token::Type::End) lex.fail("unexpected end of pattern");
  return reader.read(tok);
}

}  // namespace

std::vector<TriplePattern> parse_patterns(std::string_view text,
                                          const std::map<std::string, std::string>& extraPrefixes) {
  auto prefixes = with_standard(extraPrefixes);
  detail::Lexer lex(text);
  detail::TermReader reader(lex, prefixes);
  std::vector<TriplePattern> out;
  while (lex.peek().type != detail::Token::Type::End) {
    TriplePattern tp{read_pattern_term(lex, reader), read_pattern_term(lex, reader),
                     read_pattern_term(lex, reader)};
    out.push_back(std::move(tp));
    auto sep = lex.peek();
    if (sep.type == detail::Token::Type::Punct && sep.text == ".")
      lex.next();
    else if (sep.type != detail::Token::Type::End)
      lex.fail("expected '.' between patterns, got '" + sep.text + "'");
  }
  return out;
}

Term parse_term(std::string_view text, const std::map<std::string, std::string>& extraPrefixes) {
  auto prefixes = with_standard(extraPrefixes);
  detail::Lexer lex(text);
  detail::TermReader reader(lex, prefixes);
  Term t = reader.read(lex.next());
  if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input after term");
  return t;
}

}  // namespace mtp2skill::rdf
