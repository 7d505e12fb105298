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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtp2skill/rdf_graph.hpp"

namespace mtp2skill::rdf {

struct Variable {
  std::string name;  // without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

// Conjunctive query. Filters are equality constraints on variables.
struct BgpQuery {
  std::vector<TriplePattern> patterns;
  std::vector<std::string> projection;
  std::vector<std::pair<std::string, Term>> filters;
};

using Bindings = std::map<std::string, Term>;

struct SolutionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Term>> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
  // Index of a column; throws std::out_of_range.
  std::size_t column(std::string_view name) const;
  // Values of one column, row order.
  std::vector<Term> values(std::string_view name) const;
};

// Evaluates the conjunction of patterns. Input bindings are substituted
// before evaluation. Rows are distinct and sorted by the projected terms.
// Throws std::invalid_argument if a projected or filtered variable occurs
// in no pattern and is not an input.
SolutionTable query_bgp(const RdfGraph& graph, const BgpQuery& query, const Bindings& inputs = {});

// Parses "?s rdf:type cap:Capability . ?s cap:providesSkill ?k" using the
// standard prefixes plus `extraPrefixes`. Throws Error(TurtleSyntax).
std::vector<TriplePattern> parse_patterns(
    std::string_view text, const std::map<std::string, std::string>& extraPrefixes = {});

// Parses a single term in the same syntax ("cap:Skill", "<http://..>",
// "\"4\"^^xsd:integer", "42", "true").
Term parse_term(std::string_view text, const std::map<std::string, std::string>& extraPrefixes = {});

}  // namespace mtp2skill::rdf
