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

#include "mtp2skill/rdf_graph.hpp"

#include <cctype>
#include <stdexcept>

#include "mtp2skill/error.hpp"

namespace mtp2skill::rdf {

const std::vector<std::pair<std::string, std::string>>& standard_prefixes() {
  static const std::vector<std::pair<std::string, std::string>> kPrefixes = {
      {"cap", std::string(ns::kCap)},           {"vdi3682", std::string(ns::kVdi3682)},
      {"vdi2206", std::string(ns::kVdi2206)},   {"isa88", std::string(ns::kIsa88)},
      {"din61360", std::string(ns::kDin61360)}, {"opcua", std::string(ns::kOpcUa)},
      {"rdf", std::string(ns::kRdf)},           {"rdfs", std::string(ns::kRdfs)},
      {"xsd", std::string(ns::kXsd)},
  };
  return kPrefixes;
}

bool is_absolute_iri(std::string_view iri) noexcept {
  // scheme ":" ... with scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    auto c = static_cast<unsigned char>(iri[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : iri)
    if (c == ' ' || c == '<' || c == '>' || c == '"' || c == '\n') return false;
  return colon + 1 < iri.size();
}

Term Term::iri(std::string value) {
  if (!is_absolute_iri(value)) throw std::invalid_argument("not an absolute IRI: '" + value + "'");
  return Term(Kind::Iri, std::move(value), {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw std::invalid_argument("empty blank node label");
  return Term(Kind::BlankNode, std::move(label), {});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) datatype = xsd::kString;
  return Term(Kind::Literal, std::move(lexical), std::move(datatype));
}

Term Term::integer(std::int64_t v) { return literal(std::to_string(v), xsd::kInteger); }

Term Term::boolean(bool v) { return literal(v ? "true" : "false", xsd::kBoolean); }

std::optional<std::int64_t> Term::as_integer() const {
  if (!is_literal() || datatype_ != xsd::kInteger) return std::nullopt;
  try {
    std::size_t used = 0;
    auto v = std::stoll(value_, &used);
    if (used != value_.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string Term::to_string() const {
  switch (kind_) {
    case Kind::Iri: return "<" + value_ + ">";
    case Kind::BlankNode: return "_:" + value_;
    case Kind::Literal: {
      std::string out = "\"";
      for (char c : value_) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      if (datatype_ != xsd::kString) out += "^^<" + datatype_ + ">";
      return out;
    }
  }
  return value_;
}

Triple make_triple(Term s, Term p, Term o) {
  if (s.is_literal()) throw std::invalid_argument("literal in subject position: " + s.to_string());
  if (!p.is_iri()) throw std::invalid_argument("predicate must be an IRI: " + p.to_string());
  return Triple{std::move(s), std::move(p), std::move(o)};
}

RdfGraph::RdfGraph() {
  for (const auto& [label, iri] : standard_prefixes()) prefixes_.emplace(label, iri);
}

bool RdfGraph::add(const Triple& t) {
  if (t.subject.is_literal() || !t.predicate.is_iri())
    throw std::invalid_argument("malformed triple");
  if (!spo_.insert(t).second) return false;
  pos_.insert(t);
  osp_.insert(t);
  return true;
}

bool RdfGraph::remove(const Triple& t) {
  if (spo_.erase(t) == 0) return false;
  pos_.erase(t);
  osp_.erase(t);
  return true;
}

std::vector<Triple> RdfGraph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                    const std::optional<Term>& o) const {
  std::vector<Triple> out;
  const Term lo = Term::min_sentinel();
  if (s && p && o) {
    Triple t{*s, *p, *o};
    if (spo_.count(t)) out.push_back(t);
  } else if (s) {
    for (auto it = spo_.lower_bound(Triple{*s, p ? *p : lo, lo});
         it != spo_.end() && it->subject == *s && (!p || it->predicate == *p); ++it)
      if (!o || it->object == *o) out.push_back(*it);
  } else if (p) {
    for (auto it = pos_.lower_bound(Triple{lo, *p, o ? *o : lo});
         it != pos_.end() && it->predicate == *p && (!o || it->object == *o); ++it)
      out.push_back(*it);
  } else if (o) {
    for (auto it = osp_.lower_bound(Triple{lo, lo, *o}); it != osp_.end() && it->object == *o;
         ++it)
      out.push_back(*it);
  } else {
    out.assign(spo_.begin(), spo_.end());
  }
  return out;
}

std::vector<Term> RdfGraph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(t.object);
  return out;
}

std::vector<Term> RdfGraph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o)) out.push_back(t.subject);
  return out;
}

void RdfGraph::add_prefix(const std::string& label, const std::string& ns) {
  auto [it, inserted] = prefixes_.emplace(label, ns);
  if (!inserted && it->second != ns)
    throw Error(ErrorCode::PrefixConflict,
                "prefix '" + label + ":' bound to <" + it->second + "> and <" + ns + ">");
}

void RdfGraph::set_prefix(const std::string& label, const std::string& ns) {
  prefixes_[label] = ns;
}

}  // namespace mtp2skill::rdf
