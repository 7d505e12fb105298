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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace mtp2skill::rdf {

namespace ns {
inline constexpr std::string_view kCap = "http://www.w3id.org/hsu-aut/cask#";
inline constexpr std::string_view kVdi3682 = "http://www.w3id.org/hsu-aut/VDI3682#";
inline constexpr std::string_view kVdi2206 = "http://www.w3id.org/hsu-aut/VDI2206#";
inline constexpr std::string_view kIsa88 = "http://www.w3id.org/hsu-aut/ISA88#";
inline constexpr std::string_view kDin61360 = "http://www.w3id.org/hsu-aut/DINEN61360#";
inline constexpr std::string_view kOpcUa = "http://www.w3id.org/hsu-aut/OpcUa#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

// The fixed prefix block, in output order.
const std::vector<std::pair<std::string, std::string>>& standard_prefixes();

bool is_absolute_iri(std::string_view iri) noexcept;

namespace xsd {
inline const std::string kString = std::string(ns::kXsd) + "string";
inline const std::string kInteger = std::string(ns::kXsd) + "integer";
inline const std::string kDouble = std::string(ns::kXsd) + "double";
inline const std::string kDecimal = std::string(ns::kXsd) + "decimal";
inline const std::string kBoolean = std::string(ns::kXsd) + "boolean";
inline const std::string kAnyUri = std::string(ns::kXsd) + "anyURI";
}  // namespace xsd

class Term {
 public:
  enum class Kind : std::uint8_t { Iri, BlankNode, Literal };

  // Throws std::invalid_argument for a relative IRI.
  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = xsd::kString);
  static Term integer(std::int64_t v);
  static Term boolean(bool v);

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_blank() const noexcept { return kind_ == Kind::BlankNode; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }

  // IRI string, blank node label, or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  // Empty unless literal.
  const std::string& datatype() const noexcept { return datatype_; }

  std::optional<std::int64_t> as_integer() const;

  // N-Triples style rendering, used in diagnostics and TSV output.
  std::string to_string() const;

  // Smallest possible term; only used as a range-query sentinel.
  static Term min_sentinel() { return Term(Kind::Iri, {}, {}); }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind k, std::string v, std::string dt)
      : kind_(k), value_(std::move(v)), datatype_(std::move(dt)) {}

  Kind kind_ = Kind::Iri;
  std::string value_;
  std::string datatype_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Validates the subject/predicate invariants; throws std::invalid_argument.
Triple make_triple(Term s, Term p, Term o);

class RdfGraph {
 public:
  RdfGraph();

  // Idempotent. Returns true if the triple was new.
  bool add(const Triple& t);
  bool add(Term s, Term p, Term o) { return add(make_triple(std::move(s), std::move(p), std::move(o))); }
  bool remove(const Triple& t);
  bool contains(const Triple& t) const { return spo_.count(t) != 0; }

  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  // SPO order.
  const std::set<Triple>& triples() const noexcept { return spo_; }

  // Unbound positions are nullopt.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;

  // Registers label -> namespace; throws Error(PrefixConflict) if the label
  // is already bound to a different namespace.
  void add_prefix(const std::string& label, const std::string& ns);
  // Overwrites an existing binding.
  void set_prefix(const std::string& label, const std::string& ns);
  const std::map<std::string, std::string>& prefixes() const noexcept { return prefixes_; }

  // Set equality of triples; prefixes are presentation only.
  friend bool operator==(const RdfGraph& a, const RdfGraph& b) { return a.spo_ == b.spo_; }

 private:
  struct PosLess {
    bool operator()(const Triple& a, const Triple& b) const {
      return std::tie(a.predicate, a.object, a.subject) < std::tie(b.predicate, b.object, b.subject);
    }
  };
  struct OspLess {
    bool operator()(const Triple& a, const Triple& b) const {
      return std::tie(a.object, a.subject, a.predicate) < std::tie(b.object, b.subject, b.predicate);
    }
  };

  std::set<Triple> spo_;
  std::set<Triple, PosLess> pos_;
  std::set<Triple, OspLess> osp_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace mtp2skill::rdf
