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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/rdf_graph.hpp"
#include "mtp2skill/state_machine.hpp"

namespace mtp2skill::mapping {

// IRIs in rules may be written as CURIEs over the standard prefixes
// ("cap:SkillCommand") or as absolute IRIs.
//
// Templates expand the placeholders
//   {module}    name of the document's ModuleTypePackage element
//   {service}   nearest ancestor-or-self Service
//   {procedure} nearest ancestor-or-self ServiceProcedure
//   {name} {id} {parent}  the element itself / its parent
//   {joined}    name of the element reached through the RefID join
// IRI templates are sanitized ([^A-Za-z0-9_] -> '_') and appended to the
// base namespace; literal templates are used verbatim.

// LinkedObject join: RefID values selected from the focus element by
// `refPath` (a path ending in @Attr) are looked up anywhere in the
// document, restricted to `targetSucClass`.
struct RefJoin {
  std::string refPath;
  std::string targetSucClass;
  bool required = false;  // warn when refPath yields no RefID at all
};

struct ObjectSpec {
  enum class Kind { ConstantIri, Literal, TemplateLiteral, TemplateIri, RefIdJoin };

  Kind kind = Kind::ConstantIri;
  // ConstantIri: the IRI. Literal: dotted attribute name on the source
  // element. TemplateLiteral / TemplateIri / RefIdJoin: the template.
  std::string value;
  std::string datatype;  // Literal / TemplateLiteral; empty = xsd:string
  // TemplateIri: optional path from the focus element; the template is
  // expanded once per selected element, in that element's context.
  std::string select;
  RefJoin join;          // RefIdJoin
  std::string thenPath;  // RefIdJoin: must select something on the target

  static ObjectSpec constant(std::string iri);
  static ObjectSpec literal(std::string attribute, std::string datatype = {});
  static ObjectSpec template_literal(std::string tmpl, std::string datatype = {});
  static ObjectSpec template_iri(std::string tmpl, std::string select = {});
  static ObjectSpec ref_id_join(RefJoin join, std::string thenPath, std::string tmpl);
};

struct PredicateObjectMap {
  std::string predicate;
  ObjectSpec object;
  bool inverse = false;  // emit (object predicate subject)
};

struct MappingRule {
  std::string name;
  std::string iterator;
  // When set, attribute lookups and {joined} refer to the joined element.
  std::optional<RefJoin> source;
  // Skip focus elements whose source element lacks this attribute.
  std::optional<std::string> requireAttribute;
  std::string subjectTemplate;
  std::vector<std::string> classes;
  std::vector<PredicateObjectMap> predicateObjectMaps;
  // OPCUAItem named like this attribute on the source element becomes an
  // opcua:UaVariable attached to the subject and registered in the node set.
  std::optional<std::string> opcuaNodeAttribute;
  // Several focus elements intentionally map onto one subject.
  bool sharedSubject = false;
};

// Throws Error(InvalidRule) for unknown placeholders, bad paths or IRIs.
void validate_rule(const MappingRule& rule);

std::vector<MappingRule> builtin_rules();

// Classes reported in conversion stats, in output order (CURIEs).
const std::vector<std::string>& stats_classes();

struct ConversionResult {
  rdf::RdfGraph graph;
  std::map<std::string, std::size_t> stats;  // class CURIE -> typed subjects
  std::vector<std::string> warnings;
  std::string baseIri;
  std::string moduleName;
};

// Minted IRI for a module-local name: base namespace + sanitized local.
std::string mint_iri(std::string_view baseIri, std::string_view local);
std::string sanitize(std::string_view name);
// Namespace used for minted IRIs ("base#" unless base ends in '#' or '/').
std::string base_namespace(std::string_view baseIri);
// Turtle prefix label derived from the last path segment of the base.
std::string base_prefix_label(std::string_view baseIri);
// Throws Error(InvalidBaseIri).
void check_base_iri(std::string_view baseIri);
// Name of the first ModuleTypePackage element, else the source name stem,
// else "Module".
std::string module_name(const aml::AmlDocument& doc);

// Skill-side IRIs produced by the builtin rules.
std::string skill_iri(std::string_view baseIri, std::string_view module, std::string_view service,
                      std::string_view procedure);

ConversionResult apply_rules(const aml::AmlDocument& doc, const std::vector<MappingRule>& rules,
                             std::string_view baseIri);

// Adds the state machine of one skill. Throws Error(InvalidTemplate),
// Error(MissingCommandIndividual), Error(MissingStateOutput).
void synthesize_state_machine(rdf::RdfGraph& graph, const rdf::Term& skill,
                              const vocab::StateMachineTemplate& tmpl, const rdf::Term& command,
                              const rdf::Term& stateOutput);

// apply_rules followed by state-machine synthesis for every skill that
// has a command and a state output.
ConversionResult map_document(
    const aml::AmlDocument& doc, std::string_view baseIri,
    const vocab::StateMachineTemplate& tmpl = vocab::default_state_machine_template(),
    const std::vector<MappingRule>& rules = builtin_rules());

// Recomputes result.stats from the graph.
void refresh_stats(ConversionResult& result);

// Set union. Throws Error(BaseIriCollision) when two inputs define the same
// module individual and Error(PrefixConflict) on clashing prefix labels.
rdf::RdfGraph merge(const std::vector<rdf::RdfGraph>& graphs);

}  // namespace mtp2skill::mapping
