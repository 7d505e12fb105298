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

#include <regex>

#include "mtp2skill/aml_path.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/rdf_graph.hpp"

namespace mtp2skill::mapping {

ObjectSpec ObjectSpec::constant(std::string iri) {
  ObjectSpec o;
  o.kind = Kind::ConstantIri;
  o.value = std::move(iri);
  return o;
}

ObjectSpec ObjectSpec::literal(std::string attribute, std::string datatype) {
  ObjectSpec o;
  o.kind = Kind::Literal;
  o.value = std::move(attribute);
  o.datatype = std::move(datatype);
  return o;
}

ObjectSpec ObjectSpec::template_literal(std::string tmpl, std::string datatype) {
  ObjectSpec o;
  o.kind = Kind::TemplateLiteral;
  o.value = std::move(tmpl);
  o.datatype = std::move(datatype);
  return o;
}

ObjectSpec ObjectSpec::template_iri(std::string tmpl, std::string select) {
  ObjectSpec o;
  o.kind = Kind::TemplateIri;
  o.value = std::move(tmpl);
  o.select = std::move(select);
  return o;
}

ObjectSpec ObjectSpec::ref_id_join(RefJoin join, std::string thenPath, std::string tmpl) {
  ObjectSpec o;
  o.kind = Kind::RefIdJoin;
  o.join = std::move(join);
  o.thenPath = std::move(thenPath);
  o.value = std::move(tmpl);
  return o;
}

const std::vector<std::string>& stats_classes() {
  static const std::vector<std::string> kClasses = {
      "vdi2206:Module",        "vdi3682:Process",       "cap:Capability",
      "cap:OpcUaVariableSkill", "vdi2206:Sensor",       "vdi2206:Actuator",
      "opcua:UaServer",        "opcua:UaNodeSet",       "opcua:UaVariable",
      "cap:SkillParameter",    "cap:SkillCommand",      "cap:CurrentStateOutput",
      "cap:SkillOutput",       "isa88:StateMachine",    "isa88:State",
      "isa88:Transition",      "din61360:DataElement",  "din61360:InstanceDescription",
  };
  return kClasses;
}

namespace {

void check_template(const MappingRule& rule, const std::string& tmpl, bool allowJoined) {
  static const std::regex kPlaceholder(R"(\{([^}]*)\})");
  for (auto it = std::sregex_iterator(tmpl.begin(), tmpl.end(), kPlaceholder);
       it != std::sregex_iterator(); ++it) {
    auto name = (*it)[1].str();
    bool known = name == "module" || name == "service" || name == "procedure" || name == "name" ||
                 name == "id" || name == "parent" || (allowJoined && name == "joined");
    if (!known)
      throw Error(ErrorCode::InvalidRule,
                  "rule '" + rule.name + "': unknown placeholder {" + name + "} in '" + tmpl + "'");
  }
}

void check_path(const MappingRule& rule, const std::string& path, bool values) {
  try {
    auto p = aml::PathExpr::parse(path);
    if (values && !p.yields_values())
      throw Error(ErrorCode::InvalidRule,
                  "rule '" + rule.name + "': path '" + path + "' must end in @Attribute");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidRule) throw;
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': " + e.what());
  }
}

void check_iri(const MappingRule& rule, const std::string& iri) {
  auto colon = iri.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': '" + iri + "' is not an IRI");
  if (iri.find("://") != std::string::npos) return;
  auto prefix = iri.substr(0, colon);
  for (const auto& [label, ns] : rdf::standard_prefixes())
    if (label == prefix) return;
  throw Error(ErrorCode::InvalidRule,
              "rule '" + rule.name + "': unknown prefix in '" + iri + "'");
}

void check_join(const MappingRule& rule, const RefJoin& join) {
  check_path(rule, join.refPath, true);
  if (join.targetSucClass.empty())
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': join without target class");
}

}  // namespace

void validate_rule(const MappingRule& rule) {
  if (rule.name.empty()) throw Error(ErrorCode::InvalidRule, "rule without name");
  check_path(rule, rule.iterator, false);
  if (aml::PathExpr::parse(rule.iterator).yields_values())
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': iterator selects attributes");
  if (rule.source) check_join(rule, *rule.source);
  if (rule.subjectTemplate.empty())
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': empty subject template");
  check_template(rule, rule.subjectTemplate, rule.source.has_value());
  if (rule.classes.empty())
    throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': no class");
  for (const auto& c : rule.classes) check_iri(rule, c);
  for (const auto& pom : rule.predicateObjectMaps) {
    check_iri(rule, pom.predicate);
    const auto& o = pom.object;
    switch (o.kind) {
      case ObjectSpec::Kind::ConstantIri:
        check_iri(rule, o.value);
        break;
      case ObjectSpec::Kind::Literal:
        if (o.value.empty())
          throw Error(ErrorCode::InvalidRule, "rule '" + rule.name + "': literal without attribute");
        break;
      case ObjectSpec::Kind::TemplateLiteral:
        check_template(rule, o.value, rule.source.has_value());
        break;
      case ObjectSpec::Kind::TemplateIri:
        check_template(rule, o.value, rule.source.has_value() && o.select.empty());
        if (!o.select.empty()) check_path(rule, o.select, false);
        break;
      case ObjectSpec::Kind::RefIdJoin:
        check_join(rule, o.join);
        if (!o.thenPath.empty()) check_path(rule, o.thenPath, false);
        check_template(rule, o.value, true);
        break;
    }
    if (!o.datatype.empty()) check_iri(rule, o.datatype);
    if (pom.inverse && (o.kind == ObjectSpec::Kind::Literal ||
                        o.kind == ObjectSpec::Kind::TemplateLiteral))
      throw Error(ErrorCode::InvalidRule,
                  "rule '" + rule.name + "': inverse map needs an IRI object");
  }
}

std::vector<MappingRule> builtin_rules() {
  const std::string kModules = "//IE[suc='ModuleTypePackage']";
  const std::string kServices = "//IE[suc='Service']";
  const std::string kProcedures = kServices + "/IE[suc='ServiceProcedure']";
  const RefJoin kControl{"parent::/@RefID", "ServiceControl", true};
  const RefJoin kOwnControl{"@RefID", "ServiceControl", true};
  const RefJoin kOperation{"@RefID", "OperationElement", true};

  using O = ObjectSpec;
  std::vector<MappingRule> rules;

  rules.push_back({"module", kModules, std::nullopt, std::nullopt, "{name}", {"vdi2206:Module"},
                   {{"rdfs:label", O::template_literal("{name}")}}, std::nullopt, false});

  // Dual typing: one individual is both the process and the capability.
  rules.push_back({"service",
                   kServices,
                   std::nullopt,
                   std::nullopt,
                   "{module}_{service}",
                   {"vdi3682:Process", "cap:Capability"},
                   {{"rdfs:label", O::template_literal("{service}")},
                    {"cap:hasCapability", O::template_iri("{name}", kModules), true}},
                   std::nullopt,
                   false});

  // Mirrors the procedure-to-skill rule: iterate procedures below services,
  // follow the parent service's RefID to its ServiceControl and name the
  // control individuals after the service.
  auto control_link = [&](const char* predicate, const char* attribute) {
    return PredicateObjectMap{predicate,
                              O::ref_id_join(kControl, std::string("@") + attribute,
                                             std::string("{module}_{service}_") + attribute),
                              false};
  };
  rules.push_back({"skill",
                   kProcedures,
                   std::nullopt,
                   std::nullopt,
                   "{module}_{service}_{procedure}",
                   {"cap:OpcUaVariableSkill"},
                   {{"rdfs:label", O::template_literal("{procedure}")},
                    {"cap:isExecutableViaOpcUaSkill", O::template_iri("{module}_{service}", "parent::"),
                     true},
                    {"cap:providesSkill", O::template_iri("{name}", kModules), true},
                    control_link("cap:hasSkillCommand", "CommandExt"),
                    control_link("cap:hasCurrentStateOutput", "StateCur"),
                    control_link("cap:hasSkillParameter", "ProcedureExt"),
                    control_link("cap:hasSkillOutput", "ProcedureCur"),
                    control_link("cap:hasSkillOutput", "ProcedureReq"),
                    {"cap:hasSkillOutput",
                     O::ref_id_join({"IE[suc='ProcessValueOut']/@RefID", "IndicatorElement", false},
                                    "@V", "{module}_{joined}_V"),
                     false},
                    {"cap:hasSkillOutput",
                     O::ref_id_join({"IE[suc='ReportValue']/@RefID", "IndicatorElement", false}, "@V",
                                    "{module}_{joined}_V"),
                     false}},
                   std::nullopt,
                   false});

  auto control_attribute = [&](const char* attribute, const char* cls,
                               std::vector<PredicateObjectMap> extra) {
    MappingRule r{std::string("control-") + attribute,
                  kServices,
                  kOwnControl,
                  std::string(attribute),
                  std::string("{module}_{service}_") + attribute,
                  {cls},
                  {{"rdfs:label", O::template_literal(std::string("{service}.") + attribute)}},
                  std::string(attribute),
                  false};
    for (auto& pom : extra) r.predicateObjectMaps.push_back(std::move(pom));
    return r;
  };
  rules.push_back(control_attribute("CommandExt", "cap:SkillCommand", {}));
  rules.push_back(control_attribute("StateCur", "cap:CurrentStateOutput", {}));
  rules.push_back(control_attribute(
      "ProcedureExt", "cap:SkillParameter",
      {{"cap:isConfigurationParameter", O::template_literal("false", "xsd:boolean")}}));
  rules.push_back(control_attribute("ProcedureCur", "cap:SkillOutput", {}));
  rules.push_back(control_attribute("ProcedureReq", "cap:SkillOutput", {}));

  auto parameter = [&](const std::string& name, const std::string& iterator,
                       const std::string& subject, bool configuration, PredicateObjectMap link) {
    return MappingRule{
        name,
        iterator,
        kOperation,
        std::nullopt,
        subject,
        {"cap:SkillParameter"},
        {{"rdfs:label", O::template_literal("{name}")},
         {"cap:hasDefaultValue", O::literal("VExt", "xsd:double")},
         {"cap:hasMinValue", O::literal("VMin", "xsd:double")},
         {"cap:hasMaxValue", O::literal("VMax", "xsd:double")},
         {"cap:hasUnit", O::literal("VUnit")},
         {"cap:isConfigurationParameter",
          O::template_literal(configuration ? "true" : "false", "xsd:boolean")},
         std::move(link)},
        std::string("VExt"),
        false};
  };
  rules.push_back(parameter(
      "procedure-parameter", kProcedures + "/IE[suc='ProcedureParameter']",
      "{module}_{service}_{procedure}_{name}", false,
      {"cap:hasSkillParameter", O::template_iri("{module}_{service}_{procedure}"), true}));
  rules.push_back(parameter(
      "process-value-in", kProcedures + "/IE[suc='ProcessValueIn']",
      "{module}_{service}_{procedure}_{name}", false,
      {"cap:hasSkillParameter", O::template_iri("{module}_{service}_{procedure}"), true}));
  // Configuration parameters belong to the service and parameterize every
  // procedure below it.
  rules.push_back(parameter("configuration-parameter", kServices + "/IE[suc='ConfigurationParameter']",
                            "{module}_{service}_{name}", true,
                            {"cap:hasSkillParameter",
                             O::template_iri("{module}_{service}_{procedure}",
                                             "parent::/IE[suc='ServiceProcedure']"),
                             true}));

  auto component = [&](const char* name, const char* suc, const char* cls,
                       std::optional<std::string> node) {
    return MappingRule{name,
                       std::string("//IE[suc='") + suc + "']",
                       std::nullopt,
                       std::nullopt,
                       "{module}_{name}",
                       {cls},
                       {{"rdfs:label", O::template_literal("{name}")},
                        {"vdi2206:hasComponent", O::template_iri("{name}", kModules), true}},
                       std::move(node),
                       false};
  };
  // Sensor values become outputs below; actuator values stay on the actuator.
  rules.push_back(component("sensor", "IndicatorElement", "vdi2206:Sensor", std::nullopt));
  rules.push_back(component("actuator", "ActiveElement", "vdi2206:Actuator", std::string("V")));

  rules.push_back({"indicator-value",
                   "//IE[suc='IndicatorElement']",
                   std::nullopt,
                   std::string("V"),
                   "{module}_{name}_V",
                   {"cap:SkillOutput"},
                   {{"rdfs:label", O::template_literal("{name}.V")}},
                   std::string("V"),
                   false});

  rules.push_back({"opcua-server",
                   "//IE[suc='OPCUAServer']",
                   std::nullopt,
                   std::nullopt,
                   "{module}_{name}",
                   {"opcua:UaServer"},
                   {{"rdfs:label", O::template_literal("{name}")},
                    {"opcua:endpointUrl", O::literal("Endpoint", "xsd:anyURI")},
                    {"opcua:hasNodeSet", O::template_iri("{module}_NodeSet")}},
                   std::nullopt,
                   false});
  rules.push_back({"opcua-nodeset", "//IE[suc='OPCUAServer']", std::nullopt, std::nullopt,
                   "{module}_NodeSet", {"opcua:UaNodeSet"}, {}, std::nullopt, true});

  for (const auto& r : rules) validate_rule(r);
  return rules;
}

}  // namespace mtp2skill::mapping
