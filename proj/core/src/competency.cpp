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


#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mtp2skill/aml_path.hpp"
#include "mtp2skill/competency.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/vocab.hpp"

namespace mtp2skill::cq {

using aml::Element;
using rdf::Term;

namespace {

// Reused pattern blocks.
const char* const kStateByValue = R"(
  ?skill rdf:type cap:OpcUaVariableSkill .
  ?skill cap:hasCurrentStateOutput ?output .
  ?output rdf:type cap:CurrentStateOutput .
  ?output din61360:hasDataElement ?de .
  ?de rdf:type din61360:DataElement .
  ?de din61360:hasTypeDescription cap:CurrentStateOutput_TD .
  ?de din61360:hasInstanceDescription ?id .
  ?id rdf:type din61360:InstanceDescription .
  ?id din61360:expressionGoal "Assurance" .
  ?id din61360:logicInterpretation "Equal" .
  ?id din61360:hasValue ?stateValue .
  ?state din61360:hasDataElement ?de .
  ?state rdf:type isa88:State .
  ?skill cap:behaviorConformsTo ?sm .
  ?sm rdf:type isa88:StateMachine .
  ?sm isa88:hasState ?state .
)";

CompetencyQuestion make(std::string id, std::string description, const std::string& patterns,
                        std::vector<std::string> projection, std::vector<std::string> slots) {
  CompetencyQuestion q;
  q.id = std::move(id);
  q.description = std::move(description);
  q.query.patterns = rdf::parse_patterns(patterns);
  q.query.projection = std::move(projection);
  q.slots = std::move(slots);
  return q;
}

std::vector<CompetencyQuestion> build() {
  std::vector<CompetencyQuestion> out;
  out.push_back(make("CQ1", "Which components belong to module ?module",
                     R"(?module rdf:type vdi2206:Module .
                        ?module vdi2206:hasComponent ?component .
                        ?component rdf:type ?class .
                        ?component rdfs:label ?label .)",
                     {"component", "class", "label"}, {"module"}));
  out.push_back(make("CQ2", "What is the current state of skill ?skill given StateCur ?stateValue",
                     std::string(kStateByValue) + " ?state rdfs:label ?stateName .",
                     {"state", "stateName"}, {"skill", "stateValue"}));
  out.push_back(make("CQ3", "Which capabilities does module ?module provide",
                     R"(?module rdf:type vdi2206:Module .
                        ?module cap:hasCapability ?capability .
                        ?capability rdf:type cap:Capability .
                        ?capability rdf:type vdi3682:Process .
                        ?capability rdfs:label ?label .)",
                     {"capability", "label"}, {"module"}));
  out.push_back(make("CQ4", "Which skills realize capability ?capability",
                     R"(?capability cap:isExecutableViaOpcUaSkill ?skill .
                        ?skill rdf:type cap:OpcUaVariableSkill .
                        ?module cap:providesSkill ?skill .
                        ?module rdf:type vdi2206:Module .
                        ?skill rdfs:label ?label .)",
                     {"skill", "label"}, {"capability"}));
  out.push_back(make("CQ5", "Which parameters with default, min, max and unit does skill ?skill have",
                     R"(?skill rdf:type cap:OpcUaVariableSkill .
                        ?skill cap:hasSkillParameter ?parameter .
                        ?parameter rdf:type cap:SkillParameter .
                        ?parameter rdfs:label ?label .
                        ?parameter cap:isConfigurationParameter ?configuration .
                        ?parameter cap:hasDefaultValue ?default .
                        ?parameter cap:hasMinValue ?min .
                        ?parameter cap:hasMaxValue ?max .
                        ?parameter cap:hasUnit ?unit .)",
                     {"parameter", "configuration", "default", "min", "max", "unit"}, {"skill"}));
  out.push_back(make("CQ6", "Which command value fires transition ?transition of skill ?skill",
                     R"(?skill rdf:type cap:OpcUaVariableSkill .
                        ?skill cap:behaviorConformsTo ?sm .
                        ?sm isa88:hasTransition ?t .
                        ?t rdf:type isa88:Transition .
                        ?t rdfs:label ?transition .
                        ?t din61360:hasDataElement ?de .
                        ?skill cap:hasSkillCommand ?command .
                        ?command rdf:type cap:SkillCommand .
                        ?command din61360:hasDataElement ?de .
                        ?de rdf:type din61360:DataElement .
                        ?de din61360:hasTypeDescription cap:SkillCommandVariable_TD .
                        ?de din61360:hasInstanceDescription ?id .
                        ?id rdf:type din61360:InstanceDescription .
                        ?id din61360:expressionGoal "Requirement" .
                        ?id din61360:logicInterpretation "Equal" .
                        ?id din61360:hasValue ?value .)",
                     {"value"}, {"skill", "transition"}));
  out.push_back(make("CQ7", "Which endpoint serves the command variable of skill ?skill",
                     R"(?skill cap:hasSkillCommand ?command .
                        ?command opcua:hasNode ?variable .
                        ?variable rdf:type opcua:UaVariable .
                        ?variable opcua:nodeNamespace ?namespace .
                        ?variable opcua:nodeIdentifier ?identifier .
                        ?variable opcua:accessLevel ?access .
                        ?nodeSet opcua:hasNode ?variable .
                        ?nodeSet rdf:type opcua:UaNodeSet .
                        ?server opcua:hasNodeSet ?nodeSet .
                        ?server rdf:type opcua:UaServer .
                        ?server opcua:endpointUrl ?endpoint .)",
                     {"endpoint", "namespace", "identifier"}, {"skill"}));
  out.push_back(make("CQ8", "Which outputs does skill ?skill have",
                     R"(?skill cap:hasSkillOutput ?output .
                        ?output rdf:type cap:SkillOutput .
                        ?output rdfs:label ?label .)",
                     {"output", "label"}, {"skill"}));
  out.push_back(make("CQ9", "Which transitions can be fired in the current state of skill ?skill given StateCur ?stateValue",
                     std::string(kStateByValue) + R"(
                        ?t isa88:fromState ?state .
                        ?t isa88:toState ?target .
                        ?t rdfs:label ?transition .
                        ?t din61360:hasDataElement ?cde .
                        ?cde din61360:hasInstanceDescription ?cid .
                        ?cid din61360:expressionGoal "Requirement" .
                        ?cid din61360:hasValue ?value .)",
                     {"transition", "value", "target"}, {"skill", "stateValue"}));
  return out;
}

std::string row_key(const std::string& prefix, const std::vector<Term>& row) {
  std::string s = prefix;
  for (const auto& t : row) s += " " + t.to_string();
  return s;
}

const Element* resolve(const aml::AmlDocument& doc, const Element& from, std::string_view suc) {
  auto ref = aml::attribute_value(from, "RefID");
  if (!ref) return nullptr;
  try {
    return &aml::resolve_ref_id(doc, *ref, suc);
  } catch (const Error&) {
    return nullptr;
  }
}

bool has_attr(const Element* el, std::string_view name) {
  return el && aml::find_attribute(*el, name) != nullptr;
}

bool numeric(const std::optional<std::string>& v) {
  if (!v || v->empty()) return false;
  char* end = nullptr;
  std::strtod(v->c_str(), &end);
  return end == v->c_str() + v->size();
}

// Expectations and actual answers for one CQ, accumulated over bindings.
struct Check {
  CqOutcome outcome;
  std::set<std::string> expected, actual;

  void expect(std::string row) { expected.insert(std::move(row)); }
  void observe(const std::string& prefix, const rdf::SolutionTable& t) {
    for (const auto& row : t.rows) actual.insert(row_key(prefix, row));
  }
  CqOutcome finish() {
    outcome.expected.assign(expected.begin(), expected.end());
    outcome.actual.assign(actual.begin(), actual.end());
    std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                        std::back_inserter(outcome.missing));
    std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                        std::back_inserter(outcome.unexpected));
    outcome.passed = outcome.missing.empty() && outcome.unexpected.empty();
    return outcome;
  }
};

std::string infer_base(const aml::AmlDocument& doc, const rdf::RdfGraph& graph) {
  std::string local = mapping::sanitize(mapping::module_name(doc));
  for (const Term& m : graph.subjects(vocab::type, vocab::Module)) {
    const auto& iri = m.value();
    if (iri.size() > local.size() && iri.compare(iri.size() - local.size(), local.size(), local) == 0)
      return iri.substr(0, iri.size() - local.size());
  }
  return "urn:unknown#";
}

}  // namespace

const std::vector<CompetencyQuestion>& list_cqs() {
  static const std::vector<CompetencyQuestion> kCqs = build();
  return kCqs;
}

const CompetencyQuestion& find_cq(std::string_view id) {
  for (const auto& q : list_cqs())
    if (q.id == id) return q;
  throw Error(ErrorCode::UnknownCq, "no competency question '" + std::string(id) + "'");
}

rdf::SolutionTable run_cq(const rdf::RdfGraph& graph, std::string_view id,
                          const rdf::Bindings& bindings) {
  const auto& q = find_cq(id);
  rdf::Bindings inputs;
  for (const auto& slot : q.slots) {
    auto it = bindings.find(slot);
    if (it == bindings.end())
      throw Error(ErrorCode::MissingBinding, q.id + " needs a binding for '" + slot + "'");
    inputs.insert(*it);
  }
  return rdf::query_bgp(graph, q.query, inputs);
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
}

ValidationReport validate(const aml::AmlDocument& doc, const mapping::ConversionResult& result,
                          const vocab::StateMachineTemplate& tmpl) {
  return validate(doc, result.graph, result.baseIri, tmpl);
}

ValidationReport validate(const aml::AmlDocument& doc, const rdf::RdfGraph& graph,
                          const std::string& baseIriIn, const vocab::StateMachineTemplate& tmpl) {
  const std::string base = baseIriIn.empty() ? infer_base(doc, graph) : baseIriIn;
  const std::string module = mapping::module_name(doc);
  auto iri = [&](const std::string& local) { return Term::iri(mapping::mint_iri(base, local)); };
  auto str = [](const std::string& s) { return Term::literal(s); };

  std::vector<Check> checks(9);
  for (std::size_t i = 0; i < 9; ++i) {
    checks[i].outcome.id = list_cqs()[i].id;
    checks[i].outcome.description = list_cqs()[i].description;
  }
  auto ask = [&](std::size_t n, const rdf::Bindings& b, const std::string& prefix) {
    checks[n - 1].observe(prefix, run_cq(graph, list_cqs()[n - 1].id, b));
  };

  std::vector<const Element*> modules, services, components;
  for (const Element* el : doc.elements()) {
    auto suc = el->suc_class();
    if (suc == "ModuleTypePackage") modules.push_back(el);
    if (suc == "Service") services.push_back(el);
    if (suc == "IndicatorElement" || suc == "ActiveElement") components.push_back(el);
  }
  bool hasServer = false;
  std::optional<std::string> endpoint;
  for (const Element* el : doc.elements())
    if (el->suc_class() == "OPCUAServer") {
      hasServer = true;
      if (!endpoint) endpoint = aml::attribute_value(*el, "Endpoint");
    }

  // CQ1, CQ3: per module.
  for (const Element* m : modules) {
    Term mt = iri(m->name);
    std::string p = mt.to_string();
    for (const Element* c : components) {
      Term cls = c->suc_class() == "IndicatorElement" ? vocab::Sensor : vocab::Actuator;
      checks[0].expect(row_key(p, {iri(module + "_" + c->name), cls, str(c->name)}));
    }
    for (const Element* s : services)
      checks[2].expect(row_key(p, {iri(module + "_" + s->name), str(s->name)}));
    ask(1, {{"module", mt}}, p);
    ask(3, {{"module", mt}}, p);
  }

  for (const Element* s : services) {
    Term cap = iri(module + "_" + s->name);
    std::string capKey = cap.to_string();
    const Element* control = resolve(doc, *s, "ServiceControl");
    bool synthesized = control && has_attr(control, "CommandExt") && has_attr(control, "StateCur");

    std::vector<const Element*> procedures, configuration;
    for (const Element* c : s->children) {
      if (c->suc_class() == "ServiceProcedure") procedures.push_back(c);
      if (c->suc_class() == "ConfigurationParameter") configuration.push_back(c);
    }
    for (const Element* proc : procedures) {
      std::string skillLocal = module + "_" + s->name + "_" + proc->name;
      checks[3].expect(row_key(capKey, {iri(skillLocal), str(proc->name)}));
    }
    ask(4, {{"capability", cap}}, capKey);

    for (const Element* proc : procedures) {
      std::string skillLocal = module + "_" + s->name + "_" + proc->name;
      Term skill = iri(skillLocal);
      std::string sk = skill.to_string();
      rdf::Bindings b{{"skill", skill}};

      // CQ5: parameters with a full value range.
      auto param = [&](const Element* p, const std::string& local, bool config) {
        const Element* op = resolve(doc, *p, "OperationElement");
        if (!op) return;
        auto v = [&](const char* a) { return aml::attribute_value(*op, a); };
        if (!numeric(v("VExt")) || !numeric(v("VMin")) || !numeric(v("VMax")) || !v("VUnit"))
          return;
        auto dbl = [](const std::string& x) { return Term::literal(x, rdf::xsd::kDouble); };
        checks[4].expect(row_key(sk, {iri(local), Term::boolean(config), dbl(*v("VExt")),
                                      dbl(*v("VMin")), dbl(*v("VMax")), str(*v("VUnit"))}));
      };
      for (const Element* c : proc->children)
        if (c->suc_class() == "ProcedureParameter" || c->suc_class() == "ProcessValueIn")
          param(c, skillLocal + "_" + c->name, false);
      for (const Element* c : configuration) param(c, module + "_" + s->name + "_" + c->name, true);
      ask(5, b, sk);

      // CQ8: outputs.
      if (control)
        for (const char* a : {"ProcedureCur", "ProcedureReq"})
          if (has_attr(control, a))
            checks[7].expect(row_key(sk, {iri(module + "_" + s->name + "_" + a),
                                          str(s->name + "." + a)}));
      for (const Element* c : proc->children) {
        if (c->suc_class() != "ProcessValueOut" && c->suc_class() != "ReportValue") continue;
        const Element* ind = resolve(doc, *c, "IndicatorElement");
        if (has_attr(ind, "V"))
          checks[7].expect(
              row_key(sk, {iri(module + "_" + ind->name + "_V"), str(ind->name + ".V")}));
      }
      ask(8, b, sk);

      if (!synthesized) continue;

      // CQ2, CQ9: per state value, plus one value outside the table.
      for (const auto& st : tmpl.states()) {
        Term v = Term::integer(st.value);
        std::string key = sk + " " + v.to_string();
        Term state = iri(skillLocal + "_" + mapping::sanitize(st.name) + "_State");
        checks[1].expect(row_key(key, {state, str(st.name)}));
        for (const auto* tr : tmpl.leaving(st.name)) {
          if (tr->automatic()) continue;
          checks[8].expect(row_key(
              key, {str(tr->label()), Term::integer(tmpl.command_value(*tr->command)),
                    iri(skillLocal + "_" + mapping::sanitize(tr->to) + "_State")}));
        }
        rdf::Bindings sb{{"skill", skill}, {"stateValue", v}};
        ask(2, sb, key);
        ask(9, sb, key);
      }
      {
        rdf::Bindings sb{{"skill", skill}, {"stateValue", Term::integer(0)}};
        std::string key = sk + " " + Term::integer(0).to_string();
        ask(2, sb, key);
        ask(9, sb, key);
      }

      // CQ6: one value per command label.
      std::set<std::string> labels;
      for (const auto& tr : tmpl.transitions())
        if (!tr.automatic()) labels.insert(tr.label());
      for (const auto& l : labels) {
        std::string key = sk + " " + str(l).to_string();
        checks[5].expect(row_key(key, {Term::integer(tmpl.command_value(l))}));
        ask(6, {{"skill", skill}, {"transition", str(l)}}, key);
      }

      // CQ7: endpoint and command node.
      if (hasServer && endpoint) {
        std::optional<aml::OpcUaNodeRef> node;
        try {
          node = aml::opcua_ref_of(*control, "CommandExt");
        } catch (const Error&) {
        }
        if (node)
          checks[6].expect(row_key(sk, {Term::literal(*endpoint, rdf::xsd::kAnyUri),
                                        str(node->ns), str(node->identifier)}));
      }
      ask(7, b, sk);
    }
  }

  ValidationReport report;
  for (auto& c : checks) report.outcomes.push_back(c.finish());
  return report;
}

std::string render_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& o : report.outcomes) {
    out << o.id << " " << (o.passed ? "PASS" : "FAIL") << "  expected " << o.expected.size()
        << ", actual " << o.actual.size() << "  " << o.description << "\n";
    for (const auto& m : o.missing) out << "    missing: " << m << "\n";
    for (const auto& u : o.unexpected) out << "    unexpected: " << u << "\n";
  }
  out << "overall: " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_json(const ValidationReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& o : report.outcomes)
    arr.push_back({{"id", o.id},
                   {"status", o.passed ? "pass" : "fail"},
                   {"description", o.description},
                   {"expected", o.expected},
                   {"actual", o.actual},
                   {"missing", o.missing},
                   {"unexpected", o.unexpected}});
  nlohmann::json doc{{"overall", report.passed() ? "pass" : "fail"}, {"cqs", arr}};
  return doc.dump(2) + "\n";
}

}  // namespace mtp2skill::cq
