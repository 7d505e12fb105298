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

#include "mtp2skill/vocab.hpp"

#include <algorithm>
#include <string>

namespace mtp2skill::vocab {

namespace {
Term in(std::string_view ns, std::string_view local) {
  return Term::iri(std::string(ns) + std::string(local));
}
}  // namespace

const Term type = in(rdf::ns::kRdf, "type");
const Term label = in(rdf::ns::kRdfs, "label");

const Term Capability = in(rdf::ns::kCap, "Capability");
const Term Skill = in(rdf::ns::kCap, "Skill");
const Term OpcUaSkill = in(rdf::ns::kCap, "OpcUaSkill");
const Term OpcUaVariableSkill = in(rdf::ns::kCap, "OpcUaVariableSkill");
const Term SkillParameter = in(rdf::ns::kCap, "SkillParameter");
const Term SkillCommand = in(rdf::ns::kCap, "SkillCommand");
const Term CurrentStateOutput = in(rdf::ns::kCap, "CurrentStateOutput");
const Term SkillOutput = in(rdf::ns::kCap, "SkillOutput");
const Term hasCapability = in(rdf::ns::kCap, "hasCapability");
const Term providesSkill = in(rdf::ns::kCap, "providesSkill");
const Term isExecutableViaOpcUaSkill = in(rdf::ns::kCap, "isExecutableViaOpcUaSkill");
const Term hasSkillParameter = in(rdf::ns::kCap, "hasSkillParameter");
const Term hasSkillCommand = in(rdf::ns::kCap, "hasSkillCommand");
const Term hasCurrentStateOutput = in(rdf::ns::kCap, "hasCurrentStateOutput");
const Term hasSkillOutput = in(rdf::ns::kCap, "hasSkillOutput");
const Term behaviorConformsTo = in(rdf::ns::kCap, "behaviorConformsTo");
const Term hasDefaultValue = in(rdf::ns::kCap, "hasDefaultValue");
const Term hasMinValue = in(rdf::ns::kCap, "hasMinValue");
const Term hasMaxValue = in(rdf::ns::kCap, "hasMaxValue");
const Term hasUnit = in(rdf::ns::kCap, "hasUnit");
const Term isConfigurationParameter = in(rdf::ns::kCap, "isConfigurationParameter");
const Term SkillCommandVariable_TD = in(rdf::ns::kCap, "SkillCommandVariable_TD");
const Term CurrentStateOutput_TD = in(rdf::ns::kCap, "CurrentStateOutput_TD");

const Term Module = in(rdf::ns::kVdi2206, "Module");
const Term Sensor = in(rdf::ns::kVdi2206, "Sensor");
const Term Actuator = in(rdf::ns::kVdi2206, "Actuator");
const Term hasComponent = in(rdf::ns::kVdi2206, "hasComponent");
const Term Process = in(rdf::ns::kVdi3682, "Process");

const Term StateMachine = in(rdf::ns::kIsa88, "StateMachine");
const Term State = in(rdf::ns::kIsa88, "State");
const Term Transition = in(rdf::ns::kIsa88, "Transition");
const Term hasState = in(rdf::ns::kIsa88, "hasState");
const Term hasTransition = in(rdf::ns::kIsa88, "hasTransition");
const Term fromState = in(rdf::ns::kIsa88, "fromState");
const Term toState = in(rdf::ns::kIsa88, "toState");

const Term TypeDescription = in(rdf::ns::kDin61360, "TypeDescription");
const Term InstanceDescription = in(rdf::ns::kDin61360, "InstanceDescription");
const Term DataElement = in(rdf::ns::kDin61360, "DataElement");
const Term hasTypeDescription = in(rdf::ns::kDin61360, "hasTypeDescription");
const Term hasInstanceDescription = in(rdf::ns::kDin61360, "hasInstanceDescription");
const Term hasDataElement = in(rdf::ns::kDin61360, "hasDataElement");
const Term hasValue = in(rdf::ns::kDin61360, "hasValue");
const Term expressionGoal = in(rdf::ns::kDin61360, "expressionGoal");
const Term logicInterpretation = in(rdf::ns::kDin61360, "logicInterpretation");

const Term UaServer = in(rdf::ns::kOpcUa, "UaServer");
const Term UaNodeSet = in(rdf::ns::kOpcUa, "UaNodeSet");
const Term UaVariable = in(rdf::ns::kOpcUa, "UaVariable");
const Term endpointUrl = in(rdf::ns::kOpcUa, "endpointUrl");
const Term nodeNamespace = in(rdf::ns::kOpcUa, "nodeNamespace");
const Term nodeIdentifier = in(rdf::ns::kOpcUa, "nodeIdentifier");
const Term hasNode = in(rdf::ns::kOpcUa, "hasNode");
const Term accessLevel = in(rdf::ns::kOpcUa, "accessLevel");
const Term hasNodeSet = in(rdf::ns::kOpcUa, "hasNodeSet");

const std::vector<Term>& all_terms() {
  static const std::vector<Term> kAll = [] {
    std::vector<Term> v = {
        type, label, Capability, Skill, OpcUaSkill, OpcUaVariableSkill, SkillParameter,
        SkillCommand, CurrentStateOutput, SkillOutput, hasCapability, providesSkill,
        isExecutableViaOpcUaSkill, hasSkillParameter, hasSkillCommand, hasCurrentStateOutput,
        hasSkillOutput, behaviorConformsTo, hasDefaultValue, hasMinValue, hasMaxValue, hasUnit,
        isConfigurationParameter, SkillCommandVariable_TD, CurrentStateOutput_TD, Module, Sensor,
        Actuator, hasComponent, Process, StateMachine, State, Transition, hasState, hasTransition,
        fromState, toState, TypeDescription, InstanceDescription, DataElement, hasTypeDescription,
        hasInstanceDescription, hasDataElement, hasValue, expressionGoal, logicInterpretation,
        UaServer, UaNodeSet, UaVariable, endpointUrl, nodeNamespace, nodeIdentifier, hasNode,
        accessLevel, hasNodeSet};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return kAll;
}

bool is_vocabulary_term(const Term& t) {
  const auto& all = all_terms();
  return std::binary_search(all.begin(), all.end(), t);
}

std::string_view to_string(ExpressionGoal g) noexcept {
  switch (g) {
    case ExpressionGoal::Requirement: return "Requirement";
    case ExpressionGoal::Assurance: return "Assurance";
    case ExpressionGoal::ActualValue: return "ActualValue";
  }
  return "";
}

std::string_view to_string(LogicInterpretation l) noexcept {
  switch (l) {
    case LogicInterpretation::Equal: return "Equal";
    case LogicInterpretation::LessThan: return "LessThan";
    case LogicInterpretation::GreaterThan: return "GreaterThan";
  }
  return "";
}

}  // namespace mtp2skill::vocab
