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

#include <string_view>
#include <vector>

#include "mtp2skill/rdf_graph.hpp"

// T-Box terms of the capability/skill model referenced by the mapping.
// Terms marked "minted" have no name in the published design patterns and
// are defined here for the converter.
namespace mtp2skill::vocab {

using rdf::Term;

// rdf / rdfs
extern const Term type;
extern const Term label;

// capability / skill
extern const Term Capability;
extern const Term Skill;
extern const Term OpcUaSkill;
extern const Term OpcUaVariableSkill;
extern const Term SkillParameter;
extern const Term SkillCommand;
extern const Term CurrentStateOutput;
extern const Term SkillOutput;
extern const Term hasCapability;
extern const Term providesSkill;
extern const Term isExecutableViaOpcUaSkill;
extern const Term hasSkillParameter;
extern const Term hasSkillCommand;
extern const Term hasCurrentStateOutput;
extern const Term hasSkillOutput;
extern const Term behaviorConformsTo;           // minted
extern const Term hasDefaultValue;              // minted, VExt
extern const Term hasMinValue;                  // minted, VMin
extern const Term hasMaxValue;                  // minted, VMax
extern const Term hasUnit;                      // minted, VUnit
extern const Term isConfigurationParameter;     // minted
extern const Term SkillCommandVariable_TD;
extern const Term CurrentStateOutput_TD;

// structure / process
extern const Term Module;
extern const Term Sensor;
extern const Term Actuator;
extern const Term hasComponent;
extern const Term Process;

// state machine
extern const Term StateMachine;
extern const Term State;
extern const Term Transition;
extern const Term hasState;
extern const Term hasTransition;
extern const Term fromState;
extern const Term toState;

// DIN 61360 property pattern
extern const Term TypeDescription;
extern const Term InstanceDescription;
extern const Term DataElement;
extern const Term hasTypeDescription;
extern const Term hasInstanceDescription;
extern const Term hasDataElement;
extern const Term hasValue;
extern const Term expressionGoal;
extern const Term logicInterpretation;

// communication
extern const Term UaServer;
extern const Term UaNodeSet;
extern const Term UaVariable;
extern const Term endpointUrl;
extern const Term nodeNamespace;
extern const Term nodeIdentifier;
extern const Term hasNode;
extern const Term accessLevel;  // minted, OPCUAItem Access
extern const Term hasNodeSet;   // minted, server -> node set

// Every term above.
const std::vector<Term>& all_terms();
bool is_vocabulary_term(const Term& t);

enum class ExpressionGoal { Requirement, Assurance, ActualValue };
enum class LogicInterpretation { Equal, LessThan, GreaterThan };

std::string_view to_string(ExpressionGoal g) noexcept;
std::string_view to_string(LogicInterpretation l) noexcept;

}  // namespace mtp2skill::vocab
