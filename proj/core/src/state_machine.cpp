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

#include "mtp2skill/state_machine.hpp"

#include <algorithm>
#include <set>

#include "mtp2skill/error.hpp"

namespace mtp2skill::vocab {

namespace {

bool power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidTemplate, why); }

}  // namespace

StateMachineTemplate::StateMachineTemplate(std::vector<StateSpec> states,
                                           std::vector<TransitionSpec> transitions,
                                           CommandTable commands)
    : states_(std::move(states)),
      transitions_(std::move(transitions)),
      commands_(std::move(commands)) {}

void StateMachineTemplate::validate() const {
  if (states_.empty()) invalid("template has no states");
  std::set<std::string> names;
  std::set<std::int64_t> values;
  for (const auto& s : states_) {
    if (s.name.empty()) invalid("state with empty name");
    if (!names.insert(s.name).second) invalid("duplicate state '" + s.name + "'");
    if (!power_of_two(s.value))
      invalid("state '" + s.name + "' value " + std::to_string(s.value) + " is not a power of two");
    if (!values.insert(s.value).second)
      invalid("state value " + std::to_string(s.value) + " used twice");
  }
  std::set<std::int64_t> commandValues;
  for (const auto& [name, v] : commands_) {
    if (!power_of_two(v))
      invalid("command '" + name + "' value " + std::to_string(v) + " is not a power of two");
    if (!commandValues.insert(v).second)
      invalid("command value " + std::to_string(v) + " used twice");
  }
  std::set<std::string> transitionNames;
  std::set<std::pair<std::string, std::string>> commandedFrom;
  std::set<std::string> automaticFrom;
  for (const auto& t : transitions_) {
    if (!transitionNames.insert(t.name).second) invalid("duplicate transition '" + t.name + "'");
    if (!names.count(t.from)) invalid("transition '" + t.name + "' leaves unknown state " + t.from);
    if (!names.count(t.to)) invalid("transition '" + t.name + "' enters unknown state " + t.to);
    if (t.command) {
      if (!commands_.count(*t.command))
        invalid("transition '" + t.name + "' uses unknown command " + *t.command);
      if (!commandedFrom.emplace(t.from, *t.command).second)
        invalid("two '" + *t.command + "' transitions leave " + t.from);
    } else if (!automaticFrom.insert(t.from).second) {
      invalid("two automatic transitions leave " + t.from);
    }
  }
  if (!names.count("Idle")) invalid("template has no Idle state");
  if (!commands_.count("Start")) invalid("template has no Start command");
  const auto* start = commanded("Idle", "Start");
  if (!start) invalid("no Start transition leaves Idle");
  std::string cur = start->to;
  for (std::size_t steps = 0; cur != "Execute"; ++steps) {
    const auto* next = automatic_from(cur);
    if (!next || steps > states_.size()) invalid("Execute is not reachable from Idle via Start");
    cur = next->to;
  }
}

bool StateMachineTemplate::has_state(std::string_view name) const noexcept {
  return std::any_of(states_.begin(), states_.end(), [&](const auto& s) { return s.name == name; });
}

std::int64_t StateMachineTemplate::command_value(std::string_view command) const {
  auto it = commands_.find(command);
  if (it == commands_.end())
    throw Error(ErrorCode::UnknownCommand, "'" + std::string(command) + "'");
  return it->second;
}

std::int64_t StateMachineTemplate::state_value(std::string_view state) const {
  for (const auto& s : states_)
    if (s.name == state) return s.value;
  throw Error(ErrorCode::UnknownState, "'" + std::string(state) + "'");
}

std::optional<std::string> StateMachineTemplate::state_for_value(std::int64_t value) const {
  for (const auto& s : states_)
    if (s.value == value) return s.name;
  return std::nullopt;
}

std::optional<std::string> StateMachineTemplate::command_for_value(std::int64_t value) const {
  for (const auto& [name, v] : commands_)
    if (v == value) return name;
  return std::nullopt;
}

const TransitionSpec* StateMachineTemplate::commanded(std::string_view state,
                                                      std::string_view command) const noexcept {
  for (const auto& t : transitions_)
    if (t.from == state && t.command && *t.command == command) return &t;
  return nullptr;
}

const TransitionSpec* StateMachineTemplate::automatic_from(std::string_view state) const noexcept {
  for (const auto& t : transitions_)
    if (t.from == state && t.automatic()) return &t;
  return nullptr;
}

std::vector<const TransitionSpec*> StateMachineTemplate::leaving(std::string_view state) const {
  std::vector<const TransitionSpec*> out;
  for (const auto& t : transitions_)
    if (t.from == state) out.push_back(&t);
  return out;
}

std::int64_t StateMachineTemplate::enabled_mask(std::string_view state) const {
  std::int64_t mask = 0;
  for (const auto& t : transitions_)
    if (t.from == state && t.command) {
      auto it = commands_.find(*t.command);
      if (it != commands_.end()) mask |= it->second;
    }
  return mask;
}

std::vector<TransitionSpec> name_transitions(
    const std::vector<std::tuple<std::string, std::string, std::optional<std::string>>>& raw) {
  std::map<std::string, int> sources;
  for (const auto& [from, to, cmd] : raw)
    if (cmd) ++sources[*cmd];
  std::vector<TransitionSpec> out;
  for (const auto& [from, to, cmd] : raw) {
    TransitionSpec t{{}, from, to, cmd};
    if (!cmd)
      t.name = from + "Done";
    else if (sources[*cmd] == 1)
      t.name = *cmd;
    else
      t.name = *cmd + "From" + from;
    out.push_back(std::move(t));
  }
  return out;
}

const CommandTable& default_command_table() {
  static const CommandTable kTable = {
      {"Reset", 2},   {"Start", 4},    {"Stop", 8},     {"Hold", 16},      {"Unhold", 32},
      {"Pause", 64},  {"Resume", 128}, {"Abort", 256},  {"Restart", 512},  {"Complete", 1024},
  };
  return kTable;
}

const std::vector<StateSpec>& default_state_table() {
  static const std::vector<StateSpec> kStates = {
      {"Idle", 16},         {"Starting", 8},       {"Execute", 64},     {"Completing", 65536},
      {"Completed", 131072}, {"Resetting", 32768}, {"Pausing", 8192},   {"Paused", 32},
      {"Resuming", 16384},  {"Holding", 1024},     {"Held", 2048},      {"Unholding", 4096},
      {"Stopping", 128},    {"Stopped", 4},        {"Aborting", 256},   {"Aborted", 512},
  };
  return kStates;
}

const StateMachineTemplate& default_state_machine_template() {
  static const StateMachineTemplate kTemplate = [] {
    using Raw = std::tuple<std::string, std::string, std::optional<std::string>>;
    const std::optional<std::string> automatic;
    std::vector<Raw> raw = {
        {"Idle", "Starting", "Start"},
        {"Starting", "Execute", automatic},
        {"Execute", "Completing", "Complete"},
        {"Completing", "Completed", automatic},
        {"Completed", "Resetting", "Reset"},
        {"Resetting", "Idle", automatic},
        {"Execute", "Holding", "Hold"},
        {"Holding", "Held", automatic},
        {"Held", "Unholding", "Unhold"},
        {"Unholding", "Execute", automatic},
        {"Execute", "Pausing", "Pause"},
        {"Pausing", "Paused", automatic},
        {"Paused", "Resuming", "Resume"},
        {"Resuming", "Execute", automatic},
        {"Execute", "Starting", "Restart"},
    };
    for (const char* s : {"Idle", "Starting", "Execute", "Completing", "Completed", "Paused",
                          "Pausing", "Resuming", "Held", "Holding", "Unholding"})
      raw.emplace_back(s, "Stopping", "Stop");
    raw.emplace_back("Stopping", "Stopped", automatic);
    raw.emplace_back("Stopped", "Resetting", "Reset");
    for (const auto& s : default_state_table())
      if (s.name != "Aborting" && s.name != "Aborted") raw.emplace_back(s.name, "Aborting", "Abort");
    raw.emplace_back("Aborting", "Aborted", automatic);
    raw.emplace_back("Aborted", "Resetting", "Reset");

    StateMachineTemplate t(default_state_table(), name_transitions(raw), default_command_table());
    t.validate();
    return t;
  }();
  return kTemplate;
}

std::int64_t command_value(std::string_view command) {
  return default_state_machine_template().command_value(command);
}

std::int64_t state_value(std::string_view state) {
  return default_state_machine_template().state_value(state);
}

}  // namespace mtp2skill::vocab
