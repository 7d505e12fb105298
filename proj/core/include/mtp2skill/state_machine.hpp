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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace mtp2skill::vocab {

// Command name -> bit value written to CommandExt.
using CommandTable = std::map<std::string, std::int64_t, std::less<>>;

struct StateSpec {
  std::string name;
  std::int64_t value = 0;  // StateCur encoding
};

struct TransitionSpec {
  std::string name;  // unique within a template
  std::string from;
  std::string to;
  std::optional<std::string> command;  // nullopt: automatic (state complete)

  bool automatic() const noexcept { return !command.has_value(); }
  // Command name, or "SC" for automatic transitions.
  std::string label() const { return command.value_or("SC"); }
};

// The ISA-88 style state machine attached to every skill. The MTP file
// does not carry one, so it comes from here (or a config override).
class StateMachineTemplate {
 public:
  StateMachineTemplate() = default;
  StateMachineTemplate(std::vector<StateSpec> states, std::vector<TransitionSpec> transitions,
                       CommandTable commands);

  const std::vector<StateSpec>& states() const noexcept { return states_; }
  const std::vector<TransitionSpec>& transitions() const noexcept { return transitions_; }
  const CommandTable& commands() const noexcept { return commands_; }

  // Throws Error(InvalidTemplate) naming the first violated invariant.
  void validate() const;

  bool has_state(std::string_view name) const noexcept;
  // Throw Error(UnknownCommand / UnknownState).
  std::int64_t command_value(std::string_view command) const;
  std::int64_t state_value(std::string_view state) const;
  std::optional<std::string> state_for_value(std::int64_t value) const;
  std::optional<std::string> command_for_value(std::int64_t value) const;

  const TransitionSpec* commanded(std::string_view state, std::string_view command) const noexcept;
  const TransitionSpec* automatic_from(std::string_view state) const noexcept;
  std::vector<const TransitionSpec*> leaving(std::string_view state) const;
  // Bitwise OR of the values of commands enabled in `state`.
  std::int64_t enabled_mask(std::string_view state) const;

 private:
  std::vector<StateSpec> states_;
  std::vector<TransitionSpec> transitions_;
  CommandTable commands_;
};

// Builds transitions from (from, to, command) triples and names them:
// a command with a single source state gives its name to the transition,
// otherwise "{Command}From{State}"; automatic ones become "{State}Done".
std::vector<TransitionSpec> name_transitions(
    const std::vector<std::tuple<std::string, std::string, std::optional<std::string>>>& raw);

const CommandTable& default_command_table();
const std::vector<StateSpec>& default_state_table();
const StateMachineTemplate& default_state_machine_template();

// Lookups against the default tables.
std::int64_t command_value(std::string_view command);
std::int64_t state_value(std::string_view state);

}  // namespace mtp2skill::vocab
