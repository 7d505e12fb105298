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

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mtp2skill/state_machine.hpp"

namespace mtp2skill {

// Line-oriented "key = value" configuration. '#' starts a comment, blank
// lines are ignored, later keys override earlier ones.
//
// Recognised keys:
//   base_iri, endpoint, port, rules (path to a JSON rule file),
//   warnings_exit_code, sim.dwell_ms
//   command.<Name> = <power of two>       add or replace a command value
//   state.<Name>   = <power of two>       add or replace a state value
//   transition.<Name> = <From> -> <To> on <Command>
//   transition.<Name> = <From> -> <To> auto
// Any transition.* key replaces the whole default transition relation.
class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "<config>");
  static Config load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  // Entries whose key starts with `prefix`, keyed by the remainder.
  std::map<std::string, std::string> with_prefix(std::string_view prefix) const;
  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }
  void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::string origin_;
};

// Applies command./state./transition. overrides on top of `base` and
// validates the result (Error(InvalidTemplate) / Error(ConfigSyntax)).
vocab::StateMachineTemplate build_template(
    const Config& config,
    const vocab::StateMachineTemplate& base = vocab::default_state_machine_template());

std::chrono::milliseconds dwell_time(const Config& config,
                                     std::chrono::milliseconds fallback = std::chrono::milliseconds(100));

}  // namespace mtp2skill
