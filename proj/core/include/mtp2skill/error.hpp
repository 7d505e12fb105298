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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mtp2skill {

enum class ErrorCode {
  // aml-document
  MalformedXml,
  NotCaex,
  DuplicateId,
  NoAmlEntry,
  InvalidPath,
  RefNotFound,
  AmbiguousRef,
  IncompleteOpcUaItem,
  // rdf-graph
  TurtleSyntax,
  // vocab / templates
  UnknownCommand,
  UnknownState,
  InvalidTemplate,
  ConfigSyntax,
  // mapping
  InvalidBaseIri,
  InvalidRule,
  MissingCommandIndividual,
  MissingStateOutput,
  PrefixConflict,
  BaseIriCollision,
  // competency questions
  UnknownCq,
  MissingBinding,
  // simulator
  NoServerElement,
  UnknownNode,
  NotWritable,
  NonIntegerCommand,
  PortInUse,
  // executor
  SkillNotFound,
  IncompleteModel,
  UnknownTransition,
  ConnectFailed,
  WriteRejected,
  // plumbing
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;
// Inverse of to_string; nullopt for unknown names.
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

// Every failure raised by the library carries one of the codes above. The
// message is human-readable and already includes the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mtp2skill
