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

#include "mtp2skill/error.hpp"

namespace mtp2skill {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::NotCaex: return "NotCaex";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NoAmlEntry: return "NoAmlEntry";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::RefNotFound: return "RefNotFound";
    case ErrorCode::AmbiguousRef: return "AmbiguousRef";
    case ErrorCode::IncompleteOpcUaItem: return "IncompleteOpcUaItem";
    case ErrorCode::TurtleSyntax: return "TurtleSyntax";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::ConfigSyntax: return "ConfigSyntax";
    case ErrorCode::InvalidBaseIri: return "InvalidBaseIri";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::MissingCommandIndividual: return "MissingCommandIndividual";
    case ErrorCode::MissingStateOutput: return "MissingStateOutput";
    case ErrorCode::PrefixConflict: return "PrefixConflict";
    case ErrorCode::BaseIriCollision: return "BaseIriCollision";
    case ErrorCode::UnknownCq: return "UnknownCq";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::NoServerElement: return "NoServerElement";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NotWritable: return "NotWritable";
    case ErrorCode::NonIntegerCommand: return "NonIntegerCommand";
    case ErrorCode::PortInUse: return "PortInUse";
    case ErrorCode::SkillNotFound: return "SkillNotFound";
    case ErrorCode::IncompleteModel: return "IncompleteModel";
    case ErrorCode::UnknownTransition: return "UnknownTransition";
    case ErrorCode::ConnectFailed: return "ConnectFailed";
    case ErrorCode::WriteRejected: return "WriteRejected";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(ErrorCode::Io); ++i) {
    auto code = static_cast<ErrorCode>(i);
    if (to_string(code) == name) return code;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace mtp2skill
