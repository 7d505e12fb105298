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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mtp2skill/mapping.hpp"

namespace mtp2skill::mapping {

// JSON rule files. Top level is {"rules": [ ... ]}; each rule mirrors
// MappingRule field by field, objects are {"kind": "constant" | "literal" |
// "template-literal" | "template-iri" | "ref-id-join", ...}.
// Throws Error(InvalidRule) for structural problems.
std::vector<MappingRule> parse_rules(std::string_view json);
std::vector<MappingRule> load_rules(const std::filesystem::path& path);
std::string dump_rules(const std::vector<MappingRule>& rules);

}  // namespace mtp2skill::mapping
