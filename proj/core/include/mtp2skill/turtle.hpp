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

#include <string>
#include <string_view>

#include "mtp2skill/rdf_graph.hpp"

namespace mtp2skill::rdf {

// Deterministic Turtle: the fixed standard prefix block followed by the
// graph's other prefixes (sorted by label), then subjects, predicates and
// objects each in sorted order. Only IRIs whose local part is a plain
// [A-Za-z0-9_-] name are compacted.
std::string serialize_turtle(const RdfGraph& graph);

// Parses the Turtle subset produced by serialize_turtle (plus comments,
// blank node labels, numeric and boolean shorthands). Throws
// Error(TurtleSyntax) with a line number.
RdfGraph parse_turtle(std::string_view text);

}  // namespace mtp2skill::rdf
