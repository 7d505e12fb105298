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
#include <vector>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/bgp.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/state_machine.hpp"

namespace mtp2skill::cq {

struct CompetencyQuestion {
  std::string id;  // "CQ1".."CQ9"
  std::string description;
  rdf::BgpQuery query;
  std::vector<std::string> slots;  // input bindings the caller must supply
};

const std::vector<CompetencyQuestion>& list_cqs();

// Throws Error(UnknownCq).
const CompetencyQuestion& find_cq(std::string_view id);

// Throws Error(UnknownCq) or Error(MissingBinding).
rdf::SolutionTable run_cq(const rdf::RdfGraph& graph, std::string_view id,
                          const rdf::Bindings& bindings);

struct CqOutcome {
  std::string id;
  std::string description;
  bool passed = false;
  // Rows rendered as space separated N-Triples terms, prefixed by the
  // binding they were asked under. Sorted.
  std::vector<std::string> expected;
  std::vector<std::string> actual;
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
};

struct ValidationReport {
  std::vector<CqOutcome> outcomes;
  bool passed() const noexcept;
};

ValidationReport validate(
    const aml::AmlDocument& doc, const mapping::ConversionResult& result,
    const vocab::StateMachineTemplate& tmpl = vocab::default_state_machine_template());

// Graph-only variant for a graph read back from disk.
ValidationReport validate(
    const aml::AmlDocument& doc, const rdf::RdfGraph& graph, const std::string& baseIri,
    const vocab::StateMachineTemplate& tmpl = vocab::default_state_machine_template());

std::string render_text(const ValidationReport& report);
std::string render_json(const ValidationReport& report);

}  // namespace mtp2skill::cq
