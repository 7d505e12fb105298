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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/rdf_graph.hpp"
#include "mtp2skill/sim_server.hpp"
#include "mtp2skill/wire_client.hpp"

namespace mtp2skill::exec {

struct SkillBinding {
  rdf::Term skill = rdf::Term::min_sentinel();
  std::string endpointUrl;
  aml::OpcUaNodeRef commandNode;
  aml::OpcUaNodeRef stateNode;
  std::map<std::string, std::int64_t> transitionValues;  // transition label -> command value
  std::map<std::int64_t, rdf::Term> stateForValue;
  std::map<std::int64_t, std::string> stateNameForValue;
  std::map<std::string, aml::OpcUaNodeRef> parameterNodes;  // parameter label -> node

  friend bool operator==(const SkillBinding&, const SkillBinding&) = default;
};

// Throws Error(SkillNotFound) or Error(IncompleteModel).
SkillBinding resolve_skill(const rdf::RdfGraph& graph, const std::string& skillIri);

// State labels visited when `transition` fires in `fromState`, following
// automatic transitions until a state without one. Empty when the
// transition is not enabled in `fromState`.
std::vector<std::string> expected_path(const rdf::RdfGraph& graph, const SkillBinding& binding,
                                       const std::string& fromState, const std::string& transition);

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

// Accepts "opc.tcp://host:port/path", "tcp://host:port" and "host:port".
// Throws Error(ConnectFailed) when no port can be found.
Endpoint parse_endpoint(const std::string& text);

struct ObservedEvent {
  std::uint64_t seq = 0;
  sim::Value value;
  std::optional<std::string> state;  // state label, nullopt when unknown
};

enum class AwaitStatus { Reached, Timeout, Unexpected };

struct AwaitOutcome {
  AwaitStatus status = AwaitStatus::Timeout;
  std::optional<sim::Value> value;         // offending value for Unexpected
  std::optional<std::string> lastState;    // last known state label
};

std::string_view to_string(AwaitStatus s) noexcept;

class ExecutionHandle {
 public:
  ~ExecutionHandle();
  ExecutionHandle(const ExecutionHandle&) = delete;
  ExecutionHandle& operator=(const ExecutionHandle&) = delete;

  const SkillBinding& binding() const noexcept;
  std::vector<ObservedEvent> events() const;
  std::optional<sim::Value> last_observed() const;

  // Consumes events from an internal cursor; repeated awaits continue where
  // the previous one stopped. Throws Error(UnknownState).
  AwaitOutcome await_state(const std::string& state, std::chrono::milliseconds timeout);

  sim::WireClient& connection() noexcept;
  void close();

 private:
  friend std::unique_ptr<ExecutionHandle> invoke(const SkillBinding&, const std::string&,
                                                 const std::map<std::string, sim::Value>&,
                                                 const std::optional<std::string>&);
  struct Impl;
  explicit ExecutionHandle(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Connect, write parameters, subscribe to the state node, then write the
// command value. Throws Error(UnknownTransition / ConnectFailed /
// WriteRejected / IncompleteModel).
std::unique_ptr<ExecutionHandle> invoke(const SkillBinding& binding, const std::string& transition,
                                        const std::map<std::string, sim::Value>& params = {},
                                        const std::optional<std::string>& endpointOverride = {});

struct CurrentState {
  std::optional<rdf::Term> state;  // nullopt: value outside the state table
  sim::Value value;
};

CurrentState current_state(const SkillBinding& binding, sim::WireClient& connection);

}  // namespace mtp2skill::exec
