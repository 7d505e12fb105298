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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/state_machine.hpp"

namespace mtp2skill::sim {

using Value = std::variant<std::int64_t, double>;
using Duration = std::chrono::milliseconds;

std::string to_string(const Value& v);

struct NodeKey {
  std::string ns;
  std::string id;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct SimVariable {
  aml::OpcUaNodeRef ref;
  Value value = std::int64_t{0};
  bool writable = false;
  std::string attribute;  // attribute the OPCUAItem binds, e.g. "StateCur"
  std::string owner;      // name of the element carrying the item
  std::string service;    // owning service for ServiceControl variables
};

struct ServiceRuntime {
  std::string name;
  std::string state;
  std::int64_t currentProcedure = 0;
  Duration inState{0};  // virtual time spent in the current state
  std::uint64_t rejected = 0;
  std::map<std::string, NodeKey, std::less<>> nodes;  // ServiceControl attribute -> node
};

struct FiredTransition {
  std::string service;
  std::string transition;
  std::string from;
  std::string to;
};

struct WriteRecord {
  std::uint64_t index = 0;
  NodeKey node;
  Value value;
  bool accepted = true;  // false: command not enabled in the current state
};

// In-memory process module. All operations are serialized by one mutex.
// Listeners run under that mutex and must not call back into the server.
class SimServer {
 public:
  using Listener = std::function<void(const NodeKey&, const Value&, bool initial)>;

  // Throws Error(NoServerElement) or Error(IncompleteOpcUaItem).
  static std::unique_ptr<SimServer> build(
      const aml::AmlDocument& doc,
      const vocab::StateMachineTemplate& tmpl = vocab::default_state_machine_template(),
      Duration dwell = Duration(100));

  // Throw Error(UnknownNode).
  Value read(const NodeKey& key) const;
  // Throw Error(UnknownNode / NotWritable / NonIntegerCommand).
  void write(const NodeKey& key, const Value& value);

  std::vector<FiredTransition> advance(Duration dt);

  // Calls the listener once with the current value (initial = true), then
  // on every change. Throws Error(UnknownNode).
  std::uint64_t subscribe(const NodeKey& key, Listener listener);
  void unsubscribe(std::uint64_t handle);

  std::vector<std::pair<NodeKey, SimVariable>> nodes() const;
  std::vector<ServiceRuntime> services() const;
  std::optional<ServiceRuntime> service(std::string_view name) const;
  std::vector<WriteRecord> write_log() const;
  const std::string& endpoint() const noexcept { return endpoint_; }
  const vocab::StateMachineTemplate& state_machine() const noexcept { return tmpl_; }
  Duration dwell() const noexcept { return dwell_; }

 private:
  SimServer(vocab::StateMachineTemplate tmpl, Duration dwell)
      : tmpl_(std::move(tmpl)), dwell_(dwell) {}
  void set_locked(const NodeKey& key, const Value& v);
  void enter_locked(ServiceRuntime& rt, const vocab::TransitionSpec& tr);
  void sync_locked(ServiceRuntime& rt);

  mutable std::mutex mu_;
  vocab::StateMachineTemplate tmpl_;
  Duration dwell_;
  std::string endpoint_;
  std::map<NodeKey, SimVariable> nodes_;
  std::map<std::string, ServiceRuntime, std::less<>> services_;
  std::map<NodeKey, std::string> commandNodes_;    // CommandExt node -> service
  std::map<NodeKey, std::string> procedureNodes_;  // ProcedureExt node -> service
  std::map<std::uint64_t, std::pair<NodeKey, Listener>> listeners_;
  std::uint64_t nextListener_ = 1;
  std::vector<WriteRecord> log_;
};

}  // namespace mtp2skill::sim
