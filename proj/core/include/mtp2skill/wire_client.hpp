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
#include <memory>
#include <string>
#include <vector>

#include "mtp2skill/sim_server.hpp"

namespace mtp2skill::sim {

struct ChangeEvent {
  NodeKey node;
  Value value;
  std::uint64_t seq = 0;
};

struct NodeInfo {
  NodeKey node;
  Value value;
  bool writable = false;
};

// Blocking client for the simulator wire protocol. Requests are serialized;
// change events are delivered on a background reader thread.
class WireClient {
 public:
  using EventHandler = std::function<void(const ChangeEvent&)>;

  // Throws Error(ConnectFailed).
  WireClient(const std::string& host, std::uint16_t port,
             std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));
  ~WireClient();
  WireClient(const WireClient&) = delete;
  WireClient& operator=(const WireClient&) = delete;

  // Server-side failures are rethrown as Error with the server's code.
  Value read(const NodeKey& node);
  void write(const NodeKey& node, const Value& value);
  // Returns the value at subscription time.
  Value subscribe(const NodeKey& node, EventHandler handler);
  std::vector<NodeInfo> list();

  void close();
  bool connected() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mtp2skill::sim
