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
#include <memory>
#include <optional>
#include <string>

#include "mtp2skill/sim_server.hpp"

namespace mtp2skill::sim {

struct WireOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
  std::size_t queueLimit = 1024;  // pending events per session before dropping
  // When set, a ticker advances the simulator by this step in wall-clock time.
  std::optional<Duration> tick;
};

// Newline-delimited JSON over TCP in front of a SimServer.
class WireServer {
 public:
  // Binds immediately; throws Error(PortInUse).
  WireServer(SimServer& sim, WireOptions options);
  ~WireServer();
  WireServer(const WireServer&) = delete;
  WireServer& operator=(const WireServer&) = delete;

  std::uint16_t port() const noexcept;

  // Serve on a background thread.
  void start();
  // Serve on the calling thread until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mtp2skill::sim
