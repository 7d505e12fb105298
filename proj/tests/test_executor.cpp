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


#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <functional>
#include <thread>

#include <doctest.h>
#include <json.hpp>

#include "mtp2skill/error.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/sim_server.hpp"
#include "mtp2skill/skill_executor.hpp"
#include "mtp2skill/vocab.hpp"
#include "mtp2skill/wire_client.hpp"
#include "mtp2skill/wire_server.hpp"
#include "support.hpp"

using namespace mtp2skill;
using namespace mtp2skill::exec;
using namespace std::chrono_literals;
using nlohmann::json;
using testsupport::kMixerBase;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mtp2skill::Error");
  return ErrorCode::Io;
}

const rdf::RdfGraph& mixer_graph() {
  static const auto g = mapping::map_document(testsupport::fixture_doc("mixer.aml"), kMixerBase).graph;
  return g;
}

std::string skill_iri() { return mapping::mint_iri(kMixerBase, "Mixer_Mixing_Continuous"); }

struct Plant {
  std::unique_ptr<sim::SimServer> sim = sim::SimServer::build(testsupport::fixture_doc("mixer.aml"));
  std::unique_ptr<sim::WireServer> server;
  Plant() {
    server = std::make_unique<sim::WireServer>(*sim, sim::WireOptions{});
    server->start();
  }
  ~Plant() { server->stop(); }
  std::string endpoint() const { return "127.0.0.1:" + std::to_string(server->port()); }
};

// One-connection stand-in for a misbehaving module. `reply` maps a request
// to the lines sent back.
class FakeModule {
 public:
  explicit FakeModule(std::function<std::vector<json>(const json&)> reply) : reply_(std::move(reply)) {
    listen_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    REQUIRE(::bind(listen_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(listen_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    ::listen(listen_, 1);
    thread_ = std::thread([this] { serve(); });
  }
  ~FakeModule() {
    ::shutdown(listen_, SHUT_RDWR);
    ::close(listen_);
    if (conn_ >= 0) ::shutdown(conn_, SHUT_RDWR);
    thread_.join();
    if (conn_ >= 0) ::close(conn_);
  }
  std::string endpoint() const { return "127.0.0.1:" + std::to_string(port_); }

 private:
  void serve() {
    conn_ = ::accept(listen_, nullptr, nullptr);
    if (conn_ < 0) return;
    std::string buf;
    char chunk[4096];
    for (;;) {
      auto n = ::read(conn_, chunk, sizeof chunk);
      if (n <= 0) return;
      buf.append(chunk, static_cast<std::size_t>(n));
      for (auto nl = buf.find('\n'); nl != std::string::npos; nl = buf.find('\n')) {
        auto req = json::parse(buf.substr(0, nl));
        buf.erase(0, nl + 1);
        std::string out;
        for (const auto& line : reply_(req)) out += line.dump() + "\n";
        if (::write(conn_, out.data(), out.size()) < 0) return;
      }
    }
  }

  std::function<std::vector<json>(const json&)> reply_;
  int listen_ = -1;
  std::atomic<int> conn_{-1};
  std::uint16_t port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("resolve a skill from the graph") {
  auto b = resolve_skill(mixer_graph(), skill_iri());
  CHECK(b.endpointUrl == "opc.tcp://mixer.plant.local:4840");
  CHECK(b.commandNode.identifier == "Mixing.CommandExt");
  CHECK(b.stateNode.identifier == "Mixing.StateCur");
  CHECK(b.transitionValues.at("Start") == 4);
  CHECK(b.transitionValues.at("Complete") == 1024);
  CHECK(b.transitionValues.size() == vocab::default_command_table().size());
  CHECK(b.stateNameForValue.at(16) == "Idle");
  CHECK(b.stateForValue.at(16).value() == mapping::mint_iri(kMixerBase, "Mixer_Mixing_Continuous_Idle_State"));
  CHECK(b.stateForValue.size() == 16);
  CHECK(b.parameterNodes.count("Mixing.ProcedureExt"));
  CHECK(b == resolve_skill(mixer_graph(), skill_iri()));

  CHECK(code_of([] { resolve_skill(mixer_graph(), mapping::mint_iri(kMixerBase, "Nope")); }) ==
        ErrorCode::SkillNotFound);
  auto damaged = mixer_graph();
  for (const auto& t : damaged.match(std::nullopt, vocab::endpointUrl, std::nullopt)) damaged.remove(t);
  CHECK(code_of([&] { resolve_skill(damaged, skill_iri()); }) == ErrorCode::IncompleteModel);
}

TEST_CASE("expected paths follow automatic transitions") {
  auto b = resolve_skill(mixer_graph(), skill_iri());
  CHECK(expected_path(mixer_graph(), b, "Idle", "Start") == std::vector<std::string>{"Starting", "Execute"});
  CHECK(expected_path(mixer_graph(), b, "Execute", "Complete") ==
        std::vector<std::string>{"Completing", "Completed"});
  CHECK(expected_path(mixer_graph(), b, "Completed", "Reset") ==
        std::vector<std::string>{"Resetting", "Idle"});
  CHECK(expected_path(mixer_graph(), b, "Idle", "Complete").empty());
}

TEST_CASE("endpoints") {
  auto e = parse_endpoint("opc.tcp://mixer.plant.local:4840/path");
  CHECK(e.host == "mixer.plant.local");
  CHECK(e.port == 4840);
  CHECK(parse_endpoint("localhost:12").port == 12);
  CHECK(parse_endpoint("tcp://[::1]:99").host == "::1");
  CHECK(code_of([] { parse_endpoint("opc.tcp://noport"); }) == ErrorCode::ConnectFailed);
  CHECK(to_string(AwaitStatus::Reached) == "reached");
}

TEST_CASE("closed loop against the simulator") {
  Plant plant;
  auto b = resolve_skill(mixer_graph(), skill_iri());
  auto h = invoke(b, "Start", {{"ProcedureExt", std::int64_t{2}}}, plant.endpoint());
  plant.sim->advance(plant.sim->dwell());
  auto r = h->await_state("Execute", 3000ms);
  CHECK(r.status == AwaitStatus::Reached);
  CHECK(r.lastState == "Execute");
  auto ev = h->events();
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].state == "Starting");
  CHECK(ev[1].state == "Execute");
  CHECK(plant.sim->service("Mixing")->currentProcedure == 2);

  // parameters are written before the command
  auto log = plant.sim->write_log();
  REQUIRE(log.size() == 2);
  CHECK(log[0].node.id == "Mixing.ProcedureExt");
  CHECK(log[1].node.id == "Mixing.CommandExt");

  auto cur = current_state(b, h->connection());
  CHECK(cur.state->value() == mapping::mint_iri(kMixerBase, "Mixer_Mixing_Continuous_Execute_State"));
  CHECK(std::get<std::int64_t>(cur.value) == 64);

  // nothing else happens: the cursor is past Execute
  auto t = h->await_state("Idle", 100ms);
  CHECK(t.status == AwaitStatus::Timeout);
  CHECK(t.lastState == "Execute");
  CHECK(code_of([&] { h->await_state("Nowhere", 10ms); }) == ErrorCode::UnknownState);
  h->close();
}

TEST_CASE("invoke errors") {
  Plant plant;
  auto b = resolve_skill(mixer_graph(), skill_iri());
  CHECK(code_of([&] { invoke(b, "Teleport", {}, plant.endpoint()); }) == ErrorCode::UnknownTransition);
  CHECK(code_of([&] { invoke(b, "Start", {{"Nope", 1.0}}, plant.endpoint()); }) == ErrorCode::IncompleteModel);
  CHECK(plant.sim->write_log().empty());

  std::uint16_t stale;
  {
    Plant gone;
    stale = gone.server->port();
  }
  CHECK(code_of([&] { invoke(b, "Start", {}, "127.0.0.1:" + std::to_string(stale)); }) ==
        ErrorCode::ConnectFailed);

  FakeModule refusing([](const json& req) -> std::vector<json> {
    if (req["op"] == "write")
      return {{{"ok", false}, {"error", "NotWritable"}, {"message", "locked"}}};
    return {{{"ok", true}, {"value", 16}}};
  });
  CHECK(code_of([&] { invoke(b, "Start", {}, refusing.endpoint()); }) == ErrorCode::WriteRejected);
}

TEST_CASE("values outside the state table are reported") {
  FakeModule odd([](const json& req) -> std::vector<json> {
    if (req["op"] == "subscribe")
      return {{{"ok", true}, {"value", 16}},
              {{"event", "change"}, {"ns", req["ns"]}, {"id", req["id"]}, {"value", 3}, {"seq", 1}}};
    return {{{"ok", true}}};
  });
  auto b = resolve_skill(mixer_graph(), skill_iri());
  auto h = invoke(b, "Start", {}, odd.endpoint());
  auto r = h->await_state("Execute", 2000ms);
  CHECK(r.status == AwaitStatus::Unexpected);
  REQUIRE(r.value);
  CHECK(std::get<std::int64_t>(*r.value) == 3);
  h->close();
}
