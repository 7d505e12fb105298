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


#include "mtp2skill/skill_executor.hpp"

#include <condition_variable>
#include <mutex>
#include <regex>
#include <set>

#include "mtp2skill/bgp.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/vocab.hpp"

namespace mtp2skill::exec {

using rdf::Term;

namespace {

rdf::SolutionTable ask(const rdf::RdfGraph& g, const std::string& patterns,
                       std::vector<std::string> projection, const Term& skill) {
  rdf::BgpQuery q;
  q.patterns = rdf::parse_patterns(patterns);
  q.projection = std::move(projection);
  return rdf::query_bgp(g, q, {{"skill", skill}});
}

[[noreturn]] void incomplete(const Term& skill, const std::string& what, const std::string& patterns) {
  std::string flat = std::regex_replace(patterns, std::regex(R"(\s+)"), " ");
  throw Error(ErrorCode::IncompleteModel,
              skill.to_string() + ": " + what + " not found; no match for {" + flat + "}");
}

aml::OpcUaNodeRef node_via(const rdf::RdfGraph& g, const Term& skill, const char* link,
                           const char* what) {
  std::string patterns = std::string("?skill ") + link + R"( ?owner .
    ?owner opcua:hasNode ?variable .
    ?variable opcua:nodeNamespace ?ns .
    ?variable opcua:nodeIdentifier ?id .)";
  auto t = ask(g, patterns, {"variable", "ns", "id"}, skill);
  if (t.rows.size() != 1) incomplete(skill, what, patterns);
  aml::OpcUaNodeRef ref{t.rows[0][1].value(), t.rows[0][2].value(), aml::AccessMode::Read};
  auto access = g.objects(t.rows[0][0], vocab::accessLevel);
  if (!access.empty())
    ref.access = aml::parse_access(access.front().value()).value_or(aml::AccessMode::Read);
  return ref;
}

std::optional<std::int64_t> integer_of(const sim::Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(AwaitStatus s) noexcept {
  switch (s) {
    case AwaitStatus::Reached: return "reached";
    case AwaitStatus::Timeout: return "timeout";
    case AwaitStatus::Unexpected: return "unexpected";
  }
  return "timeout";
}

SkillBinding resolve_skill(const rdf::RdfGraph& graph, const std::string& skillIri) {
  if (!rdf::is_absolute_iri(skillIri) || !graph.contains({Term::iri(skillIri), vocab::type,
                                                          vocab::OpcUaVariableSkill}))
    throw Error(ErrorCode::SkillNotFound, "<" + skillIri + "> is not a cap:OpcUaVariableSkill");
  SkillBinding b;
  b.skill = Term::iri(skillIri);

  b.commandNode = node_via(graph, b.skill, "cap:hasSkillCommand", "command node");
  b.stateNode = node_via(graph, b.skill, "cap:hasCurrentStateOutput", "state node");

  const std::string endpoint = R"(?skill cap:hasSkillCommand ?command .
    ?command opcua:hasNode ?variable .
    ?nodeSet opcua:hasNode ?variable .
    ?server opcua:hasNodeSet ?nodeSet .
    ?server opcua:endpointUrl ?url .)";
  auto ep = ask(graph, endpoint, {"url"}, b.skill);
  if (ep.empty()) incomplete(b.skill, "endpoint", endpoint);
  b.endpointUrl = ep.rows[0][0].value();

  const std::string transitions = R"(?skill cap:behaviorConformsTo ?sm .
    ?sm isa88:hasTransition ?t .
    ?t rdfs:label ?label .
    ?t din61360:hasDataElement ?de .
    ?skill cap:hasSkillCommand ?command .
    ?command din61360:hasDataElement ?de .
    ?de din61360:hasInstanceDescription ?id .
    ?id din61360:expressionGoal "Requirement" .
    ?id din61360:logicInterpretation "Equal" .
    ?id din61360:hasValue ?value .)";
  for (const auto& row : ask(graph, transitions, {"label", "value"}, b.skill).rows)
    if (auto v = row[1].as_integer()) b.transitionValues[row[0].value()] = *v;
  if (b.transitionValues.empty()) incomplete(b.skill, "transition values", transitions);

  const std::string states = R"(?skill cap:behaviorConformsTo ?sm .
    ?sm isa88:hasState ?state .
    ?state rdfs:label ?name .
    ?state din61360:hasDataElement ?de .
    ?skill cap:hasCurrentStateOutput ?output .
    ?output din61360:hasDataElement ?de .
    ?de din61360:hasInstanceDescription ?id .
    ?id din61360:expressionGoal "Assurance" .
    ?id din61360:logicInterpretation "Equal" .
    ?id din61360:hasValue ?value .)";
  for (const auto& row : ask(graph, states, {"state", "name", "value"}, b.skill).rows) {
    auto v = row[2].as_integer();
    if (!v) continue;
    auto [it, fresh] = b.stateForValue.emplace(*v, row[0]);
    if (!fresh && it->second != row[0])
      throw Error(ErrorCode::IncompleteModel,
                  b.skill.to_string() + ": state value " + std::to_string(*v) + " is ambiguous");
    b.stateNameForValue[*v] = row[1].value();
  }
  if (b.stateForValue.empty()) incomplete(b.skill, "state values", states);

  const std::string params = R"(?skill cap:hasSkillParameter ?p .
    ?p rdfs:label ?label .
    ?p opcua:hasNode ?variable .
    ?variable opcua:nodeNamespace ?ns .
    ?variable opcua:nodeIdentifier ?id .)";
  for (const auto& row : ask(graph, params, {"label", "ns", "id"}, b.skill).rows)
    b.parameterNodes[row[0].value()] = {row[1].value(), row[2].value(), aml::AccessMode::ReadWrite};
  return b;
}

std::vector<std::string> expected_path(const rdf::RdfGraph& graph, const SkillBinding& binding,
                                       const std::string& fromState, const std::string& transition) {
  auto edges = ask(graph, R"(?skill cap:behaviorConformsTo ?sm .
    ?sm isa88:hasTransition ?t .
    ?t rdfs:label ?label .
    ?t isa88:fromState ?from .
    ?from rdfs:label ?fromName .
    ?t isa88:toState ?to .
    ?to rdfs:label ?toName .)",
                   {"label", "fromName", "toName"}, binding.skill);
  auto step = [&](const std::string& from, const std::string& label) -> std::optional<std::string> {
    for (const auto& row : edges.rows)
      if (row[0].value() == label && row[1].value() == from) return row[2].value();
    return std::nullopt;
  };
  std::vector<std::string> path;
  auto next = step(fromState, transition);
  while (next && path.size() <= edges.rows.size()) {
    path.push_back(*next);
    next = step(*next, "SC");
  }
  return path;
}

Endpoint parse_endpoint(const std::string& text) {
  static const std::regex kForm(R"(^(?:[A-Za-z][A-Za-z0-9+.\-]*://)?(\[[^\]]+\]|[^:/]+):(\d+)(?:/.*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, kForm))
    throw Error(ErrorCode::ConnectFailed, "cannot derive host:port from '" + text + "'");
  std::string host = m[1].str();
  if (host.size() > 2 && host.front() == '[') host = host.substr(1, host.size() - 2);
  unsigned long port = std::stoul(m[2].str());
  if (port == 0 || port > 65535) throw Error(ErrorCode::ConnectFailed, "bad port in '" + text + "'");
  return {host, static_cast<std::uint16_t>(port)};
}

struct ExecutionHandle::Impl {
  SkillBinding binding;
  std::unique_ptr<sim::WireClient> client;
  mutable std::mutex mu;
  std::condition_variable cv;
  std::vector<ObservedEvent> log;
  std::optional<sim::Value> last;
  std::size_t cursor = 0;

  std::optional<std::string> state_of(const sim::Value& v) const {
    auto i = integer_of(v);
    if (!i) return std::nullopt;
    auto it = binding.stateNameForValue.find(*i);
    if (it == binding.stateNameForValue.end()) return std::nullopt;
    return it->second;
  }

  void on_event(const sim::ChangeEvent& ev) {
    std::lock_guard lock(mu);
    // Keep the log strictly increasing even if the server misbehaves.
    if (!log.empty() && ev.seq <= log.back().seq) return;
    log.push_back({ev.seq, ev.value, state_of(ev.value)});
    last = ev.value;
    cv.notify_all();
  }
};

ExecutionHandle::ExecutionHandle(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
ExecutionHandle::~ExecutionHandle() { close(); }

const SkillBinding& ExecutionHandle::binding() const noexcept { return impl_->binding; }

std::vector<ObservedEvent> ExecutionHandle::events() const {
  std::lock_guard lock(impl_->mu);
  return impl_->log;
}

std::optional<sim::Value> ExecutionHandle::last_observed() const {
  std::lock_guard lock(impl_->mu);
  return impl_->last;
}

sim::WireClient& ExecutionHandle::connection() noexcept { return *impl_->client; }

void ExecutionHandle::close() {
  if (impl_ && impl_->client) impl_->client->close();
}

AwaitOutcome ExecutionHandle::await_state(const std::string& state,
                                          std::chrono::milliseconds timeout) {
  bool known = false;
  for (const auto& [v, name] : impl_->binding.stateNameForValue)
    known = known || name == state || impl_->binding.stateForValue.at(v).value() == state;
  if (!known) throw Error(ErrorCode::UnknownState, "skill has no state '" + state + "'");

  auto deadline = std::chrono::steady_clock::now() + timeout;
  std::unique_lock lock(impl_->mu);
  for (;;) {
    while (impl_->cursor < impl_->log.size()) {
      const auto& ev = impl_->log[impl_->cursor++];
      if (!ev.state) return {AwaitStatus::Unexpected, ev.value, std::nullopt};
      if (*ev.state == state ||
          impl_->binding.stateForValue.at(*integer_of(ev.value)).value() == state)
        return {AwaitStatus::Reached, ev.value, ev.state};
    }
    if (impl_->cv.wait_until(lock, deadline) == std::cv_status::timeout &&
        impl_->cursor >= impl_->log.size()) {
      AwaitOutcome out{AwaitStatus::Timeout, impl_->last, std::nullopt};
      if (impl_->last) out.lastState = impl_->state_of(*impl_->last);
      return out;
    }
  }
}

std::unique_ptr<ExecutionHandle> invoke(const SkillBinding& binding, const std::string& transition,
                                        const std::map<std::string, sim::Value>& params,
                                        const std::optional<std::string>& endpointOverride) {
  auto value = binding.transitionValues.find(transition);
  if (value == binding.transitionValues.end())
    throw Error(ErrorCode::UnknownTransition, "skill has no transition '" + transition + "'");

  // Parameter names may be given with or without the "Service." qualifier.
  std::vector<std::pair<aml::OpcUaNodeRef, sim::Value>> writes;
  for (const auto& [name, v] : params) {
    const aml::OpcUaNodeRef* node = nullptr;
    for (const auto& [label, ref] : binding.parameterNodes) {
      auto dot = label.rfind('.');
      if (label == name || (dot != std::string::npos && label.substr(dot + 1) == name)) {
        node = &ref;
        break;
      }
    }
    if (!node)
      throw Error(ErrorCode::IncompleteModel, "skill has no parameter node for '" + name + "'");
    writes.emplace_back(*node, v);
  }

  Endpoint ep = parse_endpoint(endpointOverride.value_or(binding.endpointUrl));
  auto impl = std::make_unique<ExecutionHandle::Impl>();
  impl->binding = binding;
  impl->client = std::make_unique<sim::WireClient>(ep.host, ep.port);

  auto put = [&](const aml::OpcUaNodeRef& n, const sim::Value& v) {
    try {
      impl->client->write({n.ns, n.identifier}, v);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConnectFailed) throw;
      throw Error(ErrorCode::WriteRejected, "ns=" + n.ns + ";s=" + n.identifier + ": " + e.what());
    }
  };
  for (const auto& [n, v] : writes) put(n, v);

  auto* raw = impl.get();
  sim::Value initial = impl->client->subscribe(
      {binding.stateNode.ns, binding.stateNode.identifier},
      [raw](const sim::ChangeEvent& ev) { raw->on_event(ev); });
  {
    std::lock_guard lock(impl->mu);
    if (!impl->last) impl->last = initial;
  }
  put(binding.commandNode, value->second);
  return std::unique_ptr<ExecutionHandle>(new ExecutionHandle(std::move(impl)));
}

CurrentState current_state(const SkillBinding& binding, sim::WireClient& connection) {
  auto v = connection.read({binding.stateNode.ns, binding.stateNode.identifier});
  CurrentState out{std::nullopt, v};
  if (auto i = integer_of(v)) {
    auto it = binding.stateForValue.find(*i);
    if (it != binding.stateForValue.end()) out.state = it->second;
  }
  return out;
}

}  // namespace mtp2skill::exec
