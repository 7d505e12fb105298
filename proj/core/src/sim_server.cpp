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


#include "mtp2skill/sim_server.hpp"

#include <cmath>
#include <sstream>

#include "mtp2skill/error.hpp"

namespace mtp2skill::sim {

namespace {

const char* const kReadOnly[] = {"StateCur", "CommandEn", "ProcedureCur"};

bool forced_read_only(std::string_view attribute) {
  for (const char* a : kReadOnly)
    if (attribute == a) return true;
  return false;
}

bool integral(std::string_view attribute) {
  return attribute == "CommandExt" || attribute == "StateCur" || attribute == "CommandEn" ||
         attribute.rfind("Procedure", 0) == 0;
}

}  // namespace

std::string to_string(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  std::ostringstream out;
  out << std::get<double>(v);
  return out.str();
}

std::unique_ptr<SimServer> SimServer::build(const aml::AmlDocument& doc,
                                            const vocab::StateMachineTemplate& tmpl,
                                            Duration dwell) {
  tmpl.validate();
  std::unique_ptr<SimServer> s(new SimServer(tmpl, dwell));

  bool server = false;
  for (const aml::Element* el : doc.elements()) {
    if (el->suc_class() != "OPCUAServer") continue;
    if (!server) s->endpoint_ = aml::attribute_value(*el, "Endpoint").value_or("");
    server = true;
  }
  if (!server) throw Error(ErrorCode::NoServerElement, "document has no OPCUAServer element");

  // ServiceControl element -> services referencing it.
  std::map<const aml::Element*, std::vector<std::string>> controlOf;
  for (const aml::Element* el : doc.elements()) {
    if (el->suc_class() != "Service") continue;
    ServiceRuntime rt;
    rt.name = el->name;
    rt.state = "Idle";
    if (auto ref = aml::attribute_value(*el, "RefID")) {
      try {
        controlOf[&aml::resolve_ref_id(doc, *ref, "ServiceControl")].push_back(el->name);
      } catch (const Error&) {
      }
    }
    s->services_.emplace(rt.name, std::move(rt));
  }

  for (const aml::Element* el : doc.elements()) {
    for (const auto& ei : el->externalInterfaces) {
      if (ei.interfaceClass != "OPCUAItem") continue;
      auto ref = aml::opcua_ref_of(*el, ei.name);
      if (!ref) continue;
      NodeKey key{ref->ns, ref->identifier};
      if (s->nodes_.count(key)) continue;
      SimVariable var;
      var.ref = *ref;
      var.attribute = ei.name;
      var.owner = el->name;
      var.writable = ref->writable() && !forced_read_only(ei.name);
      if (!integral(ei.name)) var.value = 0.0;
      auto services = controlOf.find(el);
      if (el->suc_class() == "ServiceControl" && services != controlOf.end()) {
        // Several services on one ServiceControl is unusual; the first wins.
        var.service = services->second.front();
        auto& rt = s->services_.at(var.service);
        rt.nodes.emplace(ei.name, key);
        if (ei.name == "CommandExt") s->commandNodes_.emplace(key, var.service);
        if (ei.name == "ProcedureExt") s->procedureNodes_.emplace(key, var.service);
      }
      s->nodes_.emplace(key, std::move(var));
    }
  }
  for (auto& [name, rt] : s->services_) s->sync_locked(rt);
  return s;
}

void SimServer::set_locked(const NodeKey& key, const Value& v) {
  auto it = nodes_.find(key);
  if (it == nodes_.end() || it->second.value == v) return;
  it->second.value = v;
  for (auto& [handle, sub] : listeners_)
    if (sub.first == key) sub.second(key, v, false);
}

void SimServer::sync_locked(ServiceRuntime& rt) {
  auto put = [&](const char* attr, std::int64_t v) {
    auto n = rt.nodes.find(attr);
    if (n != rt.nodes.end()) set_locked(n->second, v);
  };
  put("StateCur", tmpl_.state_value(rt.state));
  put("CommandEn", tmpl_.enabled_mask(rt.state));
  put("ProcedureCur", rt.currentProcedure);
}

void SimServer::enter_locked(ServiceRuntime& rt, const vocab::TransitionSpec& tr) {
  rt.state = tr.to;
  rt.inState = Duration(0);
  sync_locked(rt);
}

Value SimServer::read(const NodeKey& key) const {
  std::lock_guard lock(mu_);
  auto it = nodes_.find(key);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownNode, "no node ns=" + key.ns + ";s=" + key.id);
  return it->second.value;
}

void SimServer::write(const NodeKey& key, const Value& value) {
  std::lock_guard lock(mu_);
  auto it = nodes_.find(key);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownNode, "no node ns=" + key.ns + ";s=" + key.id);
  if (!it->second.writable)
    throw Error(ErrorCode::NotWritable, "node ns=" + key.ns + ";s=" + key.id + " is read-only");

  WriteRecord rec{log_.size(), key, value, true};
  auto cmd = commandNodes_.find(key);
  if (cmd != commandNodes_.end()) {
    const auto* v = std::get_if<std::int64_t>(&value);
    if (!v)
      throw Error(ErrorCode::NonIntegerCommand,
                  "command value " + to_string(value) + " is not an integer");
    auto& rt = services_.at(cmd->second);
    set_locked(key, value);
    const vocab::TransitionSpec* tr = nullptr;
    if (auto name = tmpl_.command_for_value(*v)) tr = tmpl_.commanded(rt.state, *name);
    if (!tr) {
      ++rt.rejected;
      rec.accepted = false;
    } else {
      if (tr->command == "Start") {
        auto p = rt.nodes.find("ProcedureExt");
        if (p != rt.nodes.end()) {
          const auto& pv = nodes_.at(p->second).value;
          rt.currentProcedure = std::holds_alternative<std::int64_t>(pv)
                                    ? std::get<std::int64_t>(pv)
                                    : static_cast<std::int64_t>(std::llround(std::get<double>(pv)));
        }
      }
      enter_locked(rt, *tr);
    }
    log_.push_back(std::move(rec));
    return;
  }

  Value stored = value;
  if (std::holds_alternative<std::int64_t>(it->second.value) && std::holds_alternative<double>(value)) {
    double d = std::get<double>(value);
    if (d == std::floor(d)) stored = static_cast<std::int64_t>(d);
  }
  set_locked(key, stored);
  auto proc = procedureNodes_.find(key);
  if (proc != procedureNodes_.end()) {
    auto& rt = services_.at(proc->second);
    auto req = rt.nodes.find("ProcedureReq");
    if (req != rt.nodes.end()) set_locked(req->second, stored);
  }
  log_.push_back(std::move(rec));
}

std::vector<FiredTransition> SimServer::advance(Duration dt) {
  std::lock_guard lock(mu_);
  std::vector<FiredTransition> fired;
  for (auto& [name, rt] : services_) {
    rt.inState += dt;
    const auto* tr = tmpl_.automatic_from(rt.state);
    if (!tr || rt.inState < dwell_) continue;
    fired.push_back({name, tr->name, tr->from, tr->to});
    enter_locked(rt, *tr);
  }
  return fired;
}

std::uint64_t SimServer::subscribe(const NodeKey& key, Listener listener) {
  std::lock_guard lock(mu_);
  auto it = nodes_.find(key);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownNode, "no node ns=" + key.ns + ";s=" + key.id);
  listener(key, it->second.value, true);
  auto handle = nextListener_++;
  listeners_.emplace(handle, std::make_pair(key, std::move(listener)));
  return handle;
}

void SimServer::unsubscribe(std::uint64_t handle) {
  std::lock_guard lock(mu_);
  listeners_.erase(handle);
}

std::vector<std::pair<NodeKey, SimVariable>> SimServer::nodes() const {
  std::lock_guard lock(mu_);
  return {nodes_.begin(), nodes_.end()};
}

std::vector<ServiceRuntime> SimServer::services() const {
  std::lock_guard lock(mu_);
  std::vector<ServiceRuntime> out;
  for (const auto& [n, rt] : services_) out.push_back(rt);
  return out;
}

std::optional<ServiceRuntime> SimServer::service(std::string_view name) const {
  std::lock_guard lock(mu_);
  auto it = services_.find(name);
  if (it == services_.end()) return std::nullopt;
  return it->second;
}

std::vector<WriteRecord> SimServer::write_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

}  // namespace mtp2skill::sim
