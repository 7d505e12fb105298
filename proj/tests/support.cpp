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


#include "support.hpp"

#include <array>
#include <fstream>
#include <regex>
#include <sstream>

#ifndef MTP2SKILL_FIXTURE_DIR
#error "MTP2SKILL_FIXTURE_DIR must be defined"
#endif

namespace testsupport {

std::string fixture_path(const std::string& name) {
  return std::string(MTP2SKILL_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return read_file(fixture_path(name)); }

mtp2skill::aml::AmlDocument fixture_doc(const std::string& name) {
  return mtp2skill::aml::open_mtp(fixture(name));
}

std::size_t count_suc(const std::string& xml, const std::string& suc) {
  std::regex re("RefBaseSystemUnitPath=\"[^\"]*/" + suc + "\"");
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(xml.begin(), xml.end(), re), std::sregex_iterator()));
}

std::size_t count_items(const std::string& xml, const std::string& name) {
  std::string n = name.empty() ? "[^\"]*" : name;
  std::regex re("<ExternalInterface Name=\"" + n + "\"[^>]*RefBaseClassPath=\"[^\"]*/OPCUAItem\"");
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(xml.begin(), xml.end(), re), std::sregex_iterator()));
}

std::size_t count_attributes(const std::string& xml, const std::string& name) {
  std::regex re("<Attribute Name=\"" + name + "\"[ >]");
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(xml.begin(), xml.end(), re), std::sregex_iterator()));
}

std::map<std::string, std::size_t> expected_stats(const std::string& xml) {
  const std::size_t kStates = 16, kTransitions = 44, kCommanded = 35;
  std::size_t services = count_suc(xml, "Service");
  std::size_t skills = count_suc(xml, "ServiceProcedure");
  std::size_t servers = count_suc(xml, "OPCUAServer");
  std::size_t indicators = count_suc(xml, "IndicatorElement");
  return {
      {"vdi2206:Module", count_suc(xml, "ModuleTypePackage")},
      {"vdi3682:Process", services},
      {"cap:Capability", services},
      {"cap:OpcUaVariableSkill", skills},
      {"vdi2206:Sensor", indicators},
      {"vdi2206:Actuator", count_suc(xml, "ActiveElement")},
      {"opcua:UaServer", servers},
      {"opcua:UaNodeSet", servers},
      // CommandEn is read through StateCur and gets no individual
      {"opcua:UaVariable", count_items(xml) - count_items(xml, "CommandEn")},
      {"cap:SkillParameter", count_suc(xml, "ProcedureParameter") + count_suc(xml, "ProcessValueIn") +
                                 count_suc(xml, "ConfigurationParameter") +
                                 count_attributes(xml, "ProcedureExt")},
      {"cap:SkillCommand", count_attributes(xml, "CommandExt")},
      {"cap:CurrentStateOutput", count_attributes(xml, "StateCur")},
      {"cap:SkillOutput", indicators + count_attributes(xml, "ProcedureCur") +
                              count_attributes(xml, "ProcedureReq")},
      {"isa88:StateMachine", skills},
      {"isa88:State", kStates * skills},
      {"isa88:Transition", kTransitions * skills},
      {"din61360:DataElement", (kStates + kCommanded) * skills},
      {"din61360:InstanceDescription", (kStates + kCommanded) * skills},
  };
}

namespace {

std::uint32_t crc32(const std::string& data) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xFFFFFFFFu;
  for (unsigned char b : data) c = table[(c ^ b) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void le16(std::string& s, std::uint32_t v) {
  s += static_cast<char>(v & 0xFF);
  s += static_cast<char>((v >> 8) & 0xFF);
}
void le32(std::string& s, std::uint32_t v) {
  le16(s, v & 0xFFFF);
  le16(s, v >> 16);
}

}  // namespace

std::string stored_zip(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string out, central;
  for (const auto& [name, data] : entries) {
    auto offset = static_cast<std::uint32_t>(out.size());
    auto crc = crc32(data);
    auto size = static_cast<std::uint32_t>(data.size());
    le32(out, 0x04034b50);
    le16(out, 20);
    le16(out, 0);
    le16(out, 0);  // stored
    le16(out, 0);
    le16(out, 0);
    le32(out, crc);
    le32(out, size);
    le32(out, size);
    le16(out, static_cast<std::uint32_t>(name.size()));
    le16(out, 0);
    out += name;
    out += data;

    le32(central, 0x02014b50);
    le16(central, 20);
    le16(central, 20);
    le16(central, 0);
    le16(central, 0);
    le16(central, 0);
    le16(central, 0);
    le32(central, crc);
    le32(central, size);
    le32(central, size);
    le16(central, static_cast<std::uint32_t>(name.size()));
    le16(central, 0);
    le16(central, 0);
    le16(central, 0);
    le16(central, 0);
    le32(central, 0);
    le32(central, offset);
    central += name;
  }
  auto cdOffset = static_cast<std::uint32_t>(out.size());
  out += central;
  le32(out, 0x06054b50);
  le16(out, 0);
  le16(out, 0);
  le16(out, static_cast<std::uint32_t>(entries.size()));
  le16(out, static_cast<std::uint32_t>(entries.size()));
  le32(out, static_cast<std::uint32_t>(central.size()));
  le32(out, cdOffset);
  le16(out, 0);
  return out;
}

namespace {

std::string attr(const std::string& name, const std::string& value) {
  return "<Attribute Name=\"" + name + "\"><Value>" + value + "</Value></Attribute>";
}

std::string item(const std::string& name, const std::string& id, const std::string& access) {
  return "<ExternalInterface Name=\"" + name + "\" ID=\"ei-" + id +
         "\" RefBaseClassPath=\"Lib/OPCUAItem\">" + attr("Identifier", id) +
         attr("Namespace", "urn:gen") + attr("Access", access) + "</ExternalInterface>";
}

std::string ie(const std::string& id, const std::string& name, const std::string& suc,
               const std::string& body) {
  return "<InternalElement ID=\"" + id + "\" Name=\"" + name +
         "\" RefBaseSystemUnitPath=\"Lib/" + suc + "\">" + body + "</InternalElement>";
}

}  // namespace

std::string random_mtp(std::mt19937& rng, RandomMtpShape& shape) {
  std::uniform_int_distribution<int> count(0, 5);
  shape.services = count(rng);
  shape.procedures.clear();
  shape.sensors = count(rng);
  shape.actuators = count(rng);

  std::string module = "Gen" + std::to_string(rng() % 100000);
  std::string controls, services, components;
  for (int s = 0; s < shape.services; ++s) {
    std::string sn = "Svc" + std::to_string(s);
    std::string ref = "ref-" + sn;
    std::string body = attr("RefID", ref);
    for (const char* a : {"CommandExt", "StateCur", "CommandEn", "ProcedureCur", "ProcedureReq",
                          "ProcedureExt"})
      body += attr(a, "0");
    for (const char* a : {"CommandExt", "StateCur", "CommandEn", "ProcedureCur", "ProcedureReq",
                          "ProcedureExt"})
      body += item(a, sn + "." + a, std::string(a) == "CommandExt" ? "write" : "read");
    controls += ie("sc-" + sn, sn + "Control", "ServiceControl", body);

    int procs = count(rng);
    shape.procedures.push_back(procs);
    std::string sbody = attr("RefID", ref);
    for (int p = 0; p < procs; ++p)
      sbody += ie("p-" + sn + "-" + std::to_string(p), "Proc" + std::to_string(p),
                  "ServiceProcedure", attr("ProcedureID", std::to_string(p + 1)));
    services += ie("s-" + sn, sn, "Service", sbody);
  }
  for (int i = 0; i < shape.sensors; ++i)
    components += ie("ind-" + std::to_string(i), "S" + std::to_string(i), "IndicatorElement",
                     attr("V", "0.0") + item("V", "S" + std::to_string(i) + ".V", "read"));
  for (int i = 0; i < shape.actuators; ++i)
    components += ie("act-" + std::to_string(i), "A" + std::to_string(i), "ActiveElement",
                     attr("V", "0.0"));

  return "<?xml version=\"1.0\"?>\n<CAEXFile SchemaVersion=\"3.0\">"
         "<InstanceHierarchy Name=\"MTP\">" +
         ie("mtp", module, "ModuleTypePackage", "") +
         "</InstanceHierarchy><InstanceHierarchy Name=\"Comm\">" +
         ie("il", "InstanceList", "InstanceList", controls + components) +
         ie("sl", "SourceList", "SourceList",
            ie("srv", "Server", "OPCUAServer", attr("Endpoint", "opc.tcp://gen:4840"))) +
         "</InstanceHierarchy><InstanceHierarchy Name=\"Services\">" + services +
         "</InstanceHierarchy></CAEXFile>\n";
}

}  // namespace testsupport
