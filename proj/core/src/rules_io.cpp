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


#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtp2skill/error.hpp"
#include "mtp2skill/rules_io.hpp"

namespace mtp2skill::mapping {

using nlohmann::json;

namespace {

const char* kind_name(ObjectSpec::Kind k) {
  switch (k) {
    case ObjectSpec::Kind::ConstantIri: return "constant";
    case ObjectSpec::Kind::Literal: return "literal";
    case ObjectSpec::Kind::TemplateLiteral: return "template-literal";
    case ObjectSpec::Kind::TemplateIri: return "template-iri";
    case ObjectSpec::Kind::RefIdJoin: return "ref-id-join";
  }
  return "constant";
}

ObjectSpec::Kind kind_of(const std::string& s) {
  if (s == "constant") return ObjectSpec::Kind::ConstantIri;
  if (s == "literal") return ObjectSpec::Kind::Literal;
  if (s == "template-literal") return ObjectSpec::Kind::TemplateLiteral;
  if (s == "template-iri") return ObjectSpec::Kind::TemplateIri;
  if (s == "ref-id-join") return ObjectSpec::Kind::RefIdJoin;
  throw Error(ErrorCode::InvalidRule, "unknown object kind '" + s + "'");
}

json join_to_json(const RefJoin& j) {
  return {{"refPath", j.refPath}, {"targetSucClass", j.targetSucClass}, {"required", j.required}};
}

RefJoin join_from_json(const json& j) {
  return {j.at("refPath").get<std::string>(), j.at("targetSucClass").get<std::string>(),
          j.value("required", false)};
}

json object_to_json(const ObjectSpec& o) {
  json j{{"kind", kind_name(o.kind)}, {"value", o.value}};
  if (!o.datatype.empty()) j["datatype"] = o.datatype;
  if (!o.select.empty()) j["select"] = o.select;
  if (o.kind == ObjectSpec::Kind::RefIdJoin) {
    j["join"] = join_to_json(o.join);
    if (!o.thenPath.empty()) j["thenPath"] = o.thenPath;
  }
  return j;
}

ObjectSpec object_from_json(const json& j) {
  ObjectSpec o;
  o.kind = kind_of(j.at("kind").get<std::string>());
  o.value = j.at("value").get<std::string>();
  o.datatype = j.value("datatype", "");
  o.select = j.value("select", "");
  if (o.kind == ObjectSpec::Kind::RefIdJoin) {
    o.join = join_from_json(j.at("join"));
    o.thenPath = j.value("thenPath", "");
  }
  return o;
}

}  // namespace

std::vector<MappingRule> parse_rules(std::string_view text) {
  std::vector<MappingRule> rules;
  try {
    json doc = json::parse(text);
    for (const auto& r : doc.at("rules")) {
      MappingRule rule;
      rule.name = r.at("name").get<std::string>();
      rule.iterator = r.at("iterator").get<std::string>();
      if (r.contains("source")) rule.source = join_from_json(r["source"]);
      if (r.contains("requireAttribute")) rule.requireAttribute = r["requireAttribute"].get<std::string>();
      rule.subjectTemplate = r.at("subject").get<std::string>();
      rule.classes = r.at("classes").get<std::vector<std::string>>();
      for (const auto& p : r.value("predicateObjectMaps", json::array()))
        rule.predicateObjectMaps.push_back(
            {p.at("predicate").get<std::string>(), object_from_json(p.at("object")),
             p.value("inverse", false)});
      if (r.contains("opcuaNode")) rule.opcuaNodeAttribute = r["opcuaNode"].get<std::string>();
      rule.sharedSubject = r.value("sharedSubject", false);
      rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidRule, std::string("rule file: ") + e.what());
  }
  for (const auto& r : rules) validate_rule(r);
  return rules;
}

std::vector<MappingRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

std::string dump_rules(const std::vector<MappingRule>& rules) {
  json arr = json::array();
  for (const auto& rule : rules) {
    json r{{"name", rule.name}, {"iterator", rule.iterator}, {"subject", rule.subjectTemplate},
           {"classes", rule.classes}};
    if (rule.source) r["source"] = join_to_json(*rule.source);
    if (rule.requireAttribute) r["requireAttribute"] = *rule.requireAttribute;
    json poms = json::array();
    for (const auto& p : rule.predicateObjectMaps) {
      json pj{{"predicate", p.predicate}, {"object", object_to_json(p.object)}};
      if (p.inverse) pj["inverse"] = true;
      poms.push_back(std::move(pj));
    }
    r["predicateObjectMaps"] = std::move(poms);
    if (rule.opcuaNodeAttribute) r["opcuaNode"] = *rule.opcuaNodeAttribute;
    if (rule.sharedSubject) r["sharedSubject"] = true;
    arr.push_back(std::move(r));
  }
  return json{{"rules", arr}}.dump(2) + "\n";
}

}  // namespace mtp2skill::mapping
