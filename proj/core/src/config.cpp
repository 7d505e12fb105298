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

#include "mtp2skill/config.hpp"

#include <fstream>
#include <sstream>

#include "mtp2skill/error.hpp"

namespace mtp2skill {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    auto v = std::stoll(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ConfigSyntax, key + ": expected an integer, got '" + value + "'");
}

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  cfg.origin_ = std::string(origin);
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    // '#' starts a comment only at line start or after whitespace, so IRIs
    // such as http://example.org/mixer# survive.
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigSyntax,
                  std::string(origin) + ":" + std::to_string(n) + ": expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    if (key.empty())
      throw Error(ErrorCode::ConfigSyntax, std::string(origin) + ":" + std::to_string(n) + ": empty key");
    cfg.entries_[key] = trim(body.substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> Config::get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::string> Config::with_prefix(std::string_view prefix) const {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : entries_)
    if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0)
      out.emplace(k.substr(prefix.size()), v);
  return out;
}

vocab::StateMachineTemplate build_template(const Config& config,
                                           const vocab::StateMachineTemplate& base) {
  auto commands = base.commands();
  for (const auto& [name, value] : config.with_prefix("command."))
    commands[name] = parse_int("command." + name, value);

  auto states = base.states();
  for (const auto& [name, value] : config.with_prefix("state.")) {
    auto v = parse_int("state." + name, value);
    bool replaced = false;
    for (auto& s : states)
      if (s.name == name) {
        s.value = v;
        replaced = true;
      }
    if (!replaced) states.push_back({name, v});
  }

  auto transitions = base.transitions();
  auto overrides = config.with_prefix("transition.");
  if (!overrides.empty()) {
    transitions.clear();
    for (const auto& [name, spec] : overrides) {
      // <From> -> <To> on <Command> | <From> -> <To> auto
      std::istringstream in(spec);
      std::string from, arrow, to, kind, command;
      in >> from >> arrow >> to >> kind;
      bool ok = !from.empty() && arrow == "->" && !to.empty();
      vocab::TransitionSpec t{name, from, to, std::nullopt};
      if (ok && kind == "on" && (in >> command))
        t.command = command;
      else if (!(ok && kind == "auto"))
        throw Error(ErrorCode::ConfigSyntax,
                    "transition." + name + ": expected '<From> -> <To> on <Command>' or "
                    "'<From> -> <To> auto', got '" + spec + "'");
      transitions.push_back(std::move(t));
    }
  }

  vocab::StateMachineTemplate t(std::move(states), std::move(transitions), std::move(commands));
  t.validate();
  return t;
}

std::chrono::milliseconds dwell_time(const Config& config, std::chrono::milliseconds fallback) {
  if (auto v = config.get("sim.dwell_ms")) {
    auto ms = parse_int("sim.dwell_ms", *v);
    if (ms < 0) throw Error(ErrorCode::ConfigSyntax, "sim.dwell_ms must be >= 0");
    return std::chrono::milliseconds(ms);
  }
  return fallback;
}

}  // namespace mtp2skill
