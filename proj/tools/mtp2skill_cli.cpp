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


// mtp2skill: convert, validate, query, simulate and execute.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/bgp.hpp"
#include "mtp2skill/competency.hpp"
#include "mtp2skill/config.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/rules_io.hpp"
#include "mtp2skill/sim_server.hpp"
#include "mtp2skill/skill_executor.hpp"
#include "mtp2skill/turtle.hpp"
#include "mtp2skill/wire_client.hpp"
#include "mtp2skill/wire_server.hpp"

namespace fs = std::filesystem;
using namespace mtp2skill;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;

std::atomic<bool> g_interrupted{false};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temp file, then rename over the target.
void write_atomic(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << data;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
  }
}

struct Common {
  std::string configPath;
  Config config;

  void load() {
    if (configPath.empty())
      if (const char* env = std::getenv("MTP2SKILL_CONFIG")) configPath = env;
    if (!configPath.empty()) config = Config::load(configPath);
  }
  // CLI flag > config file > fallback.
  std::string pick(const std::string& flag, const char* key, std::string fallback = {}) const {
    if (!flag.empty()) return flag;
    return config.get(key).value_or(std::move(fallback));
  }
};

aml::AmlDocument load_mtp(const std::string& path) {
  try {
    return aml::open_mtp(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

rdf::RdfGraph load_graph(const std::string& path) {
  try {
    return rdf::parse_turtle(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

std::string stats_json(const mapping::ConversionResult& r) {
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [cls, n] : r.stats) classes[cls] = n;
  nlohmann::json doc{{"module", r.moduleName},
                     {"baseIri", r.baseIri},
                     {"triples", r.graph.size()},
                     {"classes", classes},
                     {"warnings", r.warnings}};
  return doc.dump(2) + "\n";
}

// "k=v" with the value read as a term: <iri>, prefixed name, number, a
// bare absolute IRI, or a plain string otherwise.
std::pair<std::string, rdf::Term> parse_binding(const std::string& kv,
                                                const std::map<std::string, std::string>& prefixes) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorCode::MissingBinding, "binding '" + kv + "' is not key=value");
  std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
  if (!key.empty() && key[0] == '?') key.erase(0, 1);
  try {
    return {key, rdf::parse_term(value, prefixes)};
  } catch (const Error&) {
    if (value.find_first_of(" \t\"<>") == std::string::npos && rdf::is_absolute_iri(value))
      return {key, rdf::Term::iri(value)};
    return {key, rdf::Term::literal(value)};
  }
}

std::string cell(const rdf::Term& t, const std::map<std::string, std::string>& prefixes) {
  if (t.is_literal()) return t.value();
  if (t.is_iri()) {
    std::string best;
    std::string label;
    for (const auto& [l, ns] : prefixes)
      if (t.value().rfind(ns, 0) == 0 && ns.size() > best.size()) {
        best = ns;
        label = l;
      }
    if (!best.empty()) return label + ":" + t.value().substr(best.size());
    return "<" + t.value() + ">";
  }
  return t.to_string();
}

sim::Value parse_value(const std::string& text) {
  std::size_t used = 0;
  try {
    long long i = std::stoll(text, &used);
    if (used == text.size()) return static_cast<std::int64_t>(i);
    double d = std::stod(text, &used);
    if (used == text.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::WriteRejected, "parameter value '" + text + "' is not a number");
}

int warnings_exit_code(const Common& c) {
  auto v = c.config.get("warnings_exit_code");
  if (!v) return 2;
  try {
    return std::stoi(*v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigSyntax, "warnings_exit_code: not an integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert MTP files into capability and skill graphs, check them and drive skills."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.configPath, "key = value config file (MTP2SKILL_CONFIG)");

  std::string input, output, statsPath, baseIri, rulesPath;
  auto* convert = app.add_subcommand("convert", "MTP (.aml or zip) to Turtle");
  convert->add_option("input", input, "MTP file")->required();
  convert->add_option("--base-iri", baseIri, "namespace for minted individuals");
  convert->add_option("--out", output, "Turtle output (stdout when absent)");
  convert->add_option("--stats-json", statsPath, "per-class counts (default <out>.stats.json)");
  convert->add_option("--rules", rulesPath, "JSON rule file replacing the built-in rules");

  std::string graphPath, mtpPath;
  bool jsonReport = false;
  auto* validate = app.add_subcommand("validate", "run the competency questions against a graph");
  validate->add_option("graph", graphPath, "Turtle graph")->required();
  validate->add_option("mtp", mtpPath, "MTP the graph was produced from")->required();
  validate->add_option("--base-iri", baseIri, "base IRI used during conversion (inferred if absent)");
  validate->add_flag("--json", jsonReport, "JSON report");

  std::string cqId;
  std::vector<std::string> binds;
  auto* query = app.add_subcommand("query", "answer one competency question as TSV");
  query->add_option("graph", graphPath, "Turtle graph")->required();
  query->add_option("--cq", cqId, "CQ1..CQ9")->required();
  query->add_option("--bind", binds, "slot=value, repeatable");

  int port = -1;
  int tickMs = 10;
  auto* simulate = app.add_subcommand("simulate", "serve a simulated module for an MTP");
  simulate->add_option("mtp", mtpPath, "MTP file")->required();
  simulate->add_option("--port", port, "TCP port (0 picks one)");
  simulate->add_option("--tick-ms", tickMs, "wall-clock tick for automatic transitions");

  std::string skillIri, transition, endpoint;
  std::vector<std::string> params;
  int timeoutMs = 5000;
  auto* execute = app.add_subcommand("execute", "fire a skill transition and await the result");
  execute->add_option("graph", graphPath, "Turtle graph")->required();
  execute->add_option("--skill", skillIri, "skill IRI")->required();
  execute->add_option("--transition", transition, "transition label, e.g. Start")->required();
  execute->add_option("--param", params, "parameter=value, repeatable");
  execute->add_option("--endpoint", endpoint, "host:port overriding the modelled endpoint");
  execute->add_option("--timeout-ms", timeoutMs, "await timeout");

  CLI11_PARSE(app, argc, argv);

  try {
    common.load();
    auto tmpl = build_template(common.config);

    if (*convert) {
      std::string base = common.pick(baseIri, "base_iri");
      if (base.empty()) throw Error(ErrorCode::InvalidBaseIri, "--base-iri is required");
      auto doc = load_mtp(input);
      std::string rulesFile = common.pick(rulesPath, "rules");
      auto rules = rulesFile.empty() ? mapping::builtin_rules() : mapping::load_rules(rulesFile);
      auto result = mapping::map_document(doc, base, tmpl, rules);
      std::string ttl = rdf::serialize_turtle(result.graph);
      if (output.empty() || output == "-") {
        std::cout << ttl;
      } else {
        write_atomic(output, ttl);
      }
      if (statsPath.empty() && !output.empty() && output != "-") statsPath = output + ".stats.json";
      if (!statsPath.empty()) write_atomic(statsPath, stats_json(result));
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      return result.warnings.empty() ? kOk : warnings_exit_code(common);
    }

    if (*validate) {
      auto graph = load_graph(graphPath);
      auto doc = load_mtp(mtpPath);
      auto report = cq::validate(doc, graph, common.pick(baseIri, "base_iri"), tmpl);
      std::cout << (jsonReport ? cq::render_json(report) : cq::render_text(report));
      return report.passed() ? kOk : kFailed;
    }

    if (*query) {
      auto graph = load_graph(graphPath);
      rdf::Bindings bindings;
      for (const auto& b : binds) bindings.insert(parse_binding(b, graph.prefixes()));
      auto table = cq::run_cq(graph, cqId, bindings);
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        std::cout << (i ? "\t" : "") << table.columns[i];
      std::cout << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          std::cout << (i ? "\t" : "") << cell(row[i], graph.prefixes());
        std::cout << "\n";
      }
      return kOk;
    }

    if (*simulate) {
      if (port < 0) {
        auto p = common.config.get("port");
        if (!p) throw Error(ErrorCode::ConfigSyntax, "--port is required");
        port = std::stoi(*p);
      }
      auto doc = load_mtp(mtpPath);
      auto server = sim::SimServer::build(doc, tmpl, dwell_time(common.config));
      sim::WireOptions opts;
      opts.port = static_cast<std::uint16_t>(port);
      opts.tick = sim::Duration(tickMs);
      sim::WireServer wire(*server, opts);
      std::signal(SIGINT, [](int) { g_interrupted = true; });
      std::signal(SIGTERM, [](int) { g_interrupted = true; });
      wire.start();
      std::cout << "listening on 127.0.0.1:" << wire.port() << " (" << server->nodes().size()
                << " nodes, " << server->services().size() << " services)" << std::endl;
      while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(50));
      wire.stop();
      return kOk;
    }

    if (*execute) {
      auto graph = load_graph(graphPath);
      auto binding = exec::resolve_skill(graph, skillIri);
      std::map<std::string, sim::Value> values;
      for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::WriteRejected, "'" + p + "' is not name=value");
        values[p.substr(0, eq)] = parse_value(p.substr(eq + 1));
      }
      if (!binding.transitionValues.count(transition))
        throw Error(ErrorCode::UnknownTransition, "skill has no transition '" + transition + "'");
      std::string target = common.pick(endpoint, "endpoint", binding.endpointUrl);
      auto ep = exec::parse_endpoint(target);

      std::string before;
      {
        sim::WireClient probe(ep.host, ep.port);
        auto cur = exec::current_state(binding, probe);
        if (cur.state) before = binding.stateNameForValue.at(std::get<std::int64_t>(cur.value));
      }
      auto path = exec::expected_path(graph, binding, before, transition);

      auto handle = exec::invoke(binding, transition, values, target);
      std::cout << "fired " << transition << " (" << binding.transitionValues.at(transition)
                << ") in state " << (before.empty() ? "?" : before) << "\n";
      bool ok = true;
      if (path.empty()) {
        std::cout << "transition not enabled in the current state; nothing to await\n";
        ok = false;
      } else {
        auto outcome = handle->await_state(path.back(), std::chrono::milliseconds(timeoutMs));
        ok = outcome.status == exec::AwaitStatus::Reached;
        for (const auto& ev : handle->events())
          std::cout << ev.seq << "\t" << sim::to_string(ev.value) << "\t"
                    << ev.state.value_or("unknown") << "\n";
        std::cout << "await " << path.back() << ": " << exec::to_string(outcome.status);
        if (outcome.status == exec::AwaitStatus::Unexpected && outcome.value)
          std::cout << " (" << sim::to_string(*outcome.value) << ")";
        std::cout << "\n";
      }
      handle->close();
      return ok ? kOk : kFailed;
    }
  } catch (const Error& e) {
    std::cerr << "mtp2skill: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "mtp2skill: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
