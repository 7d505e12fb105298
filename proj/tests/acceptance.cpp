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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "mtp2skill/bgp.hpp"
#include "mtp2skill/competency.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/sim_server.hpp"
#include "mtp2skill/skill_executor.hpp"
#include "mtp2skill/turtle.hpp"
#include "mtp2skill/vocab.hpp"
#include "mtp2skill/wire_server.hpp"
#include "support.hpp"

using namespace mtp2skill;
using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned budgets.
constexpr auto kConvertBudget = 1000ms;
constexpr auto kClosedLoopBudget = 5000ms;
constexpr int kRandomMtps = 100;
constexpr int kFuzzWrites = 10000;
constexpr std::int64_t kStartValue = 4;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  std::string failures;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    failures += (failures.empty() ? "" : "; ") + what;
  }
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

mapping::ConversionResult convert_mixer() {
  return mapping::map_document(aml::open_mtp(testsupport::fixture("mixer.aml")), testsupport::kMixerBase);
}

void criterion1(Verdict& v) {
  auto xml = testsupport::fixture("mixer.aml");
  auto t0 = Clock::now();
  auto doc = aml::open_mtp(xml);
  auto r = mapping::map_document(doc, testsupport::kMixerBase);
  double ms = ms_since(t0);
  auto oracle = testsupport::expected_stats(xml);
  for (const auto& [cls, n] : oracle) {
    auto it = r.stats.find(cls);
    std::size_t got = it == r.stats.end() ? 0 : it->second;
    v.expect(got == n, cls + " " + std::to_string(got) + "!=" + std::to_string(n));
    v.expect(n > 0, cls + " absent from fixture");
  }
  v.expect(r.stats.size() == oracle.size(), "stats key set differs");
  v.expect(ms < std::chrono::duration<double, std::milli>(kConvertBudget).count(), "too slow");
  v.detail << oracle.size() << " classes match oracle, " << r.graph.size() << " triples, " << ms << " ms";
}

void criterion2(Verdict& v) {
  auto g = convert_mixer().graph;
  auto skills = g.subjects(vocab::type, vocab::OpcUaVariableSkill);
  rdf::BgpQuery q{rdf::parse_patterns(
                      "?skill a cap:OpcUaVariableSkill . ?skill cap:hasSkillCommand ?cmd ."
                      "?skill cap:behaviorConformsTo ?sm . ?sm isa88:hasTransition ?t ."
                      "?t rdfs:label \"Start\" . ?t din61360:hasDataElement ?de ."
                      "?cmd din61360:hasDataElement ?de . ?de din61360:hasInstanceDescription ?id ."
                      "?id din61360:expressionGoal \"Requirement\" ."
                      "?id din61360:logicInterpretation \"Equal\" . ?id din61360:hasValue ?value"),
                  {"skill", "cmd", "value"}, {}};
  auto rows = rdf::query_bgp(g, q);
  v.expect(!skills.empty(), "no skills");
  v.expect(rows.size() == skills.size(), "rows != skills");
  for (const auto& s : skills) {
    auto cmds = g.objects(s, vocab::hasSkillCommand);
    v.expect(cmds.size() == 1, "skill without single command");
    auto one = rdf::query_bgp(g, q, {{"skill", s}});
    v.expect(one.size() == 1, "skill " + s.value() + " has " + std::to_string(one.size()) + " Start values");
    for (const auto& val : one.values("value"))
      v.expect(val.as_integer() == kStartValue, "value " + val.value());
  }
  v.detail << rows.size() << " skills, Start = " << kStartValue;
}

bool single_command_and_output(const rdf::RdfGraph& g, std::size_t expectedSkills) {
  auto skills = g.subjects(vocab::type, vocab::OpcUaVariableSkill);
  if (skills.size() != expectedSkills) return false;
  for (const auto& s : skills)
    if (g.objects(s, vocab::hasSkillCommand).size() != 1 ||
        g.objects(s, vocab::hasCurrentStateOutput).size() != 1)
      return false;
  return true;
}

void criterion3(Verdict& v) {
  auto xml = testsupport::fixture("mixer.aml");
  v.expect(single_command_and_output(convert_mixer().graph, testsupport::count_suc(xml, "ServiceProcedure")),
           "fixture");
  std::mt19937 rng(20260419);
  std::size_t skills = 0;
  int bad = 0;
  for (int i = 0; i < kRandomMtps; ++i) {
    testsupport::RandomMtpShape shape;
    auto gen = testsupport::random_mtp(rng, shape);
    std::size_t expected = 0;
    for (int p : shape.procedures) expected += static_cast<std::size_t>(p);
    auto r = mapping::map_document(aml::parse_aml(gen), "http://example.org/gen" + std::to_string(i));
    if (!single_command_and_output(r.graph, expected)) ++bad;
    skills += expected;
  }
  v.expect(bad == 0, std::to_string(bad) + " random MTPs violate");
  v.detail << "fixture + " << kRandomMtps << " random MTPs (" << skills << " skills)";
}

void criterion4(Verdict& v) {
  auto doc = aml::open_mtp(testsupport::fixture("mixer.aml"));
  auto r = mapping::map_document(doc, testsupport::kMixerBase);
  auto report = cq::validate(doc, r);
  v.expect(report.outcomes.size() == 9, "not nine CQs");
  for (const auto& o : report.outcomes) v.expect(o.passed, o.id + " fails");

  std::map<std::string, std::vector<rdf::Triple>> groups;
  for (const auto& t : r.graph.triples())
    groups[t.predicate == vocab::type ? "a " + t.object.value() : t.predicate.value()].push_back(t);
  int killed = 0;
  for (const auto& [name, triples] : groups) {
    auto mutant = r.graph;
    for (const auto& t : triples) mutant.remove(t);
    if (!cq::validate(doc, mutant, r.baseIri).passed())
      ++killed;
    else
      v.expect(false, "mutant survives: " + name);
  }
  v.detail << "9/9 CQs pass, " << killed << "/" << groups.size() << " mutants killed";
}

void criterion5(Verdict& v) {
  auto a = rdf::serialize_turtle(convert_mixer().graph);
  auto b = rdf::serialize_turtle(convert_mixer().graph);
  v.expect(a == b, "two runs differ");
  v.expect(a == testsupport::fixture("mixer.ttl"), "differs from golden");
  auto back = rdf::parse_turtle(a);
  v.expect(rdf::serialize_turtle(back) == a, "round trip not a fixpoint");
  v.expect(back == convert_mixer().graph, "round trip changes triples");
  v.detail << a.size() << " bytes, identical and fixpoint";
}

void criterion6(Verdict& v) {
  auto m = convert_mixer().graph;
  auto f = mapping::map_document(aml::open_mtp(testsupport::fixture("filler.aml")), testsupport::kFillerBase).graph;
  auto merged = mapping::merge({m, f});
  v.expect(merged.size() == m.size() + f.size(), "size " + std::to_string(merged.size()));
  for (const auto& [g, base, name] : {std::tuple{&m, testsupport::kMixerBase, "Mixer"},
                                      std::tuple{&f, testsupport::kFillerBase, "Filler"}}) {
    rdf::Bindings b{{"module", rdf::Term::iri(mapping::mint_iri(base, name))}};
    auto alone = cq::run_cq(*g, "CQ1", b);
    auto shared = cq::run_cq(merged, "CQ1", b);
    v.expect(!alone.empty(), std::string(name) + " has no components");
    v.expect(alone.rows == shared.rows, std::string(name) + " CQ1 changes after merge");
  }
  v.detail << m.size() << " + " << f.size() << " = " << merged.size() << " triples, CQ1 module-scoped";
}

void criterion7(Verdict& v) {
  auto t0 = Clock::now();
  auto graph = convert_mixer().graph;
  auto sim = sim::SimServer::build(aml::open_mtp(testsupport::fixture("mixer.aml")));
  sim::WireServer server(*sim, {});
  server.start();
  std::string ep = "127.0.0.1:" + std::to_string(server.port());
  auto binding = exec::resolve_skill(graph, mapping::mint_iri(testsupport::kMixerBase, "Mixer_Mixing_Continuous"));

  std::vector<std::int64_t> log;
  std::string from = "Idle";
  auto step = [&](const std::string& transition, const std::string& target) {
    auto path = exec::expected_path(graph, binding, from, transition);
    v.expect(!path.empty() && path.back() == target, transition + " does not lead to " + target);
    auto h = exec::invoke(binding, transition, {}, ep);
    // virtual clock: one dwell per automatic step
    while (!sim->advance(sim->dwell()).empty()) {
    }
    auto out = h->await_state(target, 2000ms);
    v.expect(out.status == exec::AwaitStatus::Reached,
             transition + " -> " + target + ": " + std::string(exec::to_string(out.status)));
    for (const auto& e : h->events()) log.push_back(std::get<std::int64_t>(e.value));
    h->close();
    from = target;
  };
  step("Start", "Execute");
  step("Complete", "Completed");
  step("Reset", "Idle");
  server.stop();
  double ms = ms_since(t0);

  std::vector<std::int64_t> expected;
  for (const char* s : {"Starting", "Execute", "Completing", "Completed", "Resetting", "Idle"})
    expected.push_back(vocab::state_value(s));
  v.expect(log == expected, "event log differs");
  v.expect(ms < std::chrono::duration<double, std::milli>(kClosedLoopBudget).count(), "too slow");
  v.detail << "events [";
  for (std::size_t i = 0; i < log.size(); ++i) v.detail << (i ? ", " : "") << log[i];
  v.detail << "], " << ms << " ms";
}

void criterion8(Verdict& v) {
  auto sim = sim::SimServer::build(aml::open_mtp(testsupport::fixture("mixer.aml")));
  const auto& tmpl = sim->state_machine();
  auto svc = *sim->service("Mixing");
  auto cmdNode = svc.nodes.at("CommandExt");
  auto stateNode = svc.nodes.at("StateCur");
  auto enNode = svc.nodes.at("CommandEn");

  std::vector<std::int64_t> pool;
  for (const auto& [name, value] : tmpl.commands()) pool.push_back(value);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coin(0, 3);
  int violations = 0;
  std::size_t accepted = 0;
  for (int i = 0; i < kFuzzWrites; ++i) {
    // mostly valid command bits, sometimes arbitrary integers
    std::int64_t value = coin(rng) ? pool[rng() % pool.size()] : static_cast<std::int64_t>(rng() % 1000000);
    sim->write(cmdNode, value);
    if (coin(rng) == 0) sim->advance(sim->dwell());
    auto cur = std::get<std::int64_t>(sim->read(stateNode));
    auto state = tmpl.state_for_value(cur);
    if (!state || std::get<std::int64_t>(sim->read(enNode)) != tmpl.enabled_mask(*state)) ++violations;
  }
  for (const auto& rec : sim->write_log()) accepted += rec.accepted;
  v.expect(violations == 0, std::to_string(violations) + " invariant violations");
  v.detail << kFuzzWrites << " writes, " << accepted << " accepted, " << violations << " violations";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"stats completeness", criterion1},   {"Start requires 4", criterion2},
      {"cardinality", criterion3},          {"competency questions", criterion4},
      {"determinism", criterion5},          {"multi-module merge", criterion6},
      {"closed-loop execution", criterion7}, {"simulator fuzz", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.expect(false, std::string("exception: ") + e.what());
    }
    failed += !v.ok;
    auto detail = v.detail.str();
    if (!v.failures.empty()) detail += (detail.empty() ? "" : " | ") + v.failures;
    std::printf("criterion %zu %-22s %s  %s\n", i + 1, criteria[i].first.c_str(), v.ok ? "PASS" : "FAIL",
                detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
