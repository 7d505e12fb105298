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
#include <string>

#include <benchmark/benchmark.h>

#include "mtp2skill/bgp.hpp"
#include "mtp2skill/competency.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/sim_server.hpp"
#include "mtp2skill/turtle.hpp"

using namespace mtp2skill;

namespace {

const std::string kBase = "http://example.org/mixer";

const std::string& mixer_xml() {
  static const std::string text = [] {
    std::ifstream in(std::string(MTP2SKILL_FIXTURE_DIR) + "/mixer.aml", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }();
  return text;
}

const mapping::ConversionResult& mixer_result() {
  static const auto r = mapping::map_document(aml::parse_aml(mixer_xml()), kBase);
  return r;
}

}  // namespace

static void BM_ParseAml(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(aml::parse_aml(mixer_xml()));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * mixer_xml().size()));
}
BENCHMARK(BM_ParseAml);

static void BM_Convert(benchmark::State& state) {
  auto doc = aml::parse_aml(mixer_xml());
  for (auto _ : state) benchmark::DoNotOptimize(mapping::map_document(doc, kBase));
}
BENCHMARK(BM_Convert)->Unit(benchmark::kMillisecond);

static void BM_SerializeTurtle(benchmark::State& state) {
  const auto& g = mixer_result().graph;
  for (auto _ : state) benchmark::DoNotOptimize(rdf::serialize_turtle(g));
  state.counters["triples"] = static_cast<double>(g.size());
}
BENCHMARK(BM_SerializeTurtle);

static void BM_ParseTurtle(benchmark::State& state) {
  auto text = rdf::serialize_turtle(mixer_result().graph);
  for (auto _ : state) benchmark::DoNotOptimize(rdf::parse_turtle(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTurtle);

static void BM_QueryStartValue(benchmark::State& state) {
  const auto& g = mixer_result().graph;
  rdf::Bindings b{{"skill", rdf::Term::iri(mapping::mint_iri(kBase, "Mixer_Mixing_Continuous"))},
                  {"transition", rdf::Term::literal("Start")}};
  for (auto _ : state) benchmark::DoNotOptimize(cq::run_cq(g, "CQ6", b));
}
BENCHMARK(BM_QueryStartValue);

static void BM_ValidateAllCqs(benchmark::State& state) {
  auto doc = aml::parse_aml(mixer_xml());
  for (auto _ : state) benchmark::DoNotOptimize(cq::validate(doc, mixer_result()));
}
BENCHMARK(BM_ValidateAllCqs)->Unit(benchmark::kMillisecond);

static void BM_SimulatorCommandCycle(benchmark::State& state) {
  auto sim = sim::SimServer::build(aml::parse_aml(mixer_xml()));
  sim::NodeKey cmd{"urn:mixer", "Mixing.CommandExt"};
  for (auto _ : state) {
    for (std::int64_t c : {4, 1024, 2}) {
      sim->write(cmd, c);
      while (!sim->advance(sim->dwell()).empty()) {
      }
    }
  }
}
BENCHMARK(BM_SimulatorCommandCycle);
BENCHMARK_MAIN();
