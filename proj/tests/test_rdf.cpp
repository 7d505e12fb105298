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


#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "mtp2skill/bgp.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/rdf_graph.hpp"
#include "mtp2skill/turtle.hpp"

using namespace mtp2skill;
using namespace mtp2skill::rdf;

namespace {

const std::string kEx = "http://example.org/t#";
Term ex(const std::string& local) { return Term::iri(kEx + local); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mtp2skill::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("terms") {
  CHECK_THROWS_AS(Term::iri("relative/path"), std::invalid_argument);
  CHECK_THROWS_AS(Term::iri("http://e/has space"), std::invalid_argument);
  CHECK(Term::iri("urn:x").is_iri());
  CHECK(Term::literal("a") == Term::literal("a", xsd::kString));
  CHECK(Term::literal("1", xsd::kInteger) == Term::integer(1));
  CHECK(Term::literal("1") != Term::integer(1));
  CHECK(Term::integer(-42).as_integer() == -42);
  CHECK_FALSE(Term::literal("x").as_integer());
  CHECK(Term::boolean(true).value() == "true");
  CHECK(Term::iri("urn:x").to_string() == "<urn:x>");
  CHECK(Term::literal("a\"b").to_string() == R"("a\"b")");
  CHECK(Term::integer(4).to_string() == "\"4\"^^<http://www.w3.org/2001/XMLSchema#integer>");
  CHECK(Term::min_sentinel() < Term::iri("urn:a"));
  CHECK_THROWS_AS(make_triple(Term::literal("s"), ex("p"), ex("o")), std::invalid_argument);
  CHECK_THROWS_AS(make_triple(ex("s"), Term::blank("b"), ex("o")), std::invalid_argument);
}

TEST_CASE("graph add, remove and match") {
  RdfGraph g;
  CHECK(g.add(ex("a"), ex("p"), ex("b")));
  CHECK_FALSE(g.add(ex("a"), ex("p"), ex("b")));
  g.add(ex("a"), ex("p"), ex("c"));
  g.add(ex("b"), ex("q"), ex("c"));
  g.add(ex("c"), ex("p"), Term::literal("v"));
  CHECK(g.size() == 4);

  CHECK(g.match(ex("a"), std::nullopt, std::nullopt).size() == 2);
  CHECK(g.match(std::nullopt, ex("p"), std::nullopt).size() == 3);
  CHECK(g.match(std::nullopt, std::nullopt, ex("c")).size() == 2);
  CHECK(g.match(std::nullopt, ex("q"), ex("c")).size() == 1);
  CHECK(g.match(ex("a"), std::nullopt, ex("c")).size() == 1);
  CHECK(g.match(std::nullopt, std::nullopt, std::nullopt).size() == 4);
  CHECK(g.objects(ex("a"), ex("p")) == std::vector<Term>{ex("b"), ex("c")});
  CHECK(g.subjects(ex("p"), ex("c")) == std::vector<Term>{ex("a")});

  CHECK(g.remove({ex("a"), ex("p"), ex("b")}));
  CHECK_FALSE(g.remove({ex("a"), ex("p"), ex("b")}));
  CHECK(g.size() == 3);
  CHECK(g.match(std::nullopt, std::nullopt, ex("b")).empty());
}

TEST_CASE("match agrees with a linear scan on random graphs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int round = 0; round < 20; ++round) {
    RdfGraph g;
    for (int i = 0; i < 60; ++i)
      g.add(ex("s" + std::to_string(pick(rng))), ex("p" + std::to_string(pick(rng) % 3)),
            pick(rng) % 2 ? ex("s" + std::to_string(pick(rng))) : Term::integer(pick(rng)));
    for (int q = 0; q < 30; ++q) {
      std::optional<Term> s, p, o;
      if (pick(rng) % 2) s = ex("s" + std::to_string(pick(rng)));
      if (pick(rng) % 2) p = ex("p" + std::to_string(pick(rng) % 3));
      if (pick(rng) % 2) o = pick(rng) % 2 ? ex("s" + std::to_string(pick(rng))) : Term::integer(pick(rng));
      std::set<Triple> expected;
      for (const auto& t : g.triples())
        if ((!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o))
          expected.insert(t);
      auto got = g.match(s, p, o);
      CHECK(std::set<Triple>(got.begin(), got.end()) == expected);
    }
  }
}

TEST_CASE("prefixes") {
  RdfGraph g;
  CHECK(g.prefixes().at("cap") == std::string(ns::kCap));
  g.add_prefix("ex", kEx);
  g.add_prefix("ex", kEx);
  CHECK(code_of([&] { g.add_prefix("ex", "http://other/"); }) == ErrorCode::PrefixConflict);
  g.set_prefix("ex", "http://other/");
  CHECK(g.prefixes().at("ex") == "http://other/");
}

TEST_CASE("turtle serialization is deterministic and round trips") {
  RdfGraph g;
  g.add_prefix("ex", kEx);
  g.add(ex("b"), Term::iri(std::string(ns::kRdf) + "type"), Term::iri(std::string(ns::kCap) + "Skill"));
  g.add(ex("b"), Term::iri(std::string(ns::kRdfs) + "label"), Term::literal("tab\there \"q\"\nline"));
  g.add(ex("a"), ex("count"), Term::integer(-3));
  g.add(ex("a"), ex("ratio"), Term::literal("2.5", xsd::kDouble));
  g.add(ex("a"), ex("flag"), Term::boolean(false));
  g.add(ex("a"), ex("link"), Term::iri("urn:isbn:123"));
  g.add(ex("a"), ex("link"), ex("b"));

  auto text = serialize_turtle(g);
  CHECK(text.find("@prefix ex: <http://example.org/t#> .") != std::string::npos);
  CHECK(text.find("    a cap:Skill") != std::string::npos);
  CHECK(text.find("ex:link ex:b, <urn:isbn:123>") != std::string::npos);
  auto back = parse_turtle(text);
  CHECK(back == g);
  CHECK(serialize_turtle(back) == text);
  CHECK(back.prefixes().at("ex") == kEx);
}

TEST_CASE("turtle parsing") {
  auto g = parse_turtle(R"(
    PREFIX ex: <http://example.org/t#>
    @prefix e2: <http://example.org/u#> .
    # comment
    ex:a a ex:Thing ;
         ex:n 7, 7.5, 1e3, true ;
         ex:s """multi
line""" , 'single' ;
         ex:t "x"^^ex:custom .
    <http://example.org/t#b> e2:p _:blank1 .
  )");
  CHECK(g.size() == 9);
  CHECK(g.contains({ex("a"), ex("n"), Term::integer(7)}));
  CHECK(g.contains({ex("a"), ex("n"), Term::literal("7.5", xsd::kDecimal)}));
  CHECK(g.contains({ex("a"), ex("n"), Term::literal("1e3", xsd::kDouble)}));
  CHECK(g.contains({ex("a"), ex("n"), Term::boolean(true)}));
  CHECK(g.contains({ex("a"), ex("s"), Term::literal("multi\nline")}));
  CHECK(g.contains({ex("a"), ex("t"), Term::literal("x", kEx + "custom")}));
  CHECK(g.contains({ex("b"), Term::iri("http://example.org/u#p"), Term::blank("blank1")}));
}

TEST_CASE("turtle syntax errors") {
  for (const char* bad : {
           "ex:a ex:b ex:c .",
           "@prefix ex: <http://e/#> . ex:a ex:b",
           "@prefix ex: <http://e/#> . ex:a ex:b \"unterminated .",
           "@prefix ex: <http://e/#> . \"lit\" ex:b ex:c .",
           "@base <http://e/> .",
           "<rel> <http://e/p> <http://e/o> .",
           "@prefix ex: <http://e/#> . ex:a ex:b \"x\"@en .",
           "@prefix ex: <http://e/#> . ex:a ex:b ex:c ; ; ",
       })
    CHECK_MESSAGE(code_of([&] { parse_turtle(bad); }) == ErrorCode::TurtleSyntax, bad);
}

// ---- BGP -----------------------------------------------------------------

namespace {

// Oracle: enumerate every assignment by nested loops over the graph.
std::set<std::vector<Term>> brute_force(const RdfGraph& g, const std::vector<TriplePattern>& pats,
                                        const std::vector<std::string>& proj) {
  std::set<std::vector<Term>> out;
  std::function<void(std::size_t, Bindings)> go = [&](std::size_t i, Bindings b) {
    if (i == pats.size()) {
      std::vector<Term> row;
      for (const auto& v : proj) row.push_back(b.at(v));
      out.insert(row);
      return;
    }
    for (const auto& t : g.triples()) {
      Bindings next = b;
      bool ok = true;
      auto unify = [&](const PatternTerm& pt, const Term& val) {
        if (auto* term = std::get_if<Term>(&pt)) {
          ok = ok && *term == val;
        } else {
          const auto& name = std::get<Variable>(pt).name;
          auto it = next.find(name);
          if (it == next.end())
            next.emplace(name, val);
          else
            ok = ok && it->second == val;
        }
      };
      unify(pats[i].subject, t.subject);
      unify(pats[i].predicate, t.predicate);
      unify(pats[i].object, t.object);
      if (ok) go(i + 1, next);
    }
  };
  go(0, {});
  return out;
}

}  // namespace

TEST_CASE("bgp matches the brute-force oracle on random graphs") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 3);
  std::map<std::string, std::string> pre{{"ex", kEx}};
  const std::vector<std::string> shapes = {
      "?a ex:p0 ?b . ?b ex:p1 ?c",
      "?a ex:p0 ?b . ?a ex:p1 ?b",
      "?a ?p ?b . ?b ?p ?a",
      "?a ex:p0 ex:s1 . ?a ex:p2 ?x . ?x ex:p0 ?y",
      "?a ex:p1 ?a",
  };
  for (int round = 0; round < 15; ++round) {
    RdfGraph g;
    for (int i = 0; i < 40; ++i)
      g.add(ex("s" + std::to_string(pick(rng))), ex("p" + std::to_string(pick(rng) % 3)),
            ex("s" + std::to_string(pick(rng))));
    for (const auto& shape : shapes) {
      auto pats = parse_patterns(shape, pre);
      std::set<std::string> vars;
      for (const auto& tp : pats)
        for (const auto* pt : {&tp.subject, &tp.predicate, &tp.object})
          if (auto* v = std::get_if<Variable>(pt)) vars.insert(v->name);
      std::vector<std::string> proj(vars.begin(), vars.end());
      BgpQuery q{pats, proj, {}};
      auto table = query_bgp(g, q);
      std::set<std::vector<Term>> got(table.rows.begin(), table.rows.end());
      CHECK(got.size() == table.rows.size());
      CHECK_MESSAGE(got == brute_force(g, pats, proj), shape);
      CHECK(std::is_sorted(table.rows.begin(), table.rows.end()));
    }
  }
}

TEST_CASE("bgp inputs, filters and projection") {
  RdfGraph g;
  g.add(ex("a"), ex("p"), ex("b"));
  g.add(ex("a"), ex("p"), ex("c"));
  g.add(ex("d"), ex("p"), ex("c"));
  BgpQuery q{parse_patterns("?x ex:p ?y", {{"ex", kEx}}), {"y"}, {}};
  CHECK(query_bgp(g, q).size() == 2);  // distinct
  CHECK(query_bgp(g, q, {{"x", ex("a")}}).size() == 2);
  CHECK(query_bgp(g, q, {{"x", ex("d")}}).values("y") == std::vector<Term>{ex("c")});
  q.filters.push_back({"x", ex("a")});
  CHECK(query_bgp(g, q).size() == 2);
  q.filters.push_back({"y", ex("b")});
  CHECK(query_bgp(g, q).size() == 1);

  BgpQuery empty{{}, {}, {}};
  CHECK(query_bgp(g, empty).size() == 1);
  BgpQuery unknown{parse_patterns("?x ex:p ?y", {{"ex", kEx}}), {"z"}, {}};
  CHECK_THROWS_AS(query_bgp(g, unknown), std::invalid_argument);
  CHECK_THROWS_AS(query_bgp(g, q).column("nope"), std::out_of_range);
  CHECK(code_of([] { parse_patterns("?x nope:p ?y"); }) == ErrorCode::TurtleSyntax);
  CHECK(parse_term("cap:Skill") == Term::iri(std::string(ns::kCap) + "Skill"));
  CHECK(parse_term("42") == Term::integer(42));
}
