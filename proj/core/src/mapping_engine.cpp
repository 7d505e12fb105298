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


#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "mtp2skill/aml_path.hpp"
#include "mtp2skill/error.hpp"
#include "mtp2skill/mapping.hpp"
#include "mtp2skill/vocab.hpp"

namespace mtp2skill::mapping {

using aml::AmlDocument;
using aml::Element;
using rdf::RdfGraph;
using rdf::Term;

std::string sanitize(std::string_view name) {
  std::string out(name);
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  return out;
}

void check_base_iri(std::string_view baseIri) {
  std::string b(baseIri);
  if (!rdf::is_absolute_iri(b))
    throw Error(ErrorCode::InvalidBaseIri, "'" + b + "' is not an absolute IRI");
  for (char c : b)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' || c == '"')
      throw Error(ErrorCode::InvalidBaseIri, "'" + b + "' contains an illegal character");
  auto hash = b.find('#');
  if (hash != std::string::npos && hash + 1 != b.size())
    throw Error(ErrorCode::InvalidBaseIri, "'" + b + "' has a fragment");
}

std::string base_namespace(std::string_view baseIri) {
  std::string b(baseIri);
  if (!b.empty() && (b.back() == '#' || b.back() == '/')) return b;
  return b + "#";
}

std::string base_prefix_label(std::string_view baseIri) {
  std::string b(baseIri);
  while (!b.empty() && (b.back() == '#' || b.back() == '/')) b.pop_back();
  auto slash = b.find_last_of("/:");
  std::string seg = slash == std::string::npos ? b : b.substr(slash + 1);
  std::string label;
  for (char c : seg)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') label += c;
  if (label.empty() || !std::isalpha(static_cast<unsigned char>(label.front()))) return "base";
  for (const auto& [std_label, ns] : rdf::standard_prefixes())
    if (std_label == label) return "base";
  return label;
}

std::string mint_iri(std::string_view baseIri, std::string_view local) {
  return base_namespace(baseIri) + sanitize(local);
}

std::string module_name(const AmlDocument& doc) {
  for (const Element* el : doc.elements())
    if (el->suc_class() == "ModuleTypePackage" && !el->name.empty()) return el->name;
  std::string src = doc.source_name();
  auto slash = src.find_last_of("/\\");
  if (slash != std::string::npos) src = src.substr(slash + 1);
  auto dot = src.rfind('.');
  if (dot != std::string::npos && dot > 0) src = src.substr(0, dot);
  return src.empty() ? "Module" : src;
}

std::string skill_iri(std::string_view baseIri, std::string_view module, std::string_view service,
                      std::string_view procedure) {
  return mint_iri(baseIri, std::string(module) + "_" + std::string(service) + "_" +
                               std::string(procedure));
}

namespace {

std::string expand_curie(const std::string& text) {
  if (text.find("://") != std::string::npos) return text;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    auto label = text.substr(0, colon);
    for (const auto& [l, ns] : rdf::standard_prefixes())
      if (l == label) return ns + text.substr(colon + 1);
  }
  throw Error(ErrorCode::InvalidRule, "cannot expand '" + text + "'");
}

class UnresolvedPlaceholder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  const Element* focus = nullptr;
  const Element* joined = nullptr;
};

const Element* ancestor_or_self(const Element* el, std::string_view suc) {
  for (; el; el = el->parent)
    if (el->suc_class() == suc) return el;
  return nullptr;
}

bool parse_double(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && !std::isspace(static_cast<unsigned char>(s.front()));
}

bool parse_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

class Engine {
 public:
  Engine(const AmlDocument& doc, std::string_view baseIri, ConversionResult& out)
      : doc_(doc), base_(baseIri), out_(out), module_(module_name(doc)) {
    hasServer_ = !aml::select(doc, "//IE[suc='OPCUAServer']").empty();
  }

  void run(const MappingRule& rule) {
    std::map<std::string, std::size_t> seen;  // subject -> focus ordinal
    for (const Element* focus : aml::select(doc_, aml::PathExpr::parse(rule.iterator))) {
      if (!focus) continue;
      Context ctx{focus, nullptr};
      const Element* source = focus;
      if (rule.source) {
        auto targets = join(*focus, *rule.source, rule.name);
        if (targets.empty()) continue;
        source = targets.front();
        ctx.joined = source;
      }
      if (rule.requireAttribute && !aml::find_attribute(*source, *rule.requireAttribute)) continue;

      std::string subjectIri;
      try {
        subjectIri = expand_iri(rule.subjectTemplate, ctx);
      } catch (const UnresolvedPlaceholder& e) {
        warn("rule '" + rule.name + "': " + e.what() + " for '" + focus->name + "'");
        continue;
      }
      auto [it, fresh] = seen.emplace(subjectIri, focus->ordinal);
      if (!fresh && it->second != focus->ordinal && !rule.sharedSubject)
        warn("rule '" + rule.name + "': subject collision on <" + subjectIri + ">");
      Term subject = Term::iri(subjectIri);

      for (const auto& cls : rule.classes) add(subject, vocab::type, Term::iri(expand_curie(cls)));
      for (const auto& pom : rule.predicateObjectMaps) emit(rule, pom, subject, ctx, *source);
      if (rule.opcuaNodeAttribute) node(subject, *source, *rule.opcuaNodeAttribute);
    }
  }

 private:
  void warn(std::string msg) {
    if (std::find(out_.warnings.begin(), out_.warnings.end(), msg) == out_.warnings.end())
      out_.warnings.push_back(std::move(msg));
  }

  void add(const Term& s, const Term& p, const Term& o) { out_.graph.add(s, p, o); }

  std::vector<const Element*> join(const Element& from, const RefJoin& j, const std::string& rule) {
    std::vector<const Element*> out;
    auto refs = aml::select_values(doc_, from, aml::PathExpr::parse(j.refPath));
    if (refs.empty() && j.required)
      warn("rule '" + rule + "': '" + from.name + "' has no " + j.refPath);
    for (const auto& ref : refs) {
      try {
        out.push_back(&aml::resolve_ref_id(doc_, ref, j.targetSucClass));
      } catch (const Error& e) {
        warn("rule '" + rule + "': unresolved join from '" + from.name + "' via " + j.refPath +
             " = '" + ref + "' to " + j.targetSucClass + " (" + std::string(to_string(e.code())) +
             ")");
      }
    }
    return out;
  }

  std::string placeholder(const std::string& name, const Context& ctx) const {
    const Element* f = ctx.focus;
    if (name == "module") return module_;
    if (name == "name") return f->name;
    if (name == "id") return f->id;
    if (name == "parent") {
      if (f->parent) return f->parent->name;
    } else if (name == "service") {
      if (auto* s = ancestor_or_self(f, "Service")) return s->name;
    } else if (name == "procedure") {
      if (auto* p = ancestor_or_self(f, "ServiceProcedure")) return p->name;
    } else if (name == "joined") {
      if (ctx.joined) return ctx.joined->name;
    }
    throw UnresolvedPlaceholder("cannot resolve {" + name + "}");
  }

  std::string expand(const std::string& tmpl, const Context& ctx) const {
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
      auto open = tmpl.find('{', i);
      if (open == std::string::npos) {
        out += tmpl.substr(i);
        break;
      }
      auto close = tmpl.find('}', open);
      out += tmpl.substr(i, open - i);
      out += placeholder(tmpl.substr(open + 1, close - open - 1), ctx);
      i = close + 1;
    }
    return out;
  }

  std::string expand_iri(const std::string& tmpl, const Context& ctx) const {
    return mint_iri(base_, expand(tmpl, ctx));
  }

  Term typed_literal(const std::string& lexical, const std::string& datatype,
                     const std::string& where) {
    std::string dt = datatype.empty() ? rdf::xsd::kString : expand_curie(datatype);
    auto fallback = [&](const char* what) {
      warn(where + ": '" + lexical + "' is not " + what + ", kept as string");
      return Term::literal(lexical);
    };
    if (dt == rdf::xsd::kInteger) {
      if (parse_integer(lexical)) return Term::literal(lexical, dt);
      if (parse_double(lexical)) return Term::literal(lexical, rdf::xsd::kDouble);
      return fallback("an integer");
    }
    if (dt == rdf::xsd::kDouble || dt == rdf::xsd::kDecimal) {
      if (parse_double(lexical)) return Term::literal(lexical, dt);
      return fallback("a number");
    }
    if (dt == rdf::xsd::kBoolean) {
      if (lexical == "true" || lexical == "1") return Term::boolean(true);
      if (lexical == "false" || lexical == "0") return Term::boolean(false);
      return fallback("a boolean");
    }
    return Term::literal(lexical, dt);
  }

  bool then_matches(const Element& target, const std::string& thenPath) {
    if (thenPath.empty()) return true;
    auto path = aml::PathExpr::parse(thenPath);
    if (path.yields_values()) {
      // "@Attr" on the target itself only needs the attribute to exist.
      if (path.steps().size() == 1) return aml::find_attribute(target, path.steps()[0].attribute);
      return !aml::select_values(doc_, target, path).empty();
    }
    return !aml::select(doc_, target, path).empty();
  }

  void emit(const MappingRule& rule, const PredicateObjectMap& pom, const Term& subject,
            const Context& ctx, const Element& source) {
    Term predicate = Term::iri(expand_curie(pom.predicate));
    auto put = [&](const Term& object) {
      if (pom.inverse)
        add(object, predicate, subject);
      else
        add(subject, predicate, object);
    };
    const auto& o = pom.object;
    const std::string where = "rule '" + rule.name + "' on '" + ctx.focus->name + "'";
    try {
      switch (o.kind) {
        case ObjectSpec::Kind::ConstantIri:
          put(Term::iri(expand_curie(o.value)));
          break;
        case ObjectSpec::Kind::Literal:
          if (auto v = aml::attribute_value(source, o.value)) put(typed_literal(*v, o.datatype, where));
          break;
        case ObjectSpec::Kind::TemplateLiteral:
          put(typed_literal(expand(o.value, ctx), o.datatype, where));
          break;
        case ObjectSpec::Kind::TemplateIri:
          if (o.select.empty()) {
            put(Term::iri(expand_iri(o.value, ctx)));
          } else {
            for (const Element* el : aml::select(doc_, *ctx.focus, aml::PathExpr::parse(o.select)))
              if (el) put(Term::iri(expand_iri(o.value, Context{el, ctx.joined})));
          }
          break;
        case ObjectSpec::Kind::RefIdJoin:
          for (const Element* target : join(*ctx.focus, o.join, rule.name))
            if (then_matches(*target, o.thenPath))
              put(Term::iri(expand_iri(o.value, Context{ctx.focus, target})));
          break;
      }
    } catch (const UnresolvedPlaceholder& e) {
      warn(where + ": " + e.what());
    }
  }

  void node(const Term& subject, const Element& source, const std::string& attribute) {
    std::optional<aml::OpcUaNodeRef> ref;
    try {
      ref = aml::opcua_ref_of(source, attribute);
    } catch (const Error& e) {
      warn(e.detail());
      return;
    }
    if (!ref) return;
    Term var = Term::iri(subject.value() + "_Node");
    add(var, vocab::type, vocab::UaVariable);
    add(var, vocab::nodeNamespace, Term::literal(ref->ns));
    add(var, vocab::nodeIdentifier, Term::literal(ref->identifier));
    add(var, vocab::accessLevel, Term::literal(std::string(aml::to_string(ref->access))));
    add(subject, vocab::hasNode, var);
    if (hasServer_) add(Term::iri(mint_iri(base_, module_ + "_NodeSet")), vocab::hasNode, var);
  }

  const AmlDocument& doc_;
  std::string base_;
  ConversionResult& out_;
  std::string module_;
  bool hasServer_ = false;
};

}  // namespace

void refresh_stats(ConversionResult& result) {
  result.stats.clear();
  for (const auto& cls : stats_classes())
    result.stats[cls] = result.graph.subjects(vocab::type, Term::iri(expand_curie(cls))).size();
}

ConversionResult apply_rules(const AmlDocument& doc, const std::vector<MappingRule>& rules,
                             std::string_view baseIri) {
  check_base_iri(baseIri);
  for (const auto& r : rules) validate_rule(r);
  ConversionResult result;
  result.baseIri = std::string(baseIri);
  result.moduleName = module_name(doc);
  result.warnings = doc.warnings();
  result.graph.add_prefix(base_prefix_label(baseIri), base_namespace(baseIri));
  if (!doc.empty()) {
    Engine engine(doc, baseIri, result);
    for (const auto& r : rules) engine.run(r);
  }
  refresh_stats(result);
  return result;
}

void synthesize_state_machine(RdfGraph& graph, const Term& skill,
                              const vocab::StateMachineTemplate& tmpl, const Term& command,
                              const Term& stateOutput) {
  using namespace vocab;
  tmpl.validate();
  if (!graph.contains({skill, type, OpcUaVariableSkill}))
    throw std::invalid_argument(skill.to_string() + " is not a cap:OpcUaVariableSkill");
  if (!graph.contains({command, type, SkillCommand}))
    throw Error(ErrorCode::MissingCommandIndividual,
                command.to_string() + " is not a cap:SkillCommand");
  if (!graph.contains({stateOutput, type, CurrentStateOutput}))
    throw Error(ErrorCode::MissingStateOutput,
                stateOutput.to_string() + " is not a cap:CurrentStateOutput");

  const std::string& base = skill.value();
  auto at = [&](const std::string& suffix) { return Term::iri(base + "_" + suffix); };

  // One data element per value with its instance description.
  auto data_element = [&](const std::string& stem, const Term& td, ExpressionGoal goal,
                          std::int64_t value) {
    Term de = at(stem + "_DE");
    Term id = at(stem + "_ID");
    graph.add(de, type, DataElement);
    graph.add(de, hasTypeDescription, td);
    graph.add(de, hasInstanceDescription, id);
    graph.add(id, type, InstanceDescription);
    graph.add(id, expressionGoal, Term::literal(std::string(to_string(goal))));
    graph.add(id, logicInterpretation,
              Term::literal(std::string(to_string(LogicInterpretation::Equal))));
    graph.add(id, hasValue, Term::integer(value));
    return de;
  };

  Term sm = at("StateMachine");
  graph.add(skill, behaviorConformsTo, sm);
  graph.add(sm, type, StateMachine);

  for (const auto& st : tmpl.states()) {
    Term s = at(sanitize(st.name) + "_State");
    graph.add(sm, hasState, s);
    graph.add(s, type, State);
    graph.add(s, label, Term::literal(st.name));
    Term de = data_element(sanitize(st.name) + "Output", CurrentStateOutput_TD,
                           ExpressionGoal::Assurance, st.value);
    graph.add(s, hasDataElement, de);
    graph.add(stateOutput, hasDataElement, de);
  }
  for (const auto& tr : tmpl.transitions()) {
    Term t = at(sanitize(tr.name) + "_Transition");
    graph.add(sm, hasTransition, t);
    graph.add(t, type, Transition);
    graph.add(t, label, Term::literal(tr.label()));
    graph.add(t, fromState, at(sanitize(tr.from) + "_State"));
    graph.add(t, toState, at(sanitize(tr.to) + "_State"));
    if (tr.automatic()) continue;
    Term de = data_element(sanitize(tr.name) + "Command", SkillCommandVariable_TD,
                           ExpressionGoal::Requirement, tmpl.command_value(*tr.command));
    graph.add(t, hasDataElement, de);
    graph.add(command, hasDataElement, de);
  }
}

ConversionResult map_document(const AmlDocument& doc, std::string_view baseIri,
                              const vocab::StateMachineTemplate& tmpl,
                              const std::vector<MappingRule>& rules) {
  check_base_iri(baseIri);
  tmpl.validate();
  ConversionResult result = apply_rules(doc, rules, baseIri);
  auto& g = result.graph;
  for (const Term& skill : g.subjects(vocab::type, vocab::OpcUaVariableSkill)) {
    auto commands = g.objects(skill, vocab::hasSkillCommand);
    auto outputs = g.objects(skill, vocab::hasCurrentStateOutput);
    if (commands.size() != 1 || outputs.size() != 1) {
      std::string msg = "skill " + skill.to_string() + " has " + std::to_string(commands.size()) +
                        " command and " + std::to_string(outputs.size()) +
                        " state output individuals; state machine not synthesized";
      result.warnings.push_back(std::move(msg));
      continue;
    }
    try {
      synthesize_state_machine(g, skill, tmpl, commands.front(), outputs.front());
    } catch (const Error& e) {
      result.warnings.push_back("skill " + skill.to_string() + ": " + e.what());
    }
  }
  refresh_stats(result);
  return result;
}

RdfGraph merge(const std::vector<RdfGraph>& graphs) {
  RdfGraph out;
  std::set<Term> modules;
  for (const auto& g : graphs) {
    for (const Term& m : g.subjects(vocab::type, vocab::Module))
      if (!modules.insert(m).second)
        throw Error(ErrorCode::BaseIriCollision,
                    "module " + m.to_string() + " appears in more than one graph");
    for (const auto& [label, ns] : g.prefixes()) out.add_prefix(label, ns);
    for (const auto& t : g.triples()) out.add(t);
  }
  return out;
}

}  // namespace mtp2skill::mapping
