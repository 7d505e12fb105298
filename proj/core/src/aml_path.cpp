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

#include "mtp2skill/aml_path.hpp"

#include <algorithm>
#include <cctype>

#include "mtp2skill/error.hpp"

namespace mtp2skill::aml {

namespace {

class StepParser {
 public:
  explicit StepParser(std::string_view text) : text_(text) {}

  PathExpr::Step node_test(PathExpr::Axis axis) {
    PathExpr::Step step;
    step.axis = axis;
    if (eat("IE")) {
      step.internalOnly = true;
    } else if (eat("*")) {
    } else if (axis != PathExpr::Axis::Parent) {
      fail("expected node test 'IE'");
    }
    while (eat("[")) {
      std::string key = ident();
      expect("=");
      std::string value = quoted();
      expect("]");
      if (key == "suc")
        step.suc = value;
      else if (key == "name")
        step.name = value;
      else
        fail("unknown predicate '" + key + "'");
    }
    return step;
  }

  std::string attribute_name() {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '/' && text_[pos_] != '[') out += text_[pos_++];
    if (out.empty()) fail("empty attribute name");
    return out;
  }

  bool eat(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::InvalidPath,
                "'" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

 private:
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string ident() {
    std::string out;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      out += text_[pos_++];
    if (out.empty()) fail("expected predicate name");
    return out;
  }
  std::string quoted() {
    if (pos_ >= text_.size() || (text_[pos_] != '\'' && text_[pos_] != '"'))
      fail("expected quoted value");
    char q = text_[pos_++];
    auto end = text_.find(q, pos_);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool matches(const PathExpr::Step& step, const Element* el) {
  if (!el) return false;
  if (step.internalOnly && !el->is_internal()) return false;
  if (step.suc && el->suc_class() != *step.suc) return false;
  if (step.name && el->name != *step.name) return false;
  return true;
}

// nullptr stands for the document node.
std::vector<const Element*> children_of(const AmlDocument& doc, const Element* el) {
  if (el) return el->children;
  std::vector<const Element*> out;
  for (const Element* ih : doc.instance_hierarchies())
    out.insert(out.end(), ih->children.begin(), ih->children.end());
  return out;
}

void descendants_of(const AmlDocument& doc, const Element* el, std::vector<const Element*>& out) {
  for (const Element* c : children_of(doc, el)) {
    out.push_back(c);
    descendants_of(doc, c, out);
  }
}

void document_order(std::vector<const Element*>& v) {
  auto key = [](const Element* e) { return e ? e->ordinal + 1 : 0; };
  std::sort(v.begin(), v.end(), [&](auto* a, auto* b) { return key(a) < key(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<const Element*> eval_nodes(const AmlDocument& doc, std::vector<const Element*> ctx,
                                       const PathExpr& path) {
  for (const auto& step : path.steps()) {
    if (step.axis == PathExpr::Axis::Attribute) break;
    std::vector<const Element*> next;
    for (const Element* el : ctx) {
      switch (step.axis) {
        case PathExpr::Axis::Self:
          next.push_back(el);
          break;
        case PathExpr::Axis::Child:
          for (const Element* c : children_of(doc, el))
            if (matches(step, c)) next.push_back(c);
          break;
        case PathExpr::Axis::Descendant: {
          std::vector<const Element*> all;
          descendants_of(doc, el, all);
          for (const Element* c : all)
            if (matches(step, c)) next.push_back(c);
          break;
        }
        case PathExpr::Axis::Parent:
          if (el && el->parent && matches(step, el->parent)) next.push_back(el->parent);
          break;
        case PathExpr::Axis::Attribute:
          break;
      }
    }
    document_order(next);
    ctx = std::move(next);
  }
  return ctx;
}

}  // namespace

PathExpr PathExpr::parse(std::string_view text) {
  PathExpr out;
  out.text_ = std::string(text);
  StepParser p(text);
  if (text.empty()) p.fail("empty path");

  bool first = true;
  while (!p.at_end()) {
    if (!first && out.yields_values()) p.fail("attribute step must be last");
    Axis sep = Axis::Self;  // Self = no separator consumed
    if (p.eat("//")) {
      sep = Axis::Descendant;
    } else if (p.eat("/")) {
      sep = Axis::Child;
    } else if (!first) {
      p.fail("expected '/'");
    }
    if (first && sep != Axis::Self) out.absolute_ = true;
    first = false;

    Step step;
    if (sep == Axis::Descendant) {
      p.eat("descendant::");
      step = p.node_test(Axis::Descendant);
    } else if (p.eat("parent::")) {
      step = p.node_test(Axis::Parent);
    } else if (p.eat("child::")) {
      step = p.node_test(Axis::Child);
    } else if (p.eat("@")) {
      step.axis = Axis::Attribute;
      step.attribute = p.attribute_name();
    } else if (p.eat(".")) {
      step.axis = Axis::Self;
    } else {
      step = p.node_test(Axis::Child);
    }
    out.steps_.push_back(std::move(step));
  }
  return out;
}

std::vector<const Element*> select(const AmlDocument& doc, const PathExpr& path) {
  if (path.yields_values())
    throw Error(ErrorCode::InvalidPath, "'" + path.text() + "' selects attribute values");
  return eval_nodes(doc, {nullptr}, path);
}

std::vector<const Element*> select(const AmlDocument& doc, std::string_view path) {
  return select(doc, PathExpr::parse(path));
}

std::vector<const Element*> select(const AmlDocument& doc, const Element& context,
                                   const PathExpr& path) {
  if (path.yields_values())
    throw Error(ErrorCode::InvalidPath, "'" + path.text() + "' selects attribute values");
  return eval_nodes(doc, {path.absolute() ? nullptr : &context}, path);
}

std::vector<std::string> select_values(const AmlDocument& doc, const Element& context,
                                       const PathExpr& path) {
  if (!path.yields_values())
    throw Error(ErrorCode::InvalidPath, "'" + path.text() + "' does not end in @Attribute");
  std::vector<std::string> out;
  for (const Element* el : eval_nodes(doc, {path.absolute() ? nullptr : &context}, path)) {
    if (!el) continue;
    if (auto v = attribute_value(*el, path.steps().back().attribute)) out.push_back(*v);
  }
  return out;
}

}  // namespace mtp2skill::aml
