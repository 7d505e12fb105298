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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtp2skill/aml_document.hpp"

namespace mtp2skill::aml {

// The small XPath-like dialect used by mapping-rule iterators:
//
//   //IE[suc='Service']              all descendants with SUC class Service
//   /child::IE[suc='X'] or /IE[...]  direct children
//   parent::  /  parent::IE[...]     one step up
//   @Attr.Sub                        attribute leaf (terminal step only)
//   .                                the context element
//
// Predicates: [suc='X'] and [name='X'], combinable. A leading '/' or '//'
// makes the path absolute (evaluated from the document); otherwise it is
// relative to a context element.
class PathExpr {
 public:
  enum class Axis { Self, Child, Descendant, Parent, Attribute };

  struct Step {
    Axis axis = Axis::Self;
    bool internalOnly = false;  // node test was "IE"
    std::optional<std::string> suc;
    std::optional<std::string> name;
    std::string attribute;  // Attribute axis only, dotted
  };

  static PathExpr parse(std::string_view text);

  bool absolute() const noexcept { return absolute_; }
  bool yields_values() const noexcept {
    return !steps_.empty() && steps_.back().axis == Axis::Attribute;
  }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  const std::string& text() const noexcept { return text_; }

 private:
  bool absolute_ = false;
  std::vector<Step> steps_;
  std::string text_;
};

// Elements in document order. Relative paths are evaluated against the
// document node (whose children are the top-level InternalElements).
std::vector<const Element*> select(const AmlDocument& doc, const PathExpr& path);
std::vector<const Element*> select(const AmlDocument& doc, std::string_view path);
std::vector<const Element*> select(const AmlDocument& doc, const Element& context,
                                   const PathExpr& path);

// Attribute values for a path ending in @Attr; missing attributes are
// skipped.
std::vector<std::string> select_values(const AmlDocument& doc, const Element& context,
                                       const PathExpr& path);

}  // namespace mtp2skill::aml
