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

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtp2skill::aml {

struct AmlAttribute {
  std::string name;
  std::optional<std::string> value;
  std::optional<std::string> dataType;
  std::optional<std::string> unit;
  std::vector<AmlAttribute> subAttributes;

  const AmlAttribute* find(std::string_view child) const noexcept;
};

struct ExternalInterface {
  std::string name;
  std::string interfaceClass;  // last segment of RefBaseClassPath, e.g. "OPCUAItem"
  std::vector<AmlAttribute> attributes;

  const AmlAttribute* find(std::string_view attr) const noexcept;
};

enum class AccessMode { Read, Write, ReadWrite };

std::string_view to_string(AccessMode mode) noexcept;
// Accepts read/write/readwrite/read-write (any case) and the numeric MTP
// access levels 1/2/3.
std::optional<AccessMode> parse_access(std::string_view text) noexcept;

struct OpcUaNodeRef {
  std::string ns;
  std::string identifier;
  AccessMode access = AccessMode::Read;

  bool writable() const noexcept { return access != AccessMode::Read; }
  friend bool operator==(const OpcUaNodeRef&, const OpcUaNodeRef&) = default;
};

enum class ElementKind { InstanceHierarchy, InternalElement };

// A node of the CAEX instance tree. Instance hierarchies are the roots;
// everything below them is an InternalElement. Children and parent point
// into storage owned by the AmlDocument.
struct Element {
  ElementKind kind = ElementKind::InternalElement;
  std::string id;
  std::string name;
  std::optional<std::string> refBaseSystemUnitPath;
  std::vector<AmlAttribute> attributes;
  std::vector<ExternalInterface> externalInterfaces;
  std::vector<const Element*> children;
  const Element* parent = nullptr;
  std::size_t ordinal = 0;  // position in document order
  std::size_t line = 0;

  // Last path segment of RefBaseSystemUnitPath, or empty.
  std::string_view suc_class() const noexcept;
  bool is_internal() const noexcept { return kind == ElementKind::InternalElement; }
};

class AmlDocument {
 public:
  AmlDocument() = default;
  AmlDocument(AmlDocument&&) noexcept = default;
  AmlDocument& operator=(AmlDocument&&) noexcept = default;
  AmlDocument(const AmlDocument&) = delete;
  AmlDocument& operator=(const AmlDocument&) = delete;

  const std::vector<const Element*>& instance_hierarchies() const noexcept { return roots_; }
  // All internal elements in document order.
  const std::vector<const Element*>& elements() const noexcept { return internal_; }
  const Element* find_by_id(std::string_view id) const;
  const std::map<std::string, const Element*, std::less<>>& elements_by_id() const noexcept {
    return byId_;
  }
  const std::map<std::string, std::vector<const Element*>, std::less<>>& elements_by_ref_id()
      const noexcept {
    return byRefId_;
  }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  const std::string& source_name() const noexcept { return sourceName_; }

  bool empty() const noexcept { return internal_.empty(); }

 private:
  friend class DocumentBuilder;

  std::vector<std::unique_ptr<Element>> storage_;
  std::vector<const Element*> roots_;
  std::vector<const Element*> internal_;
  std::map<std::string, const Element*, std::less<>> byId_;
  std::map<std::string, std::vector<const Element*>, std::less<>> byRefId_;
  std::vector<std::string> warnings_;
  std::string sourceName_;
};

enum class ContainerKind { Auto, Aml, Zip };

AmlDocument parse_aml(std::string_view bytes);
AmlDocument open_mtp(std::string_view bytes, ContainerKind kind = ContainerKind::Auto);

const Element& resolve_ref_id(const AmlDocument& doc, std::string_view refId,
                              std::optional<std::string_view> expectedSucClass = std::nullopt);

const AmlAttribute* find_attribute(const Element& el, std::string_view dottedName) noexcept;
std::optional<std::string> attribute_value(const Element& el, std::string_view dottedName);

// OPCUAItem interface whose name equals attributeName.
std::optional<OpcUaNodeRef> opcua_ref_of(const Element& el, std::string_view attributeName);

// Nearest ancestor-or-self with the given SUC class.
const Element* ancestor_with_class(const Element& el, std::string_view sucClass) noexcept;

}  // namespace mtp2skill::aml
