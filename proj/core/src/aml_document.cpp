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

#include "mtp2skill/aml_document.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>

#include "mtp2skill/error.hpp"
#include "zip_reader.hpp"

namespace mtp2skill::aml {

namespace {

std::string_view local_name(std::string_view qname) {
  auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

std::string_view last_segment(std::string_view path) {
  auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

// Generic XML tree produced by the expat callbacks.
struct XmlNode {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<XmlNode>> children;
  std::string text;
  std::size_t line = 0;

  const XmlNode* child(std::string_view n) const {
    for (const auto& c : children)
      if (c->name == n) return c.get();
    return nullptr;
  }
  const std::string* attr(std::string_view n) const {
    auto it = attrs.find(std::string(n));
    return it == attrs.end() ? nullptr : &it->second;
  }
};

struct ParseState {
  std::unique_ptr<XmlNode> root;
  std::vector<XmlNode*> stack;
  XML_Parser parser = nullptr;
};

void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<ParseState*>(data);
  auto node = std::make_unique<XmlNode>();
  node->name = std::string(local_name(name));
  node->line = XML_GetCurrentLineNumber(st->parser);
  for (int i = 0; atts[i] != nullptr; i += 2)
    node->attrs.emplace(std::string(local_name(atts[i])), atts[i + 1]);
  XmlNode* raw = node.get();
  if (st->stack.empty())
    st->root = std::move(node);
  else
    st->stack.back()->children.push_back(std::move(node));
  st->stack.push_back(raw);
}

void on_end(void* data, const XML_Char*) {
  static_cast<ParseState*>(data)->stack.pop_back();
}

void on_text(void* data, const XML_Char* s, int len) {
  auto* st = static_cast<ParseState*>(data);
  if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

std::unique_ptr<XmlNode> parse_xml(std::string_view bytes) {
  ParseState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::Io, "cannot allocate XML parser");
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), &on_start, &on_end);
  XML_SetCharacterDataHandler(parser.get(), &on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw Error(ErrorCode::MalformedXml,
                std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  if (!st.root) throw Error(ErrorCode::MalformedXml, "document has no root element");
  return std::move(st.root);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

AmlAttribute read_attribute(const XmlNode& node) {
  AmlAttribute a;
  if (const auto* n = node.attr("Name")) a.name = *n;
  if (a.name.empty())
    throw Error(ErrorCode::MalformedXml,
                "Attribute without Name at line " + std::to_string(node.line));
  if (const auto* t = node.attr("AttributeDataType")) a.dataType = *t;
  if (const auto* u = node.attr("Unit")) a.unit = *u;
  if (const auto* v = node.child("Value"))
    a.value = trim(v->text);
  else if (const auto* d = node.child("DefaultValue"))
    a.value = trim(d->text);
  for (const auto& c : node.children)
    if (c->name == "Attribute") a.subAttributes.push_back(read_attribute(*c));
  return a;
}

}  // namespace

class DocumentBuilder {
 public:
  explicit DocumentBuilder(AmlDocument& doc) : doc_(doc) {}

  void build(const XmlNode& root) {
    if (root.name != "CAEXFile")
      throw Error(ErrorCode::NotCaex, "root element is <" + root.name + ">, expected <CAEXFile>");
    if (const auto* fn = root.attr("FileName")) doc_.sourceName_ = *fn;
    for (const auto& c : root.children) {
      if (c->name != "InstanceHierarchy") continue;
      auto* ih = make(ElementKind::InstanceHierarchy, *c, nullptr);
      doc_.roots_.push_back(ih);
      walk(*c, *ih);
    }
  }

 private:
  Element* make(ElementKind kind, const XmlNode& node, Element* parent) {
    auto el = std::make_unique<Element>();
    el->kind = kind;
    el->line = node.line;
    el->parent = parent;
    el->ordinal = next_++;
    if (const auto* n = node.attr("Name")) el->name = *n;
    if (const auto* id = node.attr("ID")) el->id = *id;
    if (const auto* p = node.attr("RefBaseSystemUnitPath")) el->refBaseSystemUnitPath = *p;
    Element* raw = el.get();
    doc_.storage_.push_back(std::move(el));
    if (parent) parent->children.push_back(raw);
    return raw;
  }

  void walk(const XmlNode& node, Element& el) {
    for (const auto& c : node.children) {
      if (c->name == "Attribute") {
        el.attributes.push_back(read_attribute(*c));
      } else if (c->name == "ExternalInterface") {
        ExternalInterface ei;
        if (const auto* n = c->attr("Name")) ei.name = *n;
        if (const auto* p = c->attr("RefBaseClassPath")) ei.interfaceClass = last_segment(*p);
        for (const auto& a : c->children)
          if (a->name == "Attribute") ei.attributes.push_back(read_attribute(*a));
        el.externalInterfaces.push_back(std::move(ei));
      } else if (c->name == "InternalElement") {
        auto* child = make(ElementKind::InternalElement, *c, &el);
        index(*child);
        walk(*c, *child);
      }
      // RoleRequirements, SupportedRoleClass, InternalLink, ... are ignored.
    }
  }

  void index(const Element& el) {
    if (el.id.empty())
      throw Error(ErrorCode::MalformedXml,
                  "InternalElement '" + el.name + "' at line " + std::to_string(el.line) +
                      " has no ID");
    auto [it, inserted] = doc_.byId_.emplace(el.id, &el);
    if (!inserted)
      throw Error(ErrorCode::DuplicateId, "ID '" + el.id + "' used by '" + it->second->name +
                                              "' and '" + el.name + "' (line " +
                                              std::to_string(el.line) + ")");
    doc_.internal_.push_back(&el);
  }

 public:
  // Attributes are collected after the subtree walk, so RefIDs are indexed
  // in a second pass.
  void index_ref_ids() {
    for (const Element* el : doc_.internal_)
      if (const auto* a = find_attribute(*el, "RefID"); a && a->value)
        doc_.byRefId_[*a->value].push_back(el);
  }

  void add_warning(std::string w) { doc_.warnings_.push_back(std::move(w)); }
  void set_source(std::string s) { doc_.sourceName_ = std::move(s); }

 private:
  AmlDocument& doc_;
  std::size_t next_ = 0;
};

const AmlAttribute* AmlAttribute::find(std::string_view child) const noexcept {
  for (const auto& a : subAttributes)
    if (a.name == child) return &a;
  return nullptr;
}

const AmlAttribute* ExternalInterface::find(std::string_view attr) const noexcept {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

std::string_view to_string(AccessMode mode) noexcept {
  switch (mode) {
    case AccessMode::Read: return "read";
    case AccessMode::Write: return "write";
    case AccessMode::ReadWrite: return "read-write";
  }
  return "read";
}

std::optional<AccessMode> parse_access(std::string_view text) noexcept {
  std::string s;
  for (char c : text)
    if (c != '-' && c != '_' && c != ' ')
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "read" || s == "1" || s == "r") return AccessMode::Read;
  if (s == "write" || s == "2" || s == "w") return AccessMode::Write;
  if (s == "readwrite" || s == "3" || s == "rw") return AccessMode::ReadWrite;
  return std::nullopt;
}

std::string_view Element::suc_class() const noexcept {
  if (!refBaseSystemUnitPath) return {};
  return last_segment(*refBaseSystemUnitPath);
}

const Element* AmlDocument::find_by_id(std::string_view id) const {
  auto it = byId_.find(id);
  return it == byId_.end() ? nullptr : it->second;
}

AmlDocument parse_aml(std::string_view bytes) {
  auto root = parse_xml(bytes);
  AmlDocument doc;
  DocumentBuilder builder(doc);
  builder.build(*root);
  builder.index_ref_ids();
  return doc;
}

AmlDocument open_mtp(std::string_view bytes, ContainerKind kind) {
  if (kind == ContainerKind::Auto)
    kind = zip::looks_like_zip(bytes) ? ContainerKind::Zip : ContainerKind::Aml;
  if (kind == ContainerKind::Aml) return parse_aml(bytes);

  std::vector<zip::Entry> amls;
  for (auto& e : zip::list_entries(bytes)) {
    const auto& n = e.name;
    if (n.size() < 4 || n.back() == '/') continue;
    std::string ext = n.substr(n.size() - 4);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".aml") amls.push_back(std::move(e));
  }
  if (amls.empty()) throw Error(ErrorCode::NoAmlEntry, "archive contains no *.aml entry");
  std::sort(amls.begin(), amls.end(),
            [](const zip::Entry& a, const zip::Entry& b) { return a.name < b.name; });

  AmlDocument doc = parse_aml(zip::read_entry(bytes, amls.front()));
  DocumentBuilder builder(doc);
  if (amls.size() > 1) {
    std::string others;
    for (std::size_t i = 1; i < amls.size(); ++i) others += (i > 1 ? ", " : "") + amls[i].name;
    builder.add_warning("archive has " + std::to_string(amls.size()) + " *.aml entries; using '" +
                        amls.front().name + "', ignoring " + others);
  }
  builder.set_source(amls.front().name);
  return doc;
}

const Element& resolve_ref_id(const AmlDocument& doc, std::string_view refId,
                              std::optional<std::string_view> expectedSucClass) {
  const auto& index = doc.elements_by_ref_id();
  std::vector<const Element*> hits;
  if (auto it = index.find(refId); it != index.end()) {
    for (const Element* el : it->second)
      if (!expectedSucClass || el->suc_class() == *expectedSucClass) hits.push_back(el);
  }
  std::string what = "RefID '" + std::string(refId) + "'";
  if (expectedSucClass) what += " with SUC class " + std::string(*expectedSucClass);
  if (hits.empty()) throw Error(ErrorCode::RefNotFound, what + " not found");
  if (hits.size() > 1)
    throw Error(ErrorCode::AmbiguousRef,
                what + " matches " + std::to_string(hits.size()) + " elements");
  return *hits.front();
}

const AmlAttribute* find_attribute(const Element& el, std::string_view dottedName) noexcept {
  const std::vector<AmlAttribute>* level = &el.attributes;
  const AmlAttribute* found = nullptr;
  while (!dottedName.empty()) {
    auto dot = dottedName.find('.');
    auto head = dottedName.substr(0, dot);
    found = nullptr;
    for (const auto& a : *level)
      if (a.name == head) {
        found = &a;
        break;
      }
    if (!found) return nullptr;
    level = &found->subAttributes;
    dottedName = dot == std::string_view::npos ? std::string_view{} : dottedName.substr(dot + 1);
  }
  return found;
}

std::optional<std::string> attribute_value(const Element& el, std::string_view dottedName) {
  const auto* a = find_attribute(el, dottedName);
  if (!a) return std::nullopt;
  return a->value;
}

std::optional<OpcUaNodeRef> opcua_ref_of(const Element& el, std::string_view attributeName) {
  for (const auto& ei : el.externalInterfaces) {
    if (ei.interfaceClass != "OPCUAItem" || ei.name != attributeName) continue;
    auto need = [&](std::string_view key) -> std::string {
      const auto* a = ei.find(key);
      if (!a || !a->value || a->value->empty())
        throw Error(ErrorCode::IncompleteOpcUaItem, "OPCUAItem '" + ei.name + "' on '" + el.name +
                                                        "' lacks " + std::string(key));
      return *a->value;
    };
    OpcUaNodeRef ref;
    auto access = need("Access");
    ref.ns = need("Namespace");
    ref.identifier = need("Identifier");
    auto mode = parse_access(access);
    if (!mode)
      throw Error(ErrorCode::IncompleteOpcUaItem,
                  "OPCUAItem '" + ei.name + "' has unrecognised Access '" + access + "'");
    ref.access = *mode;
    return ref;
  }
  return std::nullopt;
}

const Element* ancestor_with_class(const Element& el, std::string_view sucClass) noexcept {
  for (const Element* p = &el; p; p = p->parent)
    if (p->suc_class() == sucClass) return p;
  return nullptr;
}

}  // namespace mtp2skill::aml
