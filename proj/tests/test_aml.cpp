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

#include <doctest.h>

#include "mtp2skill/aml_document.hpp"
#include "mtp2skill/aml_path.hpp"
#include "mtp2skill/error.hpp"
#include "support.hpp"

using namespace mtp2skill;
using namespace mtp2skill::aml;
using testsupport::fixture;
using testsupport::fixture_doc;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mtp2skill::Error");
  return ErrorCode::Io;
}

std::size_t count_class(const AmlDocument& doc, std::string_view suc) {
  std::size_t n = 0;
  for (const Element* el : doc.elements()) n += el->suc_class() == suc;
  return n;
}

}  // namespace

TEST_CASE("mixer parses with element counts matching a text scan") {
  auto xml = fixture("mixer.aml");
  auto doc = parse_aml(xml);
  CHECK(doc.instance_hierarchies().size() == 3);
  for (const char* suc : {"ModuleTypePackage", "Service", "ServiceProcedure", "IndicatorElement",
                          "ActiveElement", "OperationElement", "OPCUAServer", "ServiceControl"})
    CHECK_MESSAGE(count_class(doc, suc) == testsupport::count_suc(xml, suc), suc);
  CHECK(doc.warnings().empty());
  CHECK(doc.source_name() == "mixer.aml");
}

TEST_CASE("elements come in document order with parents and children") {
  auto doc = fixture_doc("mixer.aml");
  std::size_t last = 0;
  bool first = true;
  for (const Element* el : doc.elements()) {
    if (!first) CHECK(el->ordinal > last);
    last = el->ordinal;
    first = false;
    for (const Element* c : el->children) CHECK(c->parent == el);
  }
  const Element* proc = doc.find_by_id("proc-Mixing-Continuous");
  REQUIRE(proc);
  CHECK(proc->name == "Continuous");
  CHECK(proc->suc_class() == "ServiceProcedure");
  CHECK(proc->parent->name == "Mixing");
}

TEST_CASE("nested attributes resolve by dotted name") {
  auto doc = fixture_doc("mixer.aml");
  const Element* mtp = doc.find_by_id("mtp-Mixer");
  REQUIRE(mtp);
  CHECK(attribute_value(*mtp, "Info.Vendor.Name") == "ACME Process GmbH");
  CHECK(attribute_value(*mtp, "Info.Version") == "1.2.0");
  CHECK_FALSE(attribute_value(*mtp, "Info.Vendor.Phone"));
  CHECK(find_attribute(*mtp, "Info.Vendor") != nullptr);
  CHECK_FALSE(attribute_value(*mtp, "Info.Vendor").has_value());
}

TEST_CASE("RefID resolution") {
  auto doc = fixture_doc("mixer.aml");
  const Element& control = resolve_ref_id(doc, "ref-mixing", std::string_view("ServiceControl"));
  CHECK(control.name == "MixingControl");
  // Service and ServiceControl share the RefID.
  CHECK(code_of([&] { resolve_ref_id(doc, "ref-mixing"); }) == ErrorCode::AmbiguousRef);
  CHECK(code_of([&] { resolve_ref_id(doc, "ref-nowhere"); }) == ErrorCode::RefNotFound);
  CHECK(code_of([&] { resolve_ref_id(doc, "ref-mixing", std::string_view("OPCUAServer")); }) ==
        ErrorCode::RefNotFound);
}

TEST_CASE("OPCUAItem references") {
  auto doc = fixture_doc("mixer.aml");
  const Element* control = doc.find_by_id("sc-Mixing");
  REQUIRE(control);
  auto cmd = opcua_ref_of(*control, "CommandExt");
  REQUIRE(cmd);
  CHECK(cmd->ns == "urn:mixer");
  CHECK(cmd->identifier == "Mixing.CommandExt");
  CHECK(cmd->access == AccessMode::Write);
  CHECK(cmd->writable());
  auto state = opcua_ref_of(*control, "StateCur");
  REQUIRE(state);
  CHECK_FALSE(state->writable());
  CHECK_FALSE(opcua_ref_of(*control, "NoSuchAttribute"));

  auto broken = parse_aml(R"(<CAEXFile><InstanceHierarchy Name="h">
    <InternalElement ID="x" Name="X" RefBaseSystemUnitPath="L/ServiceControl">
      <ExternalInterface Name="StateCur" RefBaseClassPath="L/OPCUAItem">
        <Attribute Name="Identifier"><Value>X.StateCur</Value></Attribute>
        <Attribute Name="Access"><Value>read</Value></Attribute>
      </ExternalInterface>
    </InternalElement></InstanceHierarchy></CAEXFile>)");
  CHECK(code_of([&] { opcua_ref_of(*broken.find_by_id("x"), "StateCur"); }) ==
        ErrorCode::IncompleteOpcUaItem);
}

TEST_CASE("access mode parsing") {
  CHECK(parse_access("read") == AccessMode::Read);
  CHECK(parse_access("ReadWrite") == AccessMode::ReadWrite);
  CHECK(parse_access("read-write") == AccessMode::ReadWrite);
  CHECK(parse_access("2") == AccessMode::Write);
  CHECK_FALSE(parse_access("sometimes"));
}

TEST_CASE("document errors") {
  CHECK(code_of([] { parse_aml(fixture("corrupt.aml")); }) == ErrorCode::MalformedXml);
  CHECK(code_of([] { parse_aml("<Root/>"); }) == ErrorCode::NotCaex);
  CHECK(code_of([] { parse_aml(""); }) == ErrorCode::MalformedXml);
  CHECK(code_of([] {
          parse_aml(R"(<CAEXFile><InstanceHierarchy Name="h">
            <InternalElement ID="a" Name="A"/><InternalElement ID="a" Name="B"/>
          </InstanceHierarchy></CAEXFile>)");
        }) == ErrorCode::DuplicateId);
}

TEST_CASE("empty document") {
  auto doc = parse_aml(fixture("empty.aml"));
  CHECK(doc.empty());
  CHECK(doc.instance_hierarchies().size() == 1);
}

TEST_CASE("zip containers") {
  auto plain = fixture_doc("mixer.aml");

  SUBCASE("deflated archive") {
    auto doc = open_mtp(fixture("mixer.zip"));
    CHECK(doc.elements().size() == plain.elements().size());
    CHECK(doc.source_name() == "mixer.aml");
  }
  SUBCASE("stored archive with several aml entries picks the first by name") {
    auto zip = testsupport::stored_zip({{"z.aml", fixture("filler.aml")},
                                        {"a.AML", fixture("mixer.aml")},
                                        {"readme.txt", "hi"}});
    auto doc = open_mtp(zip);
    CHECK(doc.find_by_id("mtp-Mixer") != nullptr);
    CHECK(doc.warnings().size() == 1);
  }
  SUBCASE("no aml entry") {
    auto zip = testsupport::stored_zip({{"readme.txt", "hi"}});
    CHECK(code_of([&] { open_mtp(zip); }) == ErrorCode::NoAmlEntry);
  }
  SUBCASE("corrupt crc") {
    auto zip = testsupport::stored_zip({{"m.aml", fixture("empty.aml")}});
    auto pos = zip.find("<CAEXFile");
    zip[pos + 1] = 'X';
    CHECK(code_of([&] { open_mtp(zip); }) == ErrorCode::Io);
  }
  SUBCASE("forced kinds") {
    CHECK(open_mtp(fixture("mixer.aml"), ContainerKind::Aml).elements().size() ==
          plain.elements().size());
    CHECK(code_of([&] { open_mtp(fixture("mixer.aml"), ContainerKind::Zip); }) == ErrorCode::Io);
  }
}

TEST_CASE("path expressions select in document order") {
  auto doc = fixture_doc("mixer.aml");
  auto procs = select(doc, "//IE[suc='Service']/IE[suc='ServiceProcedure']");
  REQUIRE(procs.size() == 2);
  CHECK(procs[0]->name == "Continuous");
  CHECK(procs[1]->name == "Batch");

  auto services = select(doc, "//IE[suc='Service']");
  REQUIRE(services.size() == 1);
  CHECK(select(doc, *procs[0], PathExpr::parse("parent::")).at(0) == services[0]);
  CHECK(select(doc, *procs[0], PathExpr::parse("parent::IE[suc='Module']")).empty());

  auto siblings = select(doc, *services[0], PathExpr::parse("IE[suc='ServiceProcedure']"));
  CHECK(siblings.size() == 2);
  auto byName = select(doc, "//IE[name='TT01']");
  REQUIRE(byName.size() == 1);
  CHECK(byName[0]->suc_class() == "IndicatorElement");

  auto refs = select_values(doc, *procs[0], PathExpr::parse("parent::/@RefID"));
  CHECK(refs == std::vector<std::string>{"ref-mixing"});
  auto vendor = select_values(doc, *doc.find_by_id("mtp-Mixer"), PathExpr::parse("@Info.Vendor.Name"));
  CHECK(vendor == std::vector<std::string>{"ACME Process GmbH"});
  CHECK(select(doc, *procs[0], PathExpr::parse(".")).at(0) == procs[0]);
  CHECK(select(doc, "/IE[suc='ModuleTypePackage']").size() == 1);
}

TEST_CASE("path syntax errors") {
  for (const char* bad : {"", "//IE[suc=Service]", "@A/IE", "//IE[colour='red']", "IE[suc='x'",
                          "a b"})
    CHECK_MESSAGE(code_of([&] { PathExpr::parse(bad); }) == ErrorCode::InvalidPath, bad);
  auto doc = fixture_doc("mixer.aml");
  CHECK(code_of([&] { select(doc, "//IE/@RefID"); }) == ErrorCode::InvalidPath);
  CHECK(code_of([&] { select_values(doc, *doc.elements().front(), PathExpr::parse("//IE")); }) ==
        ErrorCode::InvalidPath);
}
