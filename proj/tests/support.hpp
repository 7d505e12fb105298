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

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mtp2skill/aml_document.hpp"

namespace testsupport {

inline const std::string kMixerBase = "http://example.org/mixer";
inline const std::string kFillerBase = "http://example.org/filler";

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
std::string fixture(const std::string& name);
mtp2skill::aml::AmlDocument fixture_doc(const std::string& name);

// Counts elements whose RefBaseSystemUnitPath ends in "/<suc>" by plain text
// scanning, independent of the CAEX parser.
std::size_t count_suc(const std::string& xml, const std::string& suc);
// Counts OPCUAItem external interfaces named `name` (any name when empty).
std::size_t count_items(const std::string& xml, const std::string& name = {});

// Counts <Attribute Name="name"> declarations.
std::size_t count_attributes(const std::string& xml, const std::string& name);

// Expected per-class individual counts for a document, derived by text
// scanning and the default state machine size (16 states, 44 transitions,
// 35 of them commanded). Keys are the CURIEs of the conversion stats.
std::map<std::string, std::size_t> expected_stats(const std::string& xml);

// Minimal zip writer (stored entries, own CRC-32).
std::string stored_zip(const std::vector<std::pair<std::string, std::string>>& entries);

struct RandomMtpShape {
  int services = 0;
  std::vector<int> procedures;  // per service
  int sensors = 0;
  int actuators = 0;
};

// A structurally valid MTP with the given shape; names derive from the seed.
std::string random_mtp(std::mt19937& rng, RandomMtpShape& shape);

}  // namespace testsupport
