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
#include <string>
#include <string_view>
#include <vector>

// Minimal read-only zip access: central directory listing plus stored and
// deflated entries. Enough for MTP containers; no zip64, no encryption.
namespace mtp2skill::zip {

struct Entry {
  std::string name;
  std::uint16_t method = 0;
  std::uint32_t crc32 = 0;
  std::uint32_t compressedSize = 0;
  std::uint32_t uncompressedSize = 0;
  std::uint32_t localHeaderOffset = 0;
};

bool looks_like_zip(std::string_view bytes) noexcept;
std::vector<Entry> list_entries(std::string_view bytes);
std::string read_entry(std::string_view bytes, const Entry& entry);

}  // namespace mtp2skill::zip
