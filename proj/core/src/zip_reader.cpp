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

#include "zip_reader.hpp"

#include <zlib.h>

#include "mtp2skill/error.hpp"

namespace mtp2skill::zip {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(ErrorCode::Io, "corrupt zip archive: " + why);
}

std::uint16_t u16(std::string_view b, std::size_t at) {
  if (at + 2 > b.size()) corrupt("truncated");
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    static_cast<unsigned char>(b[at + 1]) << 8);
}

std::uint32_t u32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(u16(b, at)) | static_cast<std::uint32_t>(u16(b, at + 2)) << 16;
}

}  // namespace

bool looks_like_zip(std::string_view bytes) noexcept {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' &&
         ((bytes[2] == 3 && bytes[3] == 4) || (bytes[2] == 5 && bytes[3] == 6));
}

std::vector<Entry> list_entries(std::string_view bytes) {
  // End-of-central-directory record: 22 bytes plus up to 64k comment.
  if (bytes.size() < 22) corrupt("too small");
  std::size_t eocd = std::string_view::npos;
  std::size_t lowest = bytes.size() > 22 + 0xFFFF ? bytes.size() - 22 - 0xFFFF : 0;
  for (std::size_t i = bytes.size() - 22 + 1; i-- > lowest;) {
    if (u32(bytes, i) == kEndSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) corrupt("no end of central directory");

  std::uint16_t count = u16(bytes, eocd + 10);
  std::size_t pos = u32(bytes, eocd + 16);
  std::vector<Entry> out;
  out.reserve(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    if (u32(bytes, pos) != kCentralSig) corrupt("bad central directory signature");
    Entry e;
    e.method = u16(bytes, pos + 10);
    e.crc32 = u32(bytes, pos + 16);
    e.compressedSize = u32(bytes, pos + 20);
    e.uncompressedSize = u32(bytes, pos + 24);
    std::uint16_t nameLen = u16(bytes, pos + 28);
    std::uint16_t extraLen = u16(bytes, pos + 30);
    std::uint16_t commentLen = u16(bytes, pos + 32);
    e.localHeaderOffset = u32(bytes, pos + 42);
    if (pos + 46 + nameLen > bytes.size()) corrupt("truncated entry name");
    e.name = std::string(bytes.substr(pos + 46, nameLen));
    out.push_back(std::move(e));
    pos += 46 + nameLen + extraLen + commentLen;
  }
  return out;
}

std::string read_entry(std::string_view bytes, const Entry& entry) {
  std::size_t at = entry.localHeaderOffset;
  if (u32(bytes, at) != kLocalSig) corrupt("bad local header for " + entry.name);
  std::size_t data = at + 30 + u16(bytes, at + 26) + u16(bytes, at + 28);
  if (data + entry.compressedSize > bytes.size()) corrupt("truncated data for " + entry.name);
  std::string_view raw = bytes.substr(data, entry.compressedSize);

  std::string out;
  if (entry.method == 0) {
    out.assign(raw);
  } else if (entry.method == 8) {
    out.resize(entry.uncompressedSize);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) corrupt("inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != entry.uncompressedSize)
      corrupt("inflate failed for " + entry.name);
  } else {
    corrupt("unsupported compression method " + std::to_string(entry.method));
  }
  auto crc = crc32(0L, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size()));
  if (crc != entry.crc32) corrupt("CRC mismatch for " + entry.name);
  return out;
}

}  // namespace mtp2skill::zip
