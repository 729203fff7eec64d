/*
   Copyright 2026 The uvcark Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "uvcark/program.hpp"

#include <cstdio>

namespace uvcark {

ProgramHeader validate_header(const BitString& image) {
  if (image.size_bits() < kHeaderBits) {
    throw HeaderError(HeaderError::Kind::Truncated,
                      "program image truncated: " + std::to_string(image.size_bits()) +
                          " bits, header needs 40");
  }
  const std::uint64_t magic = image.read_u64(0, 16);
  if (magic != kMagic) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%04llx", static_cast<unsigned long long>(magic));
    throw HeaderError(HeaderError::Kind::BadMagic,
                      std::string("bad magic 0x") + buf + ", expected 0x5556");
  }
  const std::uint64_t version = image.read_u64(16, 8);
  if (version != kFormatVersion) {
    throw HeaderError(HeaderError::Kind::BadVersion,
                      "unsupported program format version " + std::to_string(version));
  }
  ProgramHeader h;
  h.version = static_cast<std::uint8_t>(version);
  h.rw = static_cast<unsigned>(image.read_u64(24, 8));
  h.iw = static_cast<unsigned>(image.read_u64(32, 8));
  if (h.rw == 0 || h.iw == 0) {
    throw HeaderError(HeaderError::Kind::BadWidth, "field widths must be 1..255");
  }
  return h;
}

ProgramImage ProgramImage::from_bits(BitString bits) {
  ProgramHeader h = validate_header(bits);
  return ProgramImage(std::move(bits), h);
}

ProgramImage ProgramImage::from_uvcp_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) {
    throw HeaderError(HeaderError::Kind::Truncated, ".uvcp file shorter than its trailer");
  }
  std::uint64_t bit_len = 0;
  for (std::size_t i = bytes.size() - 8; i < bytes.size(); ++i) {
    bit_len = (bit_len << 8) | bytes[i];
  }
  const std::span<const std::uint8_t> body = bytes.first(bytes.size() - 8);
  if (bit_len > body.size() * 8ull || (bit_len + 7) / 8 != body.size()) {
    throw HeaderError(HeaderError::Kind::Truncated,
                      ".uvcp trailer bit length does not match file size");
  }
  return from_bits(BitString::from_bytes(body, bit_len));
}

std::vector<std::uint8_t> ProgramImage::to_uvcp_bytes() const {
  std::vector<std::uint8_t> out = bits_.bytes();
  const std::uint64_t bit_len = bits_.size_bits();
  for (int i = 7; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>((bit_len >> (8 * i)) & 0xFF));
  }
  return out;
}

}  // namespace uvcark
