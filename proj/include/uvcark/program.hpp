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

#pragma once

#include "uvcark/bitstring.hpp"
#include "uvcark/isa.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace uvcark {

/// Self-describing 40-bit program header: magic "UV" (0x5556), format
/// version, and the two field widths every instruction in the image uses.
struct ProgramHeader {
  unsigned rw = 0;  // register-field width in bits, 1..255
  unsigned iw = 0;  // immediate-field width in bits, 1..255
  std::uint8_t version = kFormatVersion;
};

class HeaderError : public std::runtime_error {
 public:
  enum class Kind { Truncated, BadMagic, BadVersion, BadWidth };

  HeaderError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Parses and checks the leading header of a program bit-string.
/// Throws HeaderError on truncation, wrong magic or version, or zero widths.
ProgramHeader validate_header(const BitString& image);

/// An assembled UVC program: header + packed instructions, as one bit-string.
class ProgramImage {
 public:
  /// Adopts `bits` after validating the header.
  static ProgramImage from_bits(BitString bits);

  /// Parses the standalone .uvcp on-disk form: zero-padded bits followed by
  /// a 64-bit big-endian trailer holding the true bit length.
  static ProgramImage from_uvcp_bytes(std::span<const std::uint8_t> bytes);

  /// Serializes to the standalone .uvcp on-disk form.
  std::vector<std::uint8_t> to_uvcp_bytes() const;

  const BitString& bits() const { return bits_; }
  const ProgramHeader& header() const { return header_; }

  bool operator==(const ProgramImage& other) const { return bits_ == other.bits_; }

 private:
  ProgramImage(BitString bits, ProgramHeader header)
      : bits_(std::move(bits)), header_(header) {}

  BitString bits_;
  ProgramHeader header_;
};

}  // namespace uvcark
