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

#include "uvcark/bigint.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uvcark {

/// A growable sequence of bits with a fixed global convention: bit offset 0 is
/// the first bit and the most significant bit of any read or write window.
/// Backed by bytes, MSB-first (offset 0 = bit 7 of byte 0).
///
/// Invariant: unused bits in the final byte are always zero, so byte-level
/// equality and digests coincide with bit-level equality.
class BitString {
 public:
  BitString() = default;

  /// Wraps `bytes` as a `bit_len`-bit string. Bits past `bit_len` in the last
  /// byte are cleared to maintain the padding invariant.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t bit_len);

  /// Parses a string of '0'/'1' characters (testing and debugging aid).
  static BitString from_bit_text(std::string_view text);

  std::uint64_t size_bits() const { return bit_len_; }
  bool empty() const { return bit_len_ == 0; }

  /// Underlying bytes; the last byte is zero-padded past size_bits().
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool bit(std::uint64_t off) const;
  void set_bit(std::uint64_t off, bool value);

  /// Extends with zero bits up to `bits` (no-op if already at least as long).
  void extend_to(std::uint64_t bits);

  /// Reads bits [off, off+len) as a big-endian unsigned value, len <= 64.
  /// Caller guarantees off+len <= size_bits().
  std::uint64_t read_u64(std::uint64_t off, unsigned len) const;

  /// Writes the low `len` bits of `value` at [off, off+len), len <= 64.
  /// Caller guarantees off+len <= size_bits().
  void write_u64(std::uint64_t off, unsigned len, std::uint64_t value);

  /// Reads bits [off, off+len) as a big-endian non-negative integer.
  /// Throws std::out_of_range if the window exceeds the current length.
  Int read_int(std::uint64_t off, std::uint64_t len) const;

  /// Writes `value` as a `len`-bit big-endian field at [off, off+len),
  /// extending the string (zero gap fill) as needed. Throws
  /// std::invalid_argument unless 0 <= value < 2^len.
  void write_int(std::uint64_t off, std::uint64_t len, const Int& value);

  void append_int(std::uint64_t len, const Int& value);
  void append_bit(bool value);
  void append(const BitString& other);
  void append_byte(std::uint8_t b) { append_int(8, b); }

  /// Copy of bits [off, off+len); throws std::out_of_range on overrun.
  BitString slice(std::uint64_t off, std::uint64_t len) const;

  /// Renders as '0'/'1' characters (testing and debugging aid).
  std::string to_bit_text() const;

  bool operator==(const BitString& other) const {
    return bit_len_ == other.bit_len_ && bytes_ == other.bytes_;
  }

 private:
  void clear_padding();

  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_len_ = 0;
};

}  // namespace uvcark
