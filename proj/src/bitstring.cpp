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

#include "uvcark/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace uvcark {

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::uint64_t bit_len) {
  if (bit_len > bytes.size() * 8ull) {
    throw std::invalid_argument("BitString::from_bytes: bit length exceeds byte data");
  }
  BitString s;
  s.bit_len_ = bit_len;
  s.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((bit_len + 7) / 8));
  s.clear_padding();
  return s;
}

BitString BitString::from_bit_text(std::string_view text) {
  BitString s;
  for (char c : text) {
    if (c == '0' || c == '1') {
      s.append_bit(c == '1');
    } else if (c == ' ' || c == '_') {
      continue;
    } else {
      throw std::invalid_argument("BitString::from_bit_text: expected '0' or '1'");
    }
  }
  return s;
}

bool BitString::bit(std::uint64_t off) const {
  if (off >= bit_len_) throw std::out_of_range("BitString::bit");
  return (bytes_[off >> 3] >> (7 - (off & 7))) & 1;
}

void BitString::set_bit(std::uint64_t off, bool value) {
  if (off >= bit_len_) throw std::out_of_range("BitString::set_bit");
  const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (off & 7)));
  if (value) {
    bytes_[off >> 3] |= mask;
  } else {
    bytes_[off >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void BitString::extend_to(std::uint64_t bits) {
  if (bits <= bit_len_) return;
  bytes_.resize((bits + 7) / 8, 0);
  bit_len_ = bits;
}

std::uint64_t BitString::read_u64(std::uint64_t off, unsigned len) const {
  std::uint64_t v = 0;
  std::uint64_t pos = off;
  unsigned left = len;
  while (left > 0) {
    const std::uint64_t byte = pos >> 3;
    const unsigned bit = static_cast<unsigned>(pos & 7);
    const unsigned take = std::min(8u - bit, left);
    const std::uint8_t chunk =
        static_cast<std::uint8_t>((bytes_[byte] >> (8u - bit - take)) & ((1u << take) - 1u));
    v = (v << take) | chunk;
    pos += take;
    left -= take;
  }
  return v;
}

void BitString::write_u64(std::uint64_t off, unsigned len, std::uint64_t value) {
  std::uint64_t pos = off + len;
  unsigned left = len;
  while (left > 0) {
    // Work from the least significant end so `value` can be consumed in place.
    const std::uint64_t last = pos - 1;
    const std::uint64_t byte = last >> 3;
    const unsigned low_bit = static_cast<unsigned>(last & 7);  // within-byte index of window end
    const unsigned take = std::min(low_bit + 1, left);
    const unsigned shift = 7 - low_bit;
    const std::uint8_t mask = static_cast<std::uint8_t>(((1u << take) - 1u) << shift);
    const std::uint8_t chunk = static_cast<std::uint8_t>((value & ((1ull << take) - 1)) << shift);
    bytes_[byte] = static_cast<std::uint8_t>((bytes_[byte] & ~mask) | chunk);
    value >>= take;
    pos -= take;
    left -= take;
  }
}

Int BitString::read_int(std::uint64_t off, std::uint64_t len) const {
  if (off + len < off || off + len > bit_len_) throw std::out_of_range("BitString::read_int");
  Int v = 0;
  std::uint64_t pos = off;
  std::uint64_t left = len;
  while (left > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, left));
    v <<= take;
    v |= read_u64(pos, take);
    pos += take;
    left -= take;
  }
  return v;
}

void BitString::write_int(std::uint64_t off, std::uint64_t len, const Int& value) {
  if (value < 0 || bit_width(value) > len) {
    throw std::invalid_argument("BitString::write_int: value out of range for field width");
  }
  if (off + len < off) throw std::out_of_range("BitString::write_int");
  extend_to(off + len);
  std::uint64_t pos = off;
  std::uint64_t left = len;
  while (left > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, left));
    const Int chunk = (value >> (left - take)) & Int(~0ull);
    write_u64(pos, take, chunk.convert_to<std::uint64_t>());
    pos += take;
    left -= take;
  }
}

void BitString::append_int(std::uint64_t len, const Int& value) {
  write_int(bit_len_, len, value);
}

void BitString::append_bit(bool value) {
  extend_to(bit_len_ + 1);
  set_bit(bit_len_ - 1, value);
}

void BitString::append(const BitString& other) {
  const std::uint64_t base = bit_len_;
  extend_to(base + other.bit_len_);
  if ((base & 7) == 0) {
    // Byte-aligned fast path.
    std::copy(other.bytes_.begin(), other.bytes_.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(base >> 3));
    clear_padding();
    return;
  }
  std::uint64_t pos = 0;
  std::uint64_t left = other.bit_len_;
  while (left > 0) {
    const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, left));
    write_u64(base + pos, take, other.read_u64(pos, take));
    pos += take;
    left -= take;
  }
}

BitString BitString::slice(std::uint64_t off, std::uint64_t len) const {
  if (off + len < off || off + len > bit_len_) throw std::out_of_range("BitString::slice");
  BitString out;
  out.extend_to(len);
  std::uint64_t pos = 0;
  while (pos < len) {
    const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, len - pos));
    out.write_u64(pos, take, read_u64(off + pos, take));
    pos += take;
  }
  return out;
}

std::string BitString::to_bit_text() const {
  std::string s;
  s.reserve(bit_len_);
  for (std::uint64_t i = 0; i < bit_len_; ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

void BitString::clear_padding() {
  if (bit_len_ & 7) {
    const unsigned used = static_cast<unsigned>(bit_len_ & 7);
    bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - used));
  }
}

}  // namespace uvcark
