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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Host-side reference implementations of the shipped demo formats. Each runs
// on a completely separate code path from the UVC programs that render the
// same formats, so the two can be compared bit for bit.

namespace uvcark {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run-length encoded bi-level image: 8-bit width, 8-bit height, then runs of
/// (8-bit count > 0, 1-bit value). Counts must sum to exactly width*height
/// and nothing may follow the final run.
struct RleImage {
  std::uint8_t width = 0;
  std::uint8_t height = 0;
  std::vector<std::pair<std::uint8_t, bool>> runs;

  BitString encode() const;
  static RleImage decode(const BitString& bits);  // throws OracleError
};

/// Renders an encoded RleImage as PBM-style ASCII: "P1\n<w> <h>\n" then one
/// line per row of space-separated 0/1 digits.
std::string rle_decode_oracle(const BitString& encoded);

enum class TableChannel { FixedWidth, DbLoad };

/// Renders restricted CSV (first line = column names; no quotes, commas or
/// newlines inside cells; every line newline-terminated). FixedWidth pads
/// each cell to its column's widest cell, single space between columns.
/// DbLoad emits one INSERT statement per data row.
std::string table_render_oracle(std::string_view csv_text, TableChannel channel);

enum class M8Status { Halted, FuelExhausted, BadOpcode };

/// The toy legacy machine: 256 bytes of memory, an 8-bit accumulator, an
/// 8-bit wrapping pc, two-byte instructions (opcode, operand):
///   0 HLT · 1 LDA a · 2 STA a · 3 ADD a (mod 256) · 4 JMP a · 5 JZ a · 6 OUT
struct M8Machine {
  std::array<std::uint8_t, 256> memory{};
  std::uint8_t acc = 0;
  std::uint8_t pc = 0;
  std::vector<std::uint8_t> output;
  bool halted = false;
};

struct M8Result {
  std::vector<std::uint8_t> output;
  M8Status status = M8Status::Halted;
};

/// Executes at most `fuel` M8 instructions of `program` loaded at address 0.
/// Throws OracleError when the program exceeds 256 bytes.
M8Result m8_run_oracle(std::span<const std::uint8_t> program, std::uint64_t fuel);

}  // namespace uvcark
