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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace uvcark {

// The instruction set. 28 opcodes in a 6-bit field; 28..63 are reserved and
// decode as BadOpcode. Full semantics are documented in docs/isa.md.
enum class Opcode : std::uint8_t {
  HALT = 0,   // HALT r       stop; exit code = r
  NOP = 1,    // NOP
  LOADI = 2,  // LOADI r, i   r := i
  LOADN = 3,  // LOADN r, i   r := -i
  MOVE = 4,   // MOVE rd, rs
  ADD = 5,    // ADD rd, ra, rb
  SUB = 6,    // SUB rd, ra, rb
  MUL = 7,    // MUL rd, ra, rb
  DIV = 8,    // DIV rd, ra, rb   truncates toward zero
  REM = 9,    // REM rd, ra, rb   remainder has the dividend's sign
  AND = 10,   // AND rd, ra, rb   operands must be non-negative
  OR = 11,    // OR rd, ra, rb    operands must be non-negative
  XOR = 12,   // XOR rd, ra, rb   operands must be non-negative
  NOTL = 13,  // NOTL rd, rs, rlen   rd := (2^len - 1) XOR (rs mod 2^len)
  SHL = 14,   // SHL rd, rs, rk   rd := rs * 2^rk, rk >= 0
  SHR = 15,   // SHR rd, rs, rk   rd := floor(rs / 2^rk), rs, rk >= 0
  LOAD = 16,  // LOAD rd, rseg, roff, rlen
  STORE = 17, // STORE rs, rseg, roff, rlen
  SEGLEN = 18,// SEGLEN rd, rseg
  BR = 19,    // BR i         pc := i (absolute bit offset in segment 0)
  BEQ = 20,   // BEQ ra, rb, i
  BNE = 21,   // BNE ra, rb, i
  BLT = 22,   // BLT ra, rb, i   signed
  BLE = 23,   // BLE ra, rb, i   signed
  CALL = 24,  // CALL i       push pc-after, jump
  RET = 25,   // RET          pop and jump
  YIELD = 26, // YIELD rseg, roff, rlen   report an output window
  INCNT = 27, // INCNT r      r := number of input segments
};

constexpr std::size_t kOpcodeCount = 28;
constexpr unsigned kOpcodeBits = 6;
constexpr std::uint64_t kHeaderBits = 40;
constexpr std::uint16_t kMagic = 0x5556;  // "UV"
constexpr std::uint8_t kFormatVersion = 1;

enum class OperandKind : std::uint8_t { Reg, Imm };

struct OpcodeInfo {
  std::string_view mnemonic;
  unsigned operand_count;
  std::array<OperandKind, 4> kinds;
};

const OpcodeInfo& opcode_info(Opcode op);

/// Case-insensitive mnemonic lookup; nullopt for unknown mnemonics.
std::optional<Opcode> opcode_from_mnemonic(std::string_view mnemonic);

/// Bit length of one encoded instruction under the given field widths.
std::uint64_t instruction_bits(Opcode op, unsigned rw, unsigned iw);

}  // namespace uvcark
