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

#include "uvcark/isa.hpp"

#include <cctype>

namespace uvcark {

namespace {

constexpr OperandKind R = OperandKind::Reg;
constexpr OperandKind I = OperandKind::Imm;

constexpr std::array<OpcodeInfo, kOpcodeCount> kIsaTable = {{
    {"HALT", 1, {R, R, R, R}},
    {"NOP", 0, {R, R, R, R}},
    {"LOADI", 2, {R, I, R, R}},
    {"LOADN", 2, {R, I, R, R}},
    {"MOVE", 2, {R, R, R, R}},
    {"ADD", 3, {R, R, R, R}},
    {"SUB", 3, {R, R, R, R}},
    {"MUL", 3, {R, R, R, R}},
    {"DIV", 3, {R, R, R, R}},
    {"REM", 3, {R, R, R, R}},
    {"AND", 3, {R, R, R, R}},
    {"OR", 3, {R, R, R, R}},
    {"XOR", 3, {R, R, R, R}},
    {"NOTL", 3, {R, R, R, R}},
    {"SHL", 3, {R, R, R, R}},
    {"SHR", 3, {R, R, R, R}},
    {"LOAD", 4, {R, R, R, R}},
    {"STORE", 4, {R, R, R, R}},
    {"SEGLEN", 2, {R, R, R, R}},
    {"BR", 1, {I, R, R, R}},
    {"BEQ", 3, {R, R, I, R}},
    {"BNE", 3, {R, R, I, R}},
    {"BLT", 3, {R, R, I, R}},
    {"BLE", 3, {R, R, I, R}},
    {"CALL", 1, {I, R, R, R}},
    {"RET", 0, {R, R, R, R}},
    {"YIELD", 3, {R, R, R, R}},
    {"INCNT", 1, {R, R, R, R}},
}};

}  // namespace

const OpcodeInfo& opcode_info(Opcode op) {
  return kIsaTable[static_cast<std::size_t>(op)];
}

std::optional<Opcode> opcode_from_mnemonic(std::string_view mnemonic) {
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    const std::string_view name = kIsaTable[i].mnemonic;
    if (name.size() != mnemonic.size()) continue;
    bool match = true;
    for (std::size_t j = 0; j < name.size(); ++j) {
      if (std::toupper(static_cast<unsigned char>(mnemonic[j])) != name[j]) {
        match = false;
        break;
      }
    }
    if (match) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

std::uint64_t instruction_bits(Opcode op, unsigned rw, unsigned iw) {
  const OpcodeInfo& info = opcode_info(op);
  std::uint64_t bits = kOpcodeBits;
  for (unsigned i = 0; i < info.operand_count; ++i) {
    bits += (info.kinds[i] == OperandKind::Reg) ? rw : iw;
  }
  return bits;
}

}  // namespace uvcark
