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

#include "uvcark/disassembler.hpp"

#include "uvcark/machine.hpp"

#include <set>
#include <variant>
#include <vector>

namespace uvcark {

std::string disassemble(const ProgramImage& image) {
  const ProgramHeader& h = image.header();
  const BitString& bits = image.bits();

  struct Line {
    std::uint64_t offset;
    DecodedInstruction insn;
  };
  std::vector<Line> lines;
  std::set<std::uint64_t> starts;
  std::uint64_t pc = kHeaderBits;
  while (pc < bits.size_bits()) {
    auto decoded = decode_instruction(bits, pc, h);
    if (auto* err = std::get_if<DecodeError>(&decoded)) {
      throw DisError(pc, err->detail);
    }
    auto& insn = std::get<DecodedInstruction>(decoded);
    starts.insert(pc);
    lines.push_back({pc, insn});
    pc = insn.next_pc;
  }

  // Branch and call targets that coincide with an instruction boundary get a
  // generated label; anything else stays numeric.
  std::set<std::uint64_t> labeled;
  for (const Line& l : lines) {
    const OpcodeInfo& info = opcode_info(l.insn.op);
    const bool is_branch = l.insn.op == Opcode::BR || l.insn.op == Opcode::BEQ ||
                           l.insn.op == Opcode::BNE || l.insn.op == Opcode::BLT ||
                           l.insn.op == Opcode::BLE || l.insn.op == Opcode::CALL;
    if (!is_branch) continue;
    for (unsigned i = 0; i < info.operand_count; ++i) {
      if (info.kinds[i] != OperandKind::Imm) continue;
      const Int& target = l.insn.operand[i];
      if (fits_u64(target) && starts.count(to_u64(target))) labeled.insert(to_u64(target));
    }
  }

  std::string out;
  out += ".rw " + std::to_string(h.rw) + "\n";
  out += ".iw " + std::to_string(h.iw) + "\n";
  for (const Line& l : lines) {
    if (labeled.count(l.offset)) {
      out += "L" + std::to_string(l.offset) + ":\n";
    }
    const OpcodeInfo& info = opcode_info(l.insn.op);
    const bool is_branch = l.insn.op == Opcode::BR || l.insn.op == Opcode::BEQ ||
                           l.insn.op == Opcode::BNE || l.insn.op == Opcode::BLT ||
                           l.insn.op == Opcode::BLE || l.insn.op == Opcode::CALL;
    out += "    ";
    out += info.mnemonic;
    for (unsigned i = 0; i < info.operand_count; ++i) {
      out += (i == 0) ? " " : ", ";
      if (info.kinds[i] == OperandKind::Reg) {
        out += "r" + l.insn.operand[i].str();
      } else {
        const Int& v = l.insn.operand[i];
        if (is_branch && fits_u64(v) && labeled.count(to_u64(v))) {
          out += "L" + std::to_string(to_u64(v));
        } else {
          out += v.str();
        }
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace uvcark
