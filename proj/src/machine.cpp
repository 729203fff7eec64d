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

#include "uvcark/machine.hpp"

#include <cassert>

namespace uvcark {

std::string_view to_string(TrapReason r) {
  switch (r) {
    case TrapReason::BadOpcode: return "BadOpcode";
    case TrapReason::BadPc: return "BadPc";
    case TrapReason::OutOfBoundsRead: return "OutOfBoundsRead";
    case TrapReason::DivideByZero: return "DivideByZero";
    case TrapReason::NegativeOperand: return "NegativeOperand";
    case TrapReason::EmptyCallStack: return "EmptyCallStack";
    case TrapReason::FuelExhausted: return "FuelExhausted";
    case TrapReason::ResourceLimit: return "ResourceLimit";
    case TrapReason::WriteToProgram: return "WriteToProgram";
  }
  return "?";
}

namespace {

const Int kZero = 0;
const BitString kEmptySegment;

}  // namespace

const Int& RegisterFile::get(const Int& index) const {
  if (fits_u64(index)) {
    const std::uint64_t i = to_u64(index);
    if (i < kDenseLimit) {
      return i < dense_.size() ? dense_[i] : kZero;
    }
  }
  auto it = sparse_.find(index);
  return it == sparse_.end() ? kZero : it->second;
}

void RegisterFile::set(const Int& index, Int value) {
  if (fits_u64(index)) {
    const std::uint64_t i = to_u64(index);
    if (i < kDenseLimit) {
      if (i >= dense_.size()) dense_.resize(i + 1);
      dense_[i] = std::move(value);
      return;
    }
  }
  sparse_[index] = std::move(value);
}

std::vector<std::pair<Int, Int>> RegisterFile::nonzero() const {
  std::vector<std::pair<Int, Int>> out;
  for (std::size_t i = 0; i < dense_.size(); ++i) {
    if (dense_[i] != 0) out.emplace_back(Int(i), dense_[i]);
  }
  for (const auto& [k, v] : sparse_) {
    if (v != 0) out.emplace_back(k, v);
  }
  return out;
}

std::variant<DecodedInstruction, DecodeError> decode_instruction(const BitString& program,
                                                                 std::uint64_t pc,
                                                                 const ProgramHeader& header) {
  const std::uint64_t end = program.size_bits();
  if (pc >= end || pc + kOpcodeBits > end) {
    return DecodeError{TrapReason::BadPc,
                       "pc " + std::to_string(pc) + " runs past program end (" +
                           std::to_string(end) + " bits)"};
  }
  const std::uint64_t raw = program.read_u64(pc, kOpcodeBits);
  if (raw >= kOpcodeCount) {
    return DecodeError{TrapReason::BadOpcode,
                       "opcode " + std::to_string(raw) + " at bit " + std::to_string(pc)};
  }
  DecodedInstruction insn;
  insn.op = static_cast<Opcode>(raw);
  const OpcodeInfo& info = opcode_info(insn.op);
  insn.operand_count = info.operand_count;
  std::uint64_t cursor = pc + kOpcodeBits;
  for (unsigned i = 0; i < info.operand_count; ++i) {
    const unsigned width = (info.kinds[i] == OperandKind::Reg) ? header.rw : header.iw;
    if (cursor + width > end) {
      return DecodeError{TrapReason::BadPc,
                         "instruction at bit " + std::to_string(pc) + " truncated"};
    }
    insn.operand[i] = (width <= 64) ? Int(program.read_u64(cursor, width))
                                    : program.read_int(cursor, width);
    cursor += width;
  }
  insn.next_pc = cursor;
  return insn;
}

MachineState::MachineState(const ProgramImage& program, std::vector<BitString> inputs,
                           MachineLimits limits)
    : header_(program.header()), limits_(limits), input_count_(inputs.size()) {
  segments_[0] = program.bits();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    segments_[Int(i + 1)] = std::move(inputs[i]);
  }
}

std::uint64_t MachineState::segment_bits(const Int& seg) const {
  auto it = segments_.find(seg);
  return it == segments_.end() ? 0 : it->second.size_bits();
}

const BitString& MachineState::segment(const Int& seg) const {
  auto it = segments_.find(seg);
  return it == segments_.end() ? kEmptySegment : it->second;
}

std::variant<Int, TrapInfo> MachineState::read_bits(const Int& seg, const Int& off,
                                                    const Int& len) const {
  if (seg < 0 || off < 0 || len < 0) {
    return TrapInfo{TrapReason::NegativeOperand, pc_,
                    "read_bits(" + seg.str() + ", " + off.str() + ", " + len.str() + ")"};
  }
  if (len > limits_.max_value_bits) {
    return TrapInfo{TrapReason::ResourceLimit, pc_, "read of " + len.str() + " bits"};
  }
  const std::uint64_t available = segment_bits(seg);
  if (off + len > available) {
    return TrapInfo{TrapReason::OutOfBoundsRead, pc_,
                    "segment " + seg.str() + ": [" + off.str() + ", " + (off + len).str() +
                        ") exceeds length " + std::to_string(available)};
  }
  if (len == 0) return Int(0);
  return segment(seg).read_int(to_u64(off), to_u64(len));
}

std::optional<TrapInfo> MachineState::write_bits(const Int& seg, const Int& off, const Int& len,
                                                 const Int& value) {
  if (seg < 0 || off < 0 || len < 0) {
    return TrapInfo{TrapReason::NegativeOperand, pc_,
                    "write_bits(" + seg.str() + ", " + off.str() + ", " + len.str() + ")"};
  }
  if (seg == 0) {
    return TrapInfo{TrapReason::WriteToProgram, pc_, "STORE to segment 0"};
  }
  if (value < 0 || bit_width(value) > len) {
    return TrapInfo{TrapReason::NegativeOperand, pc_,
                    "value " + value.str() + " not in [0, 2^" + len.str() + ")"};
  }
  if (off + len > limits_.max_segment_bits) {
    return TrapInfo{TrapReason::ResourceLimit, pc_,
                    "segment would grow to " + (off + len).str() + " bits"};
  }
  auto it = segments_.find(seg);
  if (it == segments_.end()) {
    if (segments_.size() >= limits_.max_segments) {
      return TrapInfo{TrapReason::ResourceLimit, pc_, "too many segments"};
    }
    it = segments_.emplace(seg, BitString{}).first;
  }
  if (len == 0) return std::nullopt;
  it->second.write_int(to_u64(off), to_u64(len), value);
  return std::nullopt;
}

StepOutcome MachineState::trap(TrapReason reason, std::string detail) {
  StepOutcome out = StepOutcome::trapped(TrapInfo{reason, pc_, std::move(detail)});
  final_ = out;
  return out;
}

StepOutcome MachineState::step() {
  if (final_) return *final_;
  const BitString& program = segments_.at(0);
  auto decoded = decode_instruction(program, pc_, header_);
  ++steps_;
  if (auto* err = std::get_if<DecodeError>(&decoded)) {
    StepOutcome out = StepOutcome::trapped(TrapInfo{err->reason, pc_, std::move(err->detail)});
    final_ = out;
    return out;
  }
  return execute(std::get<DecodedInstruction>(decoded));
}

StepOutcome MachineState::execute(const DecodedInstruction& insn) {
  // Commits a register result, trapping instead when it exceeds the host
  // value-size limit.
  auto commit = [&](const Int& dst, Int value) -> StepOutcome {
    if (bit_width(value) > limits_.max_value_bits) {
      return trap(TrapReason::ResourceLimit,
                  "value of " + std::to_string(bit_width(value)) + " bits in register " +
                      dst.str());
    }
    regs_.set(dst, std::move(value));
    pc_ = insn.next_pc;
    return StepOutcome::cont();
  };
  // Branch targets are absolute bit offsets in segment 0, unaligned allowed.
  // A target beyond the program is reported here; a target at the exact end
  // is reported by the next fetch.
  auto jump = [&](const Int& target) -> StepOutcome {
    if (target > segments_.at(0).size_bits()) {
      return trap(TrapReason::BadPc, "branch target " + target.str() + " beyond program end");
    }
    pc_ = to_u64(target);
    return StepOutcome::cont();
  };

  switch (insn.op) {
    case Opcode::HALT: {
      StepOutcome out = StepOutcome::halted(reg(insn, 0));
      final_ = out;
      return out;
    }
    case Opcode::NOP:
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    case Opcode::LOADI:
      return commit(insn.operand[0], insn.operand[1]);
    case Opcode::LOADN:
      return commit(insn.operand[0], -insn.operand[1]);
    case Opcode::MOVE:
      return commit(insn.operand[0], reg(insn, 1));
    case Opcode::ADD:
      return commit(insn.operand[0], reg(insn, 1) + reg(insn, 2));
    case Opcode::SUB:
      return commit(insn.operand[0], reg(insn, 1) - reg(insn, 2));
    case Opcode::MUL:
      return commit(insn.operand[0], reg(insn, 1) * reg(insn, 2));
    case Opcode::DIV: {
      const Int& b = reg(insn, 2);
      if (b == 0) return trap(TrapReason::DivideByZero, "DIV by zero");
      return commit(insn.operand[0], reg(insn, 1) / b);  // cpp_int truncates toward zero
    }
    case Opcode::REM: {
      const Int& b = reg(insn, 2);
      if (b == 0) return trap(TrapReason::DivideByZero, "REM by zero");
      return commit(insn.operand[0], reg(insn, 1) % b);  // sign follows the dividend
    }
    case Opcode::AND:
    case Opcode::OR:
    case Opcode::XOR: {
      const Int& a = reg(insn, 1);
      const Int& b = reg(insn, 2);
      if (a < 0 || b < 0) {
        return trap(TrapReason::NegativeOperand,
                    "bitwise op on " + a.str() + ", " + b.str());
      }
      Int r = (insn.op == Opcode::AND) ? Int(a & b) : (insn.op == Opcode::OR) ? Int(a | b) : Int(a ^ b);
      return commit(insn.operand[0], std::move(r));
    }
    case Opcode::NOTL: {
      const Int s = reg(insn, 1);
      const Int& len = reg(insn, 2);
      if (s < 0 || len < 0) {
        return trap(TrapReason::NegativeOperand, "NOTL on " + s.str() + ", len " + len.str());
      }
      if (len > limits_.max_value_bits) {
        return trap(TrapReason::ResourceLimit, "NOTL width " + len.str());
      }
      const Int mask = (Int(1) << to_u64(len)) - 1;
      return commit(insn.operand[0], mask ^ (s & mask));
    }
    case Opcode::SHL: {
      const Int s = reg(insn, 1);
      const Int& k = reg(insn, 2);
      if (k < 0) return trap(TrapReason::NegativeOperand, "SHL by " + k.str());
      if (k > limits_.max_value_bits || bit_width(s) + to_u64(k) > limits_.max_value_bits) {
        return trap(TrapReason::ResourceLimit, "SHL result too wide");
      }
      const std::uint64_t kk = to_u64(k);
      Int r = (s < 0) ? Int(-(Int(-s) << kk)) : Int(s << kk);
      return commit(insn.operand[0], std::move(r));
    }
    case Opcode::SHR: {
      const Int s = reg(insn, 1);
      const Int& k = reg(insn, 2);
      if (s < 0 || k < 0) {
        return trap(TrapReason::NegativeOperand, "SHR of " + s.str() + " by " + k.str());
      }
      if (k >= bit_width(s)) return commit(insn.operand[0], Int(0));
      return commit(insn.operand[0], Int(s >> to_u64(k)));
    }
    case Opcode::LOAD: {
      auto r = read_bits(reg(insn, 1), reg(insn, 2), reg(insn, 3));
      if (auto* t = std::get_if<TrapInfo>(&r)) {
        StepOutcome out = StepOutcome::trapped(*t);
        final_ = out;
        return out;
      }
      return commit(insn.operand[0], std::move(std::get<Int>(r)));
    }
    case Opcode::STORE: {
      if (auto t = write_bits(reg(insn, 1), reg(insn, 2), reg(insn, 3), reg(insn, 0))) {
        StepOutcome out = StepOutcome::trapped(*t);
        final_ = out;
        return out;
      }
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    }
    case Opcode::SEGLEN: {
      const Int& seg = reg(insn, 1);
      if (seg < 0) return trap(TrapReason::NegativeOperand, "SEGLEN of segment " + seg.str());
      return commit(insn.operand[0], Int(segment_bits(seg)));
    }
    case Opcode::BR:
      return jump(insn.operand[0]);
    case Opcode::BEQ:
      if (reg(insn, 0) == reg(insn, 1)) return jump(insn.operand[2]);
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    case Opcode::BNE:
      if (reg(insn, 0) != reg(insn, 1)) return jump(insn.operand[2]);
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    case Opcode::BLT:
      if (reg(insn, 0) < reg(insn, 1)) return jump(insn.operand[2]);
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    case Opcode::BLE:
      if (reg(insn, 0) <= reg(insn, 1)) return jump(insn.operand[2]);
      pc_ = insn.next_pc;
      return StepOutcome::cont();
    case Opcode::CALL: {
      if (call_stack_.size() >= limits_.max_call_depth) {
        return trap(TrapReason::ResourceLimit, "call stack depth " +
                                                   std::to_string(call_stack_.size()));
      }
      const std::uint64_t resume = insn.next_pc;
      StepOutcome out = jump(insn.operand[0]);
      if (out.kind == StepOutcome::Kind::Continue) call_stack_.push_back(resume);
      return out;
    }
    case Opcode::RET: {
      if (call_stack_.empty()) return trap(TrapReason::EmptyCallStack, "RET with empty stack");
      pc_ = call_stack_.back();
      call_stack_.pop_back();
      return StepOutcome::cont();
    }
    case Opcode::YIELD: {
      const Int& seg = reg(insn, 0);
      const Int& off = reg(insn, 1);
      const Int& len = reg(insn, 2);
      if (seg < 0 || off < 0 || len < 0) {
        return trap(TrapReason::NegativeOperand,
                    "YIELD(" + seg.str() + ", " + off.str() + ", " + len.str() + ")");
      }
      if (seg == 0) return trap(TrapReason::WriteToProgram, "YIELD of segment 0");
      if (off + len > segment_bits(seg)) {
        return trap(TrapReason::OutOfBoundsRead,
                    "YIELD [" + off.str() + ", " + (off + len).str() + ") of segment " +
                        seg.str());
      }
      Yield y{seg, to_u64(off), to_u64(len)};
      pc_ = insn.next_pc;
      return StepOutcome::yielded(std::move(y));
    }
    case Opcode::INCNT:
      return commit(insn.operand[0], Int(input_count_));
  }
  assert(false && "unreachable: decode rejects opcodes >= 28");
  return trap(TrapReason::BadOpcode, "unreachable");
}

bool MachineState::operator==(const MachineState& other) const {
  if (pc_ != other.pc_ || steps_ != other.steps_ || input_count_ != other.input_count_ ||
      call_stack_ != other.call_stack_ || !(regs_ == other.regs_) || final_ != other.final_) {
    return false;
  }
  // An absent segment is indistinguishable from an empty one.
  auto nonempty = [](const std::map<Int, BitString>& m) {
    std::vector<std::pair<Int, const BitString*>> v;
    for (const auto& [k, s] : m) {
      if (!s.empty()) v.emplace_back(k, &s);
    }
    return v;
  };
  const auto a = nonempty(segments_);
  const auto b = nonempty(other.segments_);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first || !(*a[i].second == *b[i].second)) return false;
  }
  return true;
}

RunResult run(MachineState& state, std::uint64_t fuel, const YieldConsumer& on_yield) {
  RunResult result;
  while (true) {
    if (state.finished()) {
      result.outcome = *state.final_outcome();
      return result;
    }
    if (state.steps_taken() >= fuel) {
      result.outcome = StepOutcome::trapped(
          TrapInfo{TrapReason::FuelExhausted, state.pc(),
                   "fuel exhausted after " + std::to_string(state.steps_taken()) + " steps"});
      return result;
    }
    StepOutcome out = state.step();
    switch (out.kind) {
      case StepOutcome::Kind::Continue:
        break;
      case StepOutcome::Kind::Yield: {
        YieldRecord rec{out.yield.seg, out.yield.off, out.yield.len,
                        state.segment(out.yield.seg).slice(out.yield.off, out.yield.len)};
        if (on_yield) on_yield(rec);
        result.yields.push_back(std::move(rec));
        break;
      }
      case StepOutcome::Kind::Halt:
      case StepOutcome::Kind::Trap:
        result.outcome = out;
        return result;
    }
  }
}

}  // namespace uvcark
