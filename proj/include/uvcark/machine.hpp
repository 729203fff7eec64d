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
#include "uvcark/program.hpp"

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace uvcark {

/// Why execution stopped abnormally. The machine definition itself is total
/// and fuel-free; traps make host-side violations observable instead of
/// silently absorbing them.
enum class TrapReason {
  BadOpcode,
  BadPc,
  OutOfBoundsRead,
  DivideByZero,
  NegativeOperand,
  EmptyCallStack,
  FuelExhausted,
  ResourceLimit,
  WriteToProgram,
};

std::string_view to_string(TrapReason r);

struct TrapInfo {
  TrapReason reason;
  std::uint64_t pc = 0;   // bit offset of the trapping instruction
  std::string detail;     // human-readable diagnosis, includes operand values

  bool operator==(const TrapInfo& o) const { return reason == o.reason && pc == o.pc; }
};

/// An output window reported by YIELD: bits [off, off+len) of segment `seg`.
struct Yield {
  Int seg;
  std::uint64_t off = 0;
  std::uint64_t len = 0;

  bool operator==(const Yield&) const = default;
};

struct StepOutcome {
  enum class Kind { Continue, Yield, Halt, Trap };

  Kind kind = Kind::Continue;
  Yield yield;    // set when kind == Yield
  Int halt_code;  // set when kind == Halt
  TrapInfo trap;  // set when kind == Trap

  static StepOutcome cont() { return {}; }
  static StepOutcome yielded(Yield y) { return {Kind::Yield, std::move(y), 0, {}}; }
  static StepOutcome halted(Int code) { return {Kind::Halt, {}, std::move(code), {}}; }
  static StepOutcome trapped(TrapInfo t) { return {Kind::Trap, {}, 0, std::move(t)}; }

  bool terminal() const { return kind == Kind::Halt || kind == Kind::Trap; }
  bool operator==(const StepOutcome& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Yield: return yield == o.yield;
      case Kind::Halt: return halt_code == o.halt_code;
      case Kind::Trap: return trap == o.trap;
      default: return true;
    }
  }
};

/// Registers read as zero until first written. Values are unbounded signed
/// integers; indices are unbounded non-negative integers (dense small indices
/// get a vector fast path).
class RegisterFile {
 public:
  const Int& get(const Int& index) const;
  void set(const Int& index, Int value);

  /// Non-zero registers in index order (canonical form for comparison).
  std::vector<std::pair<Int, Int>> nonzero() const;

  bool operator==(const RegisterFile& other) const { return nonzero() == other.nonzero(); }

 private:
  static constexpr std::uint64_t kDenseLimit = 4096;

  std::vector<Int> dense_;
  std::map<Int, Int> sparse_;
};

/// Host-imposed resource bounds. These are not part of the preserved machine
/// definition: exceeding one traps with ResourceLimit rather than wrapping.
struct MachineLimits {
  std::uint64_t max_segment_bits = 1ull << 30;
  std::uint64_t max_value_bits = 1ull << 24;
  std::uint64_t max_call_depth = 1ull << 20;
  std::uint64_t max_segments = 1ull << 16;
};

struct DecodedInstruction {
  Opcode op;
  std::array<Int, 4> operand;
  unsigned operand_count = 0;
  std::uint64_t next_pc = 0;
};

struct DecodeError {
  TrapReason reason;  // BadOpcode or BadPc
  std::string detail;
};

/// Reads one instruction at bit offset `pc`: a 6-bit opcode, then operand
/// fields of width rw (register) or iw (immediate) per the ISA table.
std::variant<DecodedInstruction, DecodeError> decode_instruction(const BitString& program,
                                                                 std::uint64_t pc,
                                                                 const ProgramHeader& header);

/// The UVC: bit-addressable segmented memory, unbounded registers, a single
/// thread of control stepping one instruction at a time. Segment 0 holds the
/// program and is readable but never writable; input bit-strings are loaded
/// untransformed into segments 1..N.
class MachineState {
 public:
  MachineState(const ProgramImage& program, std::vector<BitString> inputs,
               MachineLimits limits = {});

  /// Executes the instruction at pc. Every attempt counts one step, including
  /// the one that halts or traps. A terminal state replays its outcome.
  StepOutcome step();

  // read_bits / write_bits on segments, with machine semantics: reads past
  // the current end trap, writes extend with zero fill.
  // These power LOAD/STORE and are exposed for hosts and tests.
  std::variant<Int, TrapInfo> read_bits(const Int& seg, const Int& off, const Int& len) const;
  std::optional<TrapInfo> write_bits(const Int& seg, const Int& off, const Int& len,
                                     const Int& value);

  std::uint64_t segment_bits(const Int& seg) const;
  const BitString& segment(const Int& seg) const;
  const std::map<Int, BitString>& segments() const { return segments_; }

  RegisterFile& registers() { return regs_; }
  const RegisterFile& registers() const { return regs_; }

  std::uint64_t pc() const { return pc_; }
  const std::vector<std::uint64_t>& call_stack() const { return call_stack_; }
  std::uint64_t steps_taken() const { return steps_; }
  std::uint64_t input_count() const { return input_count_; }
  const ProgramHeader& header() const { return header_; }
  const MachineLimits& limits() const { return limits_; }

  bool finished() const { return final_.has_value(); }
  const std::optional<StepOutcome>& final_outcome() const { return final_; }

  bool operator==(const MachineState& other) const;

 private:
  StepOutcome execute(const DecodedInstruction& insn);
  StepOutcome trap(TrapReason reason, std::string detail);
  const Int& reg(const DecodedInstruction& insn, unsigned i) const {
    return regs_.get(insn.operand[i]);
  }

  ProgramHeader header_;
  MachineLimits limits_;
  std::map<Int, BitString> segments_;  // [0] = program, read-only to STORE/YIELD
  RegisterFile regs_;
  std::uint64_t pc_ = kHeaderBits;
  std::vector<std::uint64_t> call_stack_;
  std::uint64_t steps_ = 0;
  std::uint64_t input_count_ = 0;
  std::optional<StepOutcome> final_;
};

struct YieldRecord {
  Int seg;
  std::uint64_t off = 0;
  std::uint64_t len = 0;
  BitString bits;  // snapshot taken at yield time

  bool operator==(const YieldRecord&) const = default;
};

struct RunResult {
  StepOutcome outcome;               // Halt or Trap (incl. FuelExhausted)
  std::vector<YieldRecord> yields;   // in execution order
};

using YieldConsumer = std::function<void(const YieldRecord&)>;

/// Iterates step() until Halt or Trap, or until steps_taken reaches `fuel`
/// (then Trap(FuelExhausted) without consuming a step). Yields are snapshot
/// and delivered to `on_yield` in execution order.
RunResult run(MachineState& state, std::uint64_t fuel, const YieldConsumer& on_yield = {});

}  // namespace uvcark
