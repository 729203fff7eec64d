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

#include "uvcark/machine.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uvcark {

class DescriptorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RestoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The invocation-and-return description (Item E) that tells a future restore
/// application which part is the program, which parts to load as inputs, and
/// in which segments it will find each rendering. Line-oriented ASCII
/// key=value; grammar in docs/descriptor.bnf.
struct InvocationDescriptor {
  std::string program;                                        // part name
  std::vector<std::string> inputs;                            // ordered part names
  std::vector<std::pair<std::string, std::uint64_t>> outputs; // channel name -> segment
  std::vector<std::pair<std::string, std::string>> docs;      // item -> part name
  std::vector<std::string> extras;    // unrecognized lines, preserved verbatim
  std::vector<std::string> warnings;  // one per unrecognized key

  std::optional<std::uint64_t> output_segment(std::string_view channel) const;
};

InvocationDescriptor parse_invocation_descriptor(std::string_view text);

std::string format_invocation_descriptor(const InvocationDescriptor& d);

/// What a restore run produced. Named outputs are assembled per channel as
/// the concatenation, in yield order, of all yields targeting that channel's
/// declared segment; yields on undeclared segments stay in the trace only.
struct RestoreResult {
  StepOutcome outcome;  // Halt or Trap (FuelExhausted included)
  std::vector<std::pair<std::string, BitString>> outputs;  // descriptor order
  std::vector<YieldRecord> trace;
  std::uint64_t steps = 0;

  bool halted() const { return outcome.kind == StepOutcome::Kind::Halt; }
  const BitString* output(std::string_view channel) const;
};

/// Loads the program into segment 0 and each input, untransformed, into
/// segments 1..N; pc starts at the first post-header bit.
MachineState init_state(const ProgramImage& program, std::vector<BitString> inputs,
                        MachineLimits limits = {});

/// Resolves a part name to its bit-string, or nullopt when unknown.
using PartResolver = std::function<std::optional<BitString>(const std::string&)>;

/// The Figure-4 protocol: resolve program and inputs, run under `fuel`,
/// collect renderings. Traps surface in the result with partial outputs
/// retained. Throws RestoreError when a part is unresolvable or the program
/// part is not a valid image.
RestoreResult restore_run(const InvocationDescriptor& descriptor, const PartResolver& parts,
                          std::uint64_t fuel, MachineLimits limits = {});

}  // namespace uvcark
