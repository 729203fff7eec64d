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

#include "uvcark/program.hpp"

#include <string>

namespace uvcark {

class DisError : public std::runtime_error {
 public:
  DisError(std::uint64_t bit_offset, const std::string& message)
      : std::runtime_error("bit " + std::to_string(bit_offset) + ": " + message),
        bit_offset_(bit_offset) {}

  std::uint64_t bit_offset() const { return bit_offset_; }

 private:
  std::uint64_t bit_offset_;
};

/// Emits canonical assembly: explicit `.rw`/`.iw`, uppercase mnemonics, one
/// instruction per line, and a generated `L<bitoffset>` label at every branch
/// or call target that lands on an instruction boundary. Assembling the
/// result reproduces the image bit for bit.
std::string disassemble(const ProgramImage& image);

}  // namespace uvcark
