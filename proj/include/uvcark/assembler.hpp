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

#include <cstddef>
#include <map>
#include <string>

namespace uvcark {

class AsmError : public std::runtime_error {
 public:
  AsmError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                           message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct AssemblyListing {
  struct Entry {
    std::size_t line;           // 1-based source line
    std::uint64_t bit_offset;   // where the opcode begins
    std::uint64_t bit_length;
  };
  std::vector<Entry> instructions;
  std::map<std::string, std::uint64_t> labels;  // label -> bit offset
};

struct AssembledProgram {
  ProgramImage image;
  AssemblyListing listing;
};

/// Two-pass assembly of `.uvca` text (grammar in docs/uvca.bnf). Pass 1 sizes
/// instructions and assigns label offsets; pass 2 emits bits. Without `.rw` /
/// `.iw` directives the smallest widths that fit every register index and
/// immediate (label offsets included) are chosen and recorded in the header.
AssembledProgram assemble(std::string_view source);

}  // namespace uvcark
