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

#include "uvcark/oracles.hpp"

#include <algorithm>

namespace uvcark {

BitString RleImage::encode() const {
  BitString bits;
  bits.append_int(8, width);
  bits.append_int(8, height);
  for (const auto& [count, value] : runs) {
    bits.append_int(8, count);
    bits.append_bit(value);
  }
  return bits;
}

RleImage RleImage::decode(const BitString& bits) {
  if (bits.size_bits() < 16) throw OracleError("rle: truncated header");
  RleImage img;
  img.width = static_cast<std::uint8_t>(bits.read_u64(0, 8));
  img.height = static_cast<std::uint8_t>(bits.read_u64(8, 8));
  const std::uint64_t total = std::uint64_t(img.width) * img.height;
  std::uint64_t produced = 0;
  std::uint64_t at = 16;
  while (produced < total) {
    if (at + 9 > bits.size_bits()) throw OracleError("rle: runs end before the image is full");
    const auto count = static_cast<std::uint8_t>(bits.read_u64(at, 8));
    const bool value = bits.bit(at + 8);
    at += 9;
    if (count == 0) throw OracleError("rle: zero-length run");
    if (produced + count > total) throw OracleError("rle: runs overshoot the image");
    img.runs.emplace_back(count, value);
    produced += count;
  }
  if (at != bits.size_bits()) throw OracleError("rle: trailing bits after the final run");
  return img;
}

std::string rle_decode_oracle(const BitString& encoded) {
  const RleImage img = RleImage::decode(encoded);
  std::string out = "P1\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
  std::uint64_t col = 0;
  for (const auto& [count, value] : img.runs) {
    for (unsigned i = 0; i < count; ++i) {
      out.push_back(value ? '1' : '0');
      if (++col == img.width) {
        out.push_back('\n');
        col = 0;
      } else {
        out.push_back(' ');
      }
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  if (text.empty()) throw OracleError("csv: empty input");
  if (text.back() != '\n') throw OracleError("csv: every line must end with a newline");
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  for (char c : text) {
    if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      cell.push_back(c);
    }
  }
  const std::size_t ncols = rows.front().size();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) {
      throw OracleError("csv: row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " fields, header has " +
                        std::to_string(ncols));
    }
  }
  return rows;
}

}  // namespace

std::string table_render_oracle(std::string_view csv_text, TableChannel channel) {
  const auto rows = parse_csv(csv_text);
  const std::size_t ncols = rows.front().size();

  if (channel == TableChannel::FixedWidth) {
    std::vector<std::size_t> width(ncols, 0);
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < ncols; ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < ncols; ++c) {
        if (c > 0) out.push_back(' ');
        out += row[c];
        out.append(width[c] - row[c].size(), ' ');
      }
      out.push_back('\n');
    }
    return out;
  }

  std::string columns;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (c > 0) columns.push_back(',');
    columns += rows.front()[c];
  }
  std::string out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    out += "INSERT INTO t (" + columns + ") VALUES (";
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c > 0) out.push_back(',');
      out += "'" + rows[i][c] + "'";
    }
    out += ");\n";
  }
  return out;
}

M8Result m8_run_oracle(std::span<const std::uint8_t> program, std::uint64_t fuel) {
  if (program.size() > 256) throw OracleError("m8: program exceeds 256 bytes");
  M8Machine m;
  std::copy(program.begin(), program.end(), m.memory.begin());
  M8Result result;
  for (std::uint64_t step = 0; step < fuel; ++step) {
    const std::uint8_t opcode = m.memory[m.pc];
    const std::uint8_t operand = m.memory[static_cast<std::uint8_t>(m.pc + 1)];
    switch (opcode) {
      case 0:  // HLT
        m.halted = true;
        result.output = m.output;
        result.status = M8Status::Halted;
        return result;
      case 1:  // LDA
        m.acc = m.memory[operand];
        m.pc = static_cast<std::uint8_t>(m.pc + 2);
        break;
      case 2:  // STA
        m.memory[operand] = m.acc;
        m.pc = static_cast<std::uint8_t>(m.pc + 2);
        break;
      case 3:  // ADD
        m.acc = static_cast<std::uint8_t>(m.acc + m.memory[operand]);
        m.pc = static_cast<std::uint8_t>(m.pc + 2);
        break;
      case 4:  // JMP
        m.pc = operand;
        break;
      case 5:  // JZ
        m.pc = (m.acc == 0) ? operand : static_cast<std::uint8_t>(m.pc + 2);
        break;
      case 6:  // OUT
        m.output.push_back(m.acc);
        m.pc = static_cast<std::uint8_t>(m.pc + 2);
        break;
      default:
        result.output = m.output;
        result.status = M8Status::BadOpcode;
        return result;
    }
  }
  result.output = m.output;
  result.status = M8Status::FuelExhausted;
  return result;
}

}  // namespace uvcark
