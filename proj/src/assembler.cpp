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

#include "uvcark/assembler.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace uvcark {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Operand {
  enum class Kind { Reg, Number, Label } kind;
  Int value;          // register index or numeric immediate
  std::string label;  // when kind == Label
  std::size_t column;
};

struct Statement {
  std::size_t line;
  Opcode op;
  std::vector<Operand> operands;
};

// One source line, split into an optional label, an optional statement or
// directive, and nothing else.
class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size() || text_[pos_] == ';';
  }

  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw AsmError(line_, column(), msg); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    if (!is_ident_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Int number() {
    skip_ws();
    std::size_t start = pos_;
    Int v = 0;
    if (text_.substr(pos_).starts_with("0x") || text_.substr(pos_).starts_with("0X")) {
      pos_ += 2;
      if (pos_ >= text_.size() || !std::isxdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected hex digits after 0x");
      }
      while (pos_ < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_]))) {
        const char c = text_[pos_++];
        const int d = std::isdigit(static_cast<unsigned char>(c))
                          ? c - '0'
                          : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        v = v * 16 + d;
      }
    } else {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_++] - '0');
      }
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  Operand operand() {
    skip_ws();
    Operand op;
    op.column = column();
    const char c = peek();
    if ((c == 'r' || c == 'R') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      op.kind = Operand::Kind::Reg;
      op.value = number();
      return op;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      op.kind = Operand::Kind::Number;
      op.value = number();
      return op;
    }
    if (is_ident_start(c)) {
      op.kind = Operand::Kind::Label;
      op.label = ident();
      return op;
    }
    fail("expected register, number, or label");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct ParsedSource {
  std::optional<unsigned> rw, iw;
  std::vector<Statement> statements;
  std::map<std::string, std::size_t> label_to_index;  // label -> statement index (may be == size)
};

ParsedSource parse(std::string_view source) {
  ParsedSource out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_instruction = false;
  while (pos <= source.size()) {
    const std::size_t eol = source.find('\n', pos);
    const std::string_view raw =
        source.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? source.size() + 1 : eol + 1;
    ++line_no;

    LineParser lp(raw, line_no);
    if (lp.at_end()) continue;

    // Directive?
    if (lp.consume('.')) {
      const std::string name = lp.ident();
      if (name != "rw" && name != "iw") lp.fail("unknown directive ." + name);
      if (saw_instruction) lp.fail("." + name + " must precede all instructions");
      const Int v = lp.number();
      if (v < 1 || v > 255) lp.fail("." + name + " must be 1..255");
      auto& slot = (name == "rw") ? out.rw : out.iw;
      if (slot.has_value()) lp.fail("duplicate ." + name + " directive");
      slot = static_cast<unsigned>(to_u64(v));
      if (!lp.at_end()) lp.fail("trailing text after directive");
      continue;
    }

    // Optional label.
    std::string first = lp.ident();
    if (lp.consume(':')) {
      if (out.label_to_index.count(first)) lp.fail("duplicate label '" + first + "'");
      out.label_to_index[first] = out.statements.size();
      if (lp.at_end()) continue;
      first = lp.ident();
    }

    // Instruction.
    const auto op = opcode_from_mnemonic(first);
    if (!op) lp.fail("unknown mnemonic '" + first + "'");
    const OpcodeInfo& info = opcode_info(*op);
    Statement st;
    st.line = line_no;
    st.op = *op;
    for (unsigned i = 0; i < info.operand_count; ++i) {
      if (i > 0 && !lp.consume(',')) {
        lp.fail(std::string(info.mnemonic) + " takes " + std::to_string(info.operand_count) +
                " operands");
      }
      Operand o = lp.operand();
      if (info.kinds[i] == OperandKind::Reg && o.kind != Operand::Kind::Reg) {
        throw AsmError(line_no, o.column,
                       std::string(info.mnemonic) + " operand " + std::to_string(i + 1) +
                           " must be a register");
      }
      if (info.kinds[i] == OperandKind::Imm && o.kind == Operand::Kind::Reg) {
        throw AsmError(line_no, o.column,
                       std::string(info.mnemonic) + " operand " + std::to_string(i + 1) +
                           " must be an immediate or label");
      }
      st.operands.push_back(std::move(o));
    }
    if (!lp.at_end()) {
      if (lp.consume(',')) {
        lp.fail(std::string(info.mnemonic) + " takes " + std::to_string(info.operand_count) +
                " operand(s)");
      }
      lp.fail("trailing text after instruction");
    }
    out.statements.push_back(std::move(st));
    saw_instruction = true;
  }
  return out;
}

// Bit offsets of every statement under the given widths; the final entry is
// the total program length (also the offset of any trailing label).
std::vector<std::uint64_t> layout(const std::vector<Statement>& sts, unsigned rw, unsigned iw) {
  std::vector<std::uint64_t> offsets(sts.size() + 1);
  std::uint64_t at = kHeaderBits;
  for (std::size_t i = 0; i < sts.size(); ++i) {
    offsets[i] = at;
    at += instruction_bits(sts[i].op, rw, iw);
  }
  offsets[sts.size()] = at;
  return offsets;
}

}  // namespace

AssembledProgram assemble(std::string_view source) {
  ParsedSource src = parse(source);

  // Every referenced label must be defined.
  for (const Statement& st : src.statements) {
    for (const Operand& o : st.operands) {
      if (o.kind == Operand::Kind::Label && !src.label_to_index.count(o.label)) {
        throw AsmError(st.line, o.column, "undefined label '" + o.label + "'");
      }
    }
  }

  // Register width: smallest that fits the largest index, unless declared.
  Int max_reg = 0;
  Int max_imm_literal = 0;
  for (const Statement& st : src.statements) {
    for (const Operand& o : st.operands) {
      if (o.kind == Operand::Kind::Reg && o.value > max_reg) max_reg = o.value;
      if (o.kind == Operand::Kind::Number && o.value > max_imm_literal) {
        max_imm_literal = o.value;
      }
    }
  }
  const unsigned rw_needed = static_cast<unsigned>(std::max<std::uint64_t>(1, bit_width(max_reg)));
  unsigned rw = src.rw.value_or(rw_needed);
  if (bit_width(max_reg) > rw) {
    throw AsmError(1, 1,
                   "register index " + max_reg.str() + " does not fit .rw " + std::to_string(rw));
  }

  // Immediate width: label offsets depend on instruction sizes, which depend
  // on iw, so probe widths in increasing order and keep the first that fits.
  auto imm_fits = [&](unsigned iw, const std::vector<std::uint64_t>& offsets,
                      const Statement** bad_st, const Operand** bad_op) {
    for (const Statement& st : src.statements) {
      for (const Operand& o : st.operands) {
        if (o.kind == Operand::Kind::Reg) continue;
        const Int v = (o.kind == Operand::Kind::Number)
                          ? o.value
                          : Int(offsets[src.label_to_index.at(o.label)]);
        if (bit_width(v) > iw) {
          *bad_st = &st;
          *bad_op = &o;
          return false;
        }
      }
    }
    return true;
  };

  unsigned iw = 0;
  std::vector<std::uint64_t> offsets;
  const Statement* bad_st = nullptr;
  const Operand* bad_op = nullptr;
  if (src.iw) {
    iw = *src.iw;
    offsets = layout(src.statements, rw, iw);
    if (!imm_fits(iw, offsets, &bad_st, &bad_op)) {
      throw AsmError(bad_st->line, bad_op->column,
                     "operand does not fit .iw " + std::to_string(iw));
    }
  } else {
    unsigned probe = static_cast<unsigned>(std::max<std::uint64_t>(1, bit_width(max_imm_literal)));
    for (; probe <= 255; ++probe) {
      offsets = layout(src.statements, rw, probe);
      if (imm_fits(probe, offsets, &bad_st, &bad_op)) {
        iw = probe;
        break;
      }
    }
    if (iw == 0) {
      throw AsmError(bad_st->line, bad_op->column, "no immediate width up to 255 bits fits");
    }
  }

  // Emit.
  BitString bits;
  bits.append_int(16, kMagic);
  bits.append_int(8, kFormatVersion);
  bits.append_int(8, rw);
  bits.append_int(8, iw);
  AssemblyListing listing;
  for (std::size_t i = 0; i < src.statements.size(); ++i) {
    const Statement& st = src.statements[i];
    const OpcodeInfo& info = opcode_info(st.op);
    listing.instructions.push_back(
        {st.line, offsets[i], instruction_bits(st.op, rw, iw)});
    bits.append_int(kOpcodeBits, static_cast<unsigned>(st.op));
    for (unsigned j = 0; j < info.operand_count; ++j) {
      const Operand& o = st.operands[j];
      if (info.kinds[j] == OperandKind::Reg) {
        bits.append_int(rw, o.value);
      } else {
        const Int v = (o.kind == Operand::Kind::Number)
                          ? o.value
                          : Int(offsets[src.label_to_index.at(o.label)]);
        bits.append_int(iw, v);
      }
    }
  }
  for (const auto& [name, index] : src.label_to_index) {
    listing.labels[name] = offsets[index];
  }
  return AssembledProgram{ProgramImage::from_bits(std::move(bits)), std::move(listing)};
}

}  // namespace uvcark
