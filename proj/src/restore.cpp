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

#include "uvcark/restore.hpp"

#include <algorithm>

namespace uvcark {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::optional<std::uint64_t> InvocationDescriptor::output_segment(std::string_view channel) const {
  for (const auto& [name, seg] : outputs) {
    if (name == channel) return seg;
  }
  return std::nullopt;
}

InvocationDescriptor parse_invocation_descriptor(std::string_view text) {
  InvocationDescriptor d;
  bool have_program = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;

    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw DescriptorError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(stripped.substr(0, eq)));
    const std::string value(trim(stripped.substr(eq + 1)));

    if (key == "program") {
      if (have_program) {
        throw DescriptorError("line " + std::to_string(line_no) + ": duplicate program key");
      }
      if (value.empty()) {
        throw DescriptorError("line " + std::to_string(line_no) + ": empty program name");
      }
      d.program = value;
      have_program = true;
    } else if (key == "input") {
      d.inputs.push_back(value);
    } else if (key.starts_with("output.")) {
      const std::string channel = key.substr(7);
      if (channel.empty()) {
        throw DescriptorError("line " + std::to_string(line_no) + ": empty channel name");
      }
      if (d.output_segment(channel)) {
        throw DescriptorError("line " + std::to_string(line_no) + ": duplicate channel '" +
                              channel + "'");
      }
      if (!value.starts_with("seg:")) {
        throw DescriptorError("line " + std::to_string(line_no) +
                              ": output value must be seg:<n>");
      }
      const std::string num = value.substr(4);
      if (num.empty() || !std::all_of(num.begin(), num.end(),
                                      [](char c) { return c >= '0' && c <= '9'; })) {
        throw DescriptorError("line " + std::to_string(line_no) + ": bad segment number '" + num +
                              "'");
      }
      d.outputs.emplace_back(channel, std::stoull(num));
    } else if (key.starts_with("doc.")) {
      const std::string item = key.substr(4);
      if (item.empty()) {
        throw DescriptorError("line " + std::to_string(line_no) + ": empty doc item");
      }
      d.docs.emplace_back(item, value);
    } else {
      // Unknown keys warn but are preserved verbatim: a later descriptor
      // version must still be loadable by this reader.
      d.warnings.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      d.extras.emplace_back(stripped);
    }
  }
  if (!have_program) throw DescriptorError("missing program key");
  return d;
}

std::string format_invocation_descriptor(const InvocationDescriptor& d) {
  std::string out;
  out += "program=" + d.program + "\n";
  for (const auto& in : d.inputs) out += "input=" + in + "\n";
  for (const auto& [name, seg] : d.outputs) {
    out += "output." + name + "=seg:" + std::to_string(seg) + "\n";
  }
  for (const auto& [item, part] : d.docs) out += "doc." + item + "=" + part + "\n";
  for (const auto& extra : d.extras) out += extra + "\n";
  return out;
}

const BitString* RestoreResult::output(std::string_view channel) const {
  for (const auto& [name, bits] : outputs) {
    if (name == channel) return &bits;
  }
  return nullptr;
}

MachineState init_state(const ProgramImage& program, std::vector<BitString> inputs,
                        MachineLimits limits) {
  return MachineState(program, std::move(inputs), limits);
}

RestoreResult restore_run(const InvocationDescriptor& descriptor, const PartResolver& parts,
                          std::uint64_t fuel, MachineLimits limits) {
  auto resolve = [&](const std::string& name) -> BitString {
    auto bits = parts(name);
    if (!bits) throw RestoreError("unresolvable part '" + name + "'");
    return std::move(*bits);
  };

  ProgramImage program = ProgramImage::from_bits(resolve(descriptor.program));
  std::vector<BitString> inputs;
  inputs.reserve(descriptor.inputs.size());
  for (const auto& name : descriptor.inputs) inputs.push_back(resolve(name));

  MachineState state = init_state(program, std::move(inputs), limits);

  RestoreResult result;
  for (const auto& [name, seg] : descriptor.outputs) {
    result.outputs.emplace_back(name, BitString{});
  }
  RunResult rr = run(state, fuel, [&](const YieldRecord& y) {
    for (std::size_t i = 0; i < descriptor.outputs.size(); ++i) {
      if (Int(descriptor.outputs[i].second) == y.seg) {
        result.outputs[i].second.append(y.bits);
      }
    }
  });
  result.outcome = rr.outcome;
  result.trace = std::move(rr.yields);
  result.steps = state.steps_taken();
  return result;
}

}  // namespace uvcark
