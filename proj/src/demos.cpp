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

#include "uvcark/demos.hpp"

#include "uvcark/assembler.hpp"

#include <stdexcept>

namespace uvcark {

#include "assets_data.inc"

std::span<const AssetFile> embedded_assets() {
  return {kAssetTable, sizeof(kAssetTable) / sizeof(kAssetTable[0])};
}

const AssetFile& embedded_asset(std::string_view path) {
  for (const AssetFile& a : embedded_assets()) {
    if (a.path == path) return a;
  }
  throw std::out_of_range("no embedded asset '" + std::string(path) + "'");
}

std::string_view demo_name(DemoKind kind) {
  switch (kind) {
    case DemoKind::Rle: return "rle";
    case DemoKind::Table: return "table";
    case DemoKind::M8: return "m8";
  }
  return "?";
}

namespace {

TdoPart doc_part(std::string_view dir, std::string_view file, PartRole role,
                 std::string_view media) {
  const AssetFile& a = embedded_asset(std::string(dir) + "/" + std::string(file));
  TdoPart p;
  p.name = std::string(file);
  p.role = role;
  p.media_hint = std::string(media);
  p.content.assign(a.bytes.begin(), a.bytes.end());
  p.bits = p.content.size() * 8ull;
  return p;
}

TdoPart program_part(std::string_view dir, std::string_view source_file,
                     std::string_view part_name) {
  const AssetFile& a = embedded_asset(std::string(dir) + "/" + std::string(source_file));
  const AssembledProgram assembled = assemble(a.text());
  TdoPart p;
  p.name = std::string(part_name);
  p.role = PartRole::UvcProgram;
  p.media_hint = "UVC program image";
  p.content = assembled.image.bits().bytes();
  p.bits = assembled.image.bits().size_bits();
  return p;
}

TdoPart payload_part(std::string_view dir, std::string_view file, std::string_view media,
                     PartRole role = PartRole::Payload) {
  TdoPart p = doc_part(dir, file, role, media);
  return p;
}

std::vector<TdoPart> item_parts(std::string_view dir) {
  return {
      doc_part(dir, "itemA.txt", PartRole::DocAlphabet, "ASCII text"),
      doc_part(dir, "itemB.txt", PartRole::DocDescription, "ASCII text"),
      doc_part(dir, "itemD.bnf", PartRole::DocSchema, "ASCII BNF"),
      doc_part(dir, "itemE.inv", PartRole::DocInvocation, "ASCII key=value"),
  };
}

}  // namespace

Tdo build_demo_tdo(DemoKind kind, std::string created) {
  Tdo tdo;
  tdo.created = std::move(created);
  tdo.provenance.push_back({"uvcark make-demos", tdo.created, "assembled and packed"});

  switch (kind) {
    case DemoKind::Rle: {
      tdo.id = "urn:uvcark:demo:rle";
      tdo.title = "Run-length encoded image with its rendering program";
      tdo.parts.push_back(payload_part("rle", "payload.rle", "RLE bi-level image"));
      tdo.parts.push_back(program_part("rle", "rle_decode.uvca", "rle_decode.uvcp"));
      for (auto& p : item_parts("rle")) tdo.parts.push_back(std::move(p));
      tdo.relationships.push_back({"payload.rle", "rle_decode.uvcp", "rendered-by"});
      break;
    }
    case DemoKind::Table: {
      tdo.id = "urn:uvcark:demo:table";
      tdo.title = "Tabular data with a two-channel rendering program";
      tdo.parts.push_back(payload_part("table", "payload.csv", "restricted CSV"));
      tdo.parts.push_back(program_part("table", "table_render.uvca", "table_render.uvcp"));
      for (auto& p : item_parts("table")) tdo.parts.push_back(std::move(p));
      tdo.relationships.push_back({"payload.csv", "table_render.uvcp", "rendered-by"});
      break;
    }
    case DemoKind::M8: {
      tdo.id = "urn:uvcark:demo:m8";
      tdo.title = "M8 application preserved with an M8 emulator in UVC code";
      tdo.parts.push_back(payload_part("m8", "app.m8", "M8 machine code"));
      tdo.parts.push_back(
          payload_part("m8", "budget.bin", "M8 step budget, big-endian", PartRole::Other));
      tdo.parts.push_back(program_part("m8", "m8_emulator.uvca", "m8_emulator.uvcp"));
      for (auto& p : item_parts("m8")) tdo.parts.push_back(std::move(p));
      tdo.relationships.push_back({"app.m8", "m8_emulator.uvcp", "executed-by"});
      tdo.relationships.push_back({"budget.bin", "m8_emulator.uvcp", "parameterizes"});
      break;
    }
  }
  return tdo;
}

}  // namespace uvcark
