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

#include "uvcark/tdo.hpp"

#include <span>
#include <string_view>

namespace uvcark {

/// The assets/ tree, embedded at build time so demo TDOs can be produced
/// anywhere the binary runs. Paths are relative to assets/ ("rle/itemA.txt").
struct AssetFile {
  std::string_view path;
  std::span<const std::uint8_t> bytes;

  std::string_view text() const {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
  }
};

std::span<const AssetFile> embedded_assets();

/// Throws std::out_of_range for unknown paths.
const AssetFile& embedded_asset(std::string_view path);

enum class DemoKind { Rle, Table, M8 };

/// Assembles the demo's .uvca asset, gathers its payload(s), Items A/B/D/E
/// documents and descriptor, records the part relationships, and returns the
/// ready-to-pack object. `created` lands in the metadata verbatim.
Tdo build_demo_tdo(DemoKind kind, std::string created);

std::string_view demo_name(DemoKind kind);  // "rle" | "table" | "m8"

}  // namespace uvcark
