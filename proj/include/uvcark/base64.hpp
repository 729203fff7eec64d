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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uvcark {

std::string base64_encode(std::span<const std::uint8_t> data);

/// Decodes standard base64; interior whitespace is skipped. Throws
/// std::invalid_argument on any other non-alphabet character or bad padding.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace uvcark
