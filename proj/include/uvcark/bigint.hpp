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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace uvcark {

// Machine values are signed integers of unbounded magnitude. Width enters the
// picture only where values cross into memory (LOAD/STORE/NOTL).
using Int = boost::multiprecision::cpp_int;

// Number of bits in |v|; 0 for v == 0.
inline std::uint64_t bit_width(const Int& v) {
  if (v == 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(abs(v))) + 1;
}

inline bool fits_u64(const Int& v) {
  return v >= 0 && bit_width(v) <= 64;
}

inline std::uint64_t to_u64(const Int& v) {
  return v.convert_to<std::uint64_t>();
}

}  // namespace uvcark
