// Copyright 2026 The unitok Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unitok/utf8.hpp"

namespace unitok {

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  auto is_cont = [&](std::size_t k) { return k < n && (at(k) & 0xc0) == 0x80; };
  while (i < n) {
    const unsigned char b = at(i);
    if (b < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xbf;  // bounds for the second byte
    if (b >= 0xc2 && b <= 0xdf) {
      len = 2;
    } else if (b == 0xe0) {
      len = 3, lo = 0xa0;
    } else if ((b >= 0xe1 && b <= 0xec) || b == 0xee || b == 0xef) {
      len = 3;
    } else if (b == 0xed) {
      len = 3, hi = 0x9f;
    } else if (b == 0xf0) {
      len = 4, lo = 0x90;
    } else if (b >= 0xf1 && b <= 0xf3) {
      len = 4;
    } else if (b == 0xf4) {
      len = 4, hi = 0x8f;
    } else {
      return i;
    }
    if (i + 1 >= n || at(i + 1) < lo || at(i + 1) > hi) return i;
    for (std::size_t k = 2; k < len; ++k) {
      if (!is_cont(i + k)) return i;
    }
    i += len;
  }
  return std::nullopt;
}

}  // namespace unitok
