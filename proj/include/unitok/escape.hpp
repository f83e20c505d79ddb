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

#ifndef UNITOK_ESCAPE_HPP_
#define UNITOK_ESCAPE_HPP_

#include <string>
#include <string_view>

namespace unitok {

// Renders arbitrary bytes as a single line of printable ASCII. Printable
// ASCII (0x20..0x7e) passes through, backslash becomes "\\", everything else
// (including tab and newline) becomes "\xHH" with lowercase hex digits.
std::string escape_bytes(std::string_view bytes);

// Inverse of escape_bytes. Throws DataError on a malformed escape sequence or
// on a raw byte that escape_bytes would never produce.
std::string unescape_bytes(std::string_view text);

}  // namespace unitok

#endif  // UNITOK_ESCAPE_HPP_
