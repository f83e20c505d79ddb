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

#ifndef UNITOK_SUFFIX_ARRAY_HPP_
#define UNITOK_SUFFIX_ARRAY_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace unitok {

// Suffix array of an integer string by prefix doubling with radix sort,
// O(n log n). Symbols must lie in [0, alphabet_size). Suffixes are compared
// as ordinary strings, so a proper prefix sorts first.
std::vector<std::uint32_t> build_suffix_array(std::span<const std::int32_t> text,
                                              std::int32_t alphabet_size);

// Kasai's LCP over a suffix array: lcp[r] is the common-prefix length of the
// suffixes at ranks r-1 and r (lcp[0] = 0). Matching stops at `stop_symbol`,
// which therefore never counts as a shared character.
std::vector<std::uint32_t> build_lcp_array(std::span<const std::int32_t> text,
                                           std::span<const std::uint32_t> sa,
                                           std::int32_t stop_symbol);

}  // namespace unitok

#endif  // UNITOK_SUFFIX_ARRAY_HPP_
