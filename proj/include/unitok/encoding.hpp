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


#ifndef UNITOK_ENCODING_HPP_
#define UNITOK_ENCODING_HPP_

#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitok/vocabulary.hpp"

namespace unitok {

// Newlines separate documents and never appear inside a pretoken, so text is
// encoded line by line: a text with k newline bytes has k + 1 lines, the
// last possibly empty. Joining the decoded lines with '\n' restores the
// input exactly.
std::vector<std::string_view> split_text_lines(std::string_view text);

struct EncodeOptions {
  // Draw each pretoken's segmentation from P^(1/temperature) instead of
  // taking the Viterbi path. Requires `rng`.
  bool sample = false;
  double temperature = 1.0;
  std::mt19937_64* rng = nullptr;
};

// Token ids of one line (no newline bytes). Throws DataError if a byte has
// no single-byte token.
std::vector<TokenId> encode_line(std::string_view line, const Vocabulary& vocab,
                                 const EncodeOptions& options = {});

std::vector<std::vector<TokenId>> encode_text(std::string_view text, const Vocabulary& vocab,
                                              const EncodeOptions& options = {});

// Throws DataError for an id outside the vocabulary.
std::string decode_line(std::span<const TokenId> ids, const Vocabulary& vocab);
std::string decode_text(std::span<const std::vector<TokenId>> lines, const Vocabulary& vocab);

}  // namespace unitok

#endif  // UNITOK_ENCODING_HPP_
