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


#include "unitok/encoding.hpp"

#include "unitok/corpus.hpp"
#include "unitok/errors.hpp"
#include "unitok/lattice.hpp"

namespace unitok {

std::vector<std::string_view> split_text_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (true) {
    const auto nl = text.find('\n', begin);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(begin));
      return lines;
    }
    lines.push_back(text.substr(begin, nl - begin));
    begin = nl + 1;
  }
}

std::vector<TokenId> encode_line(std::string_view line, const Vocabulary& vocab,
                                 const EncodeOptions& options) {
  if (line.find('\n') != std::string_view::npos) {
    throw DataError("encode_line: input contains a newline");
  }
  if (options.sample) {
    if (options.rng == nullptr) throw ConfigError("sampling requires a random generator");
    if (!(options.temperature > 0.0)) throw ConfigError("temperature must be positive");
  }
  std::vector<TokenId> ids;
  Lattice lattice;
  for (const auto pretoken : pretokenize(line)) {
    lattice.reset(pretoken, vocab);
    const Segmentation seg = options.sample
                                 ? sample_segmentation(lattice, options.temperature, *options.rng)
                                 : viterbi(lattice);
    ids.insert(ids.end(), seg.token_ids.begin(), seg.token_ids.end());
  }
  return ids;
}

std::vector<std::vector<TokenId>> encode_text(std::string_view text, const Vocabulary& vocab,
                                              const EncodeOptions& options) {
  std::vector<std::vector<TokenId>> out;
  for (const auto line : split_text_lines(text)) out.push_back(encode_line(line, vocab, options));
  return out;
}

std::string decode_line(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::string out;
  for (const TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab.size()) {
      throw DataError("token id " + std::to_string(id) + " is outside the vocabulary");
    }
    out += vocab.token(id);
  }
  return out;
}

std::string decode_text(std::span<const std::vector<TokenId>> lines, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += decode_line(lines[i], vocab);
  }
  return out;
}

}  // namespace unitok
