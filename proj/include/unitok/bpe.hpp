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

#ifndef UNITOK_BPE_HPP_
#define UNITOK_BPE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "unitok/corpus.hpp"
#include "unitok/vocabulary.hpp"

namespace unitok {

struct Merge {
  std::string left;
  std::string right;
  std::string result() const { return left + right; }

  friend bool operator==(const Merge&, const Merge&) = default;
};

// Merges in rank order (rank = position) over a byte alphabet.
class MergeList {
 public:
  MergeList() = default;
  // Throws ConfigError on duplicate pairs.
  MergeList(std::vector<unsigned char> alphabet, std::vector<Merge> merges);

  const std::vector<unsigned char>& alphabet() const { return alphabet_; }
  const std::vector<Merge>& merges() const { return merges_; }
  std::size_t size() const { return merges_.size(); }

  // First `k` merges only.
  MergeList prefix(std::size_t k) const;

  // Applies merges in rank order: repeatedly merges every left-to-right
  // occurrence of the lowest-ranked adjacent pair. Throws DataError for a
  // byte outside the alphabet.
  std::vector<std::string> encode(std::string_view pretoken) const;

  // Alphabet plus merge results, deduplicated, with uniform probabilities.
  Vocabulary vocabulary() const;

 private:
  std::vector<unsigned char> alphabet_;
  std::vector<Merge> merges_;
  std::vector<bool> in_alphabet_ = std::vector<bool>(256, false);
  std::unordered_map<std::string, std::uint32_t> token_ids_;  // token -> id
  std::unordered_map<std::uint64_t, std::uint32_t> rank_;  // (left,right) -> rank
  std::vector<std::uint32_t> result_id_;  // rank -> token id
  std::vector<std::uint64_t> rank_key_;  // rank -> pair
  std::vector<std::string> id_token_;

  void index();
};

struct BpeResult {
  MergeList merges;
  Vocabulary vocab;
};

// Greedy BPE over the pretoken table: repeatedly merges the most frequent
// adjacent pair until the vocabulary (alphabet plus distinct merge results)
// reaches n or no pair is left. Pair counts are weighted by pretoken counts
// and taken non-overlapping left to right; ties go to the lexicographically
// smaller (left, right) pair. Throws ConfigError if n is below the alphabet.
BpeResult train_bpe(const PretokenTable& table, std::size_t n);

std::vector<std::string> encode_bpe(std::string_view pretoken, const MergeList& merges);

// `left<TAB>right` lines of escaped bytes, in rank order.
inline constexpr std::string_view kMergesHeader = "unitok-bpe";

// Header line `unitok-bpe<TAB>escaped-alphabet`, then one `left<TAB>right`
// line per merge in rank order.
void write_merges(std::ostream& out, const MergeList& merges);
// Reads a full merges file, header included.
MergeList read_merges(std::istream& in);
// Reads bare merge lines against a known alphabet.
MergeList read_merges(std::istream& in, std::vector<unsigned char> alphabet);

}  // namespace unitok

#endif  // UNITOK_BPE_HPP_
