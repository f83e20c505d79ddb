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

#ifndef UNITOK_SEED_HPP_
#define UNITOK_SEED_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitok/corpus.hpp"
#include "unitok/vocabulary.hpp"

namespace unitok {

inline constexpr std::size_t kDefaultMaxTokenLength = 16;

// Seed-candidate validity: 1 < length <= max_len, no space after the first
// byte, no newline.
bool is_valid_token(std::string_view bytes, std::size_t max_len = kDefaultMaxTokenLength);

using TokenValidator = std::function<bool(std::string_view)>;

struct WeightedText {
  std::string_view bytes;
  std::uint64_t weight = 1;
};

// Suffix array and LCP array over texts joined by sentinels.
//
// Internally each byte b is stored as symbol b + 1 and every text is followed
// by the sentinel symbol 0, which sorts below all bytes and never counts
// towards a common prefix. Only suffixes starting on a content byte are
// ranked, so for a single text the array is the ordinary suffix array of that
// text ("banana" -> 5 3 1 0 4 2).
class SuffixIndex {
 public:
  static constexpr std::int32_t kSentinel = 0;

  // Throws ConfigError for an empty text or a zero weight.
  explicit SuffixIndex(std::span<const WeightedText> texts);

  std::size_t size() const { return sa_.size(); }
  std::span<const std::int32_t> symbols() const { return symbols_; }
  // Start offsets into symbols(), in suffix order.
  std::span<const std::uint32_t> sa() const { return sa_; }
  // lcp()[r]: shared prefix of ranks r-1 and r; lcp()[0] = 0.
  std::span<const std::uint32_t> lcp() const { return lcp_; }

  // Bytes of the suffix at `rank` before its sentinel.
  std::size_t suffix_length(std::size_t rank) const;
  std::string prefix(std::size_t rank, std::size_t length) const;

  std::uint64_t weight(std::size_t rank) const {
    return weight_prefix_[rank + 1] - weight_prefix_[rank];
  }
  // Total weight of ranks [first, last).
  std::uint64_t weight(std::size_t first, std::size_t last) const {
    return weight_prefix_[last] - weight_prefix_[first];
  }

  // Weighted count of every byte value over all texts.
  const std::vector<std::uint64_t>& byte_counts() const { return byte_counts_; }

 private:
  std::vector<std::int32_t> symbols_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> lcp_;
  std::vector<std::uint32_t> run_end_;  // next sentinel offset per position
  std::vector<std::uint64_t> weight_prefix_;
  std::vector<std::uint64_t> byte_counts_;
};

// An interval popped by the stack-based emission loop: all suffixes in
// ranks [first_rank, end_rank) share a prefix of `length` bytes. Leaf
// intervals (a single suffix up to its sentinel) are reported as well, so a
// weighted index can emit a pattern that occurs in only one text.
struct RepeatInterval {
  std::size_t length = 0;
  std::size_t first_rank = 0;
  std::size_t end_rank = 0;
  std::uint64_t freq = 0;
  // Height of the stack top after the pop, or of the current LCP if the stack
  // emptied. Prefix recovery scans lengths (floor_height, length].
  std::size_t floor_height = 0;
};

// Runs the stack-based LCP-interval loop and reports every popped interval.
void for_each_repeat_interval(const SuffixIndex& index,
                              const std::function<void(const RepeatInterval&)>& visit);

struct SeedCandidate {
  std::string token;
  std::uint64_t freq = 0;
  std::uint64_t score = 0;  // freq × length
};

// Candidates sorted by descending score (ties by token bytes), capped at the
// requested size, plus the single-byte alphabet scored by byte coverage.
struct SeedVocabulary {
  std::vector<SeedCandidate> candidates;
  std::vector<SeedCandidate> atomics;

  std::size_t size() const { return candidates.size() + atomics.size(); }
};

struct SeedOptions {
  std::size_t n_seed = 0;
  std::size_t max_len = kDefaultMaxTokenLength;
  // Salvage the longest valid prefix of each rejected pattern.
  bool recovery = false;
  // Defaults to is_valid_token with max_len.
  TokenValidator validator;
};

// Selects seed candidates from the index. Without recovery this keeps every
// popped pattern p with 1 < |p| <= max_len, freq >= 2 and valid p, scored by
// freq × |p|. With recovery an invalid pattern is replaced by its longest
// valid prefix longer than floor_height, scored with the interval's freq.
// A token reachable through several intervals keeps its highest score.
SeedVocabulary emit_seed(const SuffixIndex& index, const SeedOptions& options);

// Full-text seeding over corpus documents (one weight-1 text each).
SeedVocabulary emit_seed_fulltext(const SuffixIndex& index, std::size_t n_seed,
                                  std::size_t max_len = kDefaultMaxTokenLength);
SeedVocabulary emit_seed_recovery(const SuffixIndex& index, std::size_t n_seed,
                                  std::size_t max_len = kDefaultMaxTokenLength);

SuffixIndex build_fulltext_index(std::span<const std::string> documents);
// One text per unique pretoken, weighted by its count.
SuffixIndex build_pretoken_index(const PretokenTable& table);

SeedVocabulary emit_seed_pretoken(const PretokenTable& table, std::size_t n_seed,
                                  std::size_t max_len = kDefaultMaxTokenLength,
                                  bool recovery = false);

// Seed scores normalized into a Vocabulary; atomics become required tokens.
// Throws ConfigError for an empty seed.
Vocabulary finalize_seed(const SeedVocabulary& seed);

}  // namespace unitok

#endif  // UNITOK_SEED_HPP_
