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

#ifndef UNITOK_VOCABULARY_HPP_
#define UNITOK_VOCABULARY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace unitok {

using TokenId = std::int32_t;

// Byte trie over token strings, used to discover every vocabulary token that
// starts at a given position of a pretoken.
class PrefixTrie {
 public:
  PrefixTrie();
  void insert(std::string_view bytes, TokenId id);

  // Calls visit(length, id) for every token that is a prefix of `text`,
  // shortest first.
  template <class Visit>
  void for_each_prefix(std::string_view text, Visit&& visit) const {
    std::uint32_t node = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      node = child(node, static_cast<unsigned char>(text[i]));
      if (node == kNone) return;
      if (const TokenId id = token_[node]; id >= 0) visit(i + 1, id);
    }
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::uint32_t child(std::uint32_t node, unsigned char byte) const {
    auto it = edges_.find((static_cast<std::uint64_t>(node) << 8) | byte);
    return it == edges_.end() ? kNone : it->second;
  }

  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<TokenId> token_;
};

// Ordered token set with natural-log probabilities. Required tokens are the
// single-byte atomic tokens that guarantee every text stays segmentable.
class Vocabulary {
 public:
  struct Entry {
    std::string bytes;
    double log_prob = 0.0;
    bool required = false;
  };

  Vocabulary() = default;

  // Throws ConfigError on duplicate tokens, empty tokens, multi-byte required
  // tokens or non-finite log probabilities. Probabilities are taken as given;
  // call normalized() to rescale them.
  explicit Vocabulary(std::vector<Entry> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  const Entry& operator[](TokenId id) const { return entries_[id]; }
  std::string_view token(TokenId id) const { return entries_[id].bytes; }
  double log_prob(TokenId id) const { return entries_[id].log_prob; }
  bool required(TokenId id) const { return entries_[id].required; }

  std::optional<TokenId> find(std::string_view bytes) const;
  bool contains(std::string_view bytes) const { return find(bytes).has_value(); }

  const PrefixTrie& trie() const { return trie_; }
  std::size_t max_token_length() const { return max_len_; }
  std::size_t required_count() const;

  // log Σ exp(log_prob).
  double log_total() const;
  // Copy whose probabilities sum to one.
  Vocabulary normalized() const;

  // Ids ordered by descending log probability, ties by token bytes.
  std::vector<TokenId> ids_by_probability() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, TokenId> index_;
  PrefixTrie trie_;
  std::size_t max_len_ = 0;
};

// Numerically stable log(exp(a) + exp(b)).
double log_add(double a, double b);

}  // namespace unitok

#endif  // UNITOK_VOCABULARY_HPP_
