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

#include "unitok/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"

namespace unitok {

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

PrefixTrie::PrefixTrie() : token_{-1} {}

void PrefixTrie::insert(std::string_view bytes, TokenId id) {
  std::uint32_t node = 0;
  for (const char c : bytes) {
    const auto key = (static_cast<std::uint64_t>(node) << 8) |
                     static_cast<unsigned char>(c);
    auto [it, inserted] = edges_.try_emplace(key, 0);
    if (inserted) {
      it->second = static_cast<std::uint32_t>(token_.size());
      token_.push_back(-1);
    }
    node = it->second;
  }
  token_[node] = id;
}

Vocabulary::Vocabulary(std::vector<Entry> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.bytes.empty()) throw ConfigError("vocabulary contains an empty token");
    if (e.required && e.bytes.size() != 1) {
      throw ConfigError("required token \"" + escape_bytes(e.bytes) +
                        "\" is not a single byte");
    }
    if (!std::isfinite(e.log_prob)) {
      throw ConfigError("token \"" + escape_bytes(e.bytes) +
                        "\" has a non-finite log probability");
    }
    const auto id = static_cast<TokenId>(i);
    if (!index_.emplace(e.bytes, id).second) {
      throw ConfigError("duplicate token \"" + escape_bytes(e.bytes) + "\"");
    }
    trie_.insert(e.bytes, id);
    max_len_ = std::max(max_len_, e.bytes.size());
  }
}

std::optional<TokenId> Vocabulary::find(std::string_view bytes) const {
  auto it = index_.find(std::string(bytes));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::required_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const Entry& e) { return e.required; }));
}

double Vocabulary::log_total() const {
  if (entries_.empty()) return -std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& e : entries_) hi = std::max(hi, e.log_prob);
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::exp(e.log_prob - hi);
  return hi + std::log(sum);
}

Vocabulary Vocabulary::normalized() const {
  const double z = log_total();
  std::vector<Entry> copy = entries_;
  for (auto& e : copy) e.log_prob -= z;
  return Vocabulary(std::move(copy));
}

std::vector<TokenId> Vocabulary::ids_by_probability() const {
  std::vector<TokenId> ids(entries_.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [this](TokenId a, TokenId b) {
    const auto& ea = entries_[a];
    const auto& eb = entries_[b];
    if (ea.log_prob != eb.log_prob) return ea.log_prob > eb.log_prob;
    return ea.bytes < eb.bytes;
  });
  return ids;
}

}  // namespace unitok
