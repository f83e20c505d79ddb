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

#include "unitok/seed.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "unitok/errors.hpp"
#include "unitok/suffix_array.hpp"

namespace unitok {

bool is_valid_token(std::string_view bytes, std::size_t max_len) {
  if (bytes.size() <= 1 || bytes.size() > max_len) return false;
  if (bytes.find('\n') != std::string_view::npos) return false;
  return bytes.find(' ', 1) == std::string_view::npos;
}

SuffixIndex::SuffixIndex(std::span<const WeightedText> texts) {
  std::size_t total = 0;
  for (const auto& t : texts) {
    if (t.bytes.empty()) throw ConfigError("suffix index texts must be non-empty");
    if (t.weight == 0) throw ConfigError("suffix index weights must be positive");
    total += t.bytes.size() + 1;
  }
  symbols_.reserve(total);
  run_end_.resize(total);
  std::vector<std::uint64_t> position_weight(total, 0);
  byte_counts_.assign(256, 0);
  for (const auto& t : texts) {
    const std::size_t begin = symbols_.size();
    const std::size_t end = begin + t.bytes.size();
    for (const char c : t.bytes) {
      const auto b = static_cast<unsigned char>(c);
      byte_counts_[b] += t.weight;
      symbols_.push_back(static_cast<std::int32_t>(b) + 1);
    }
    symbols_.push_back(kSentinel);
    for (std::size_t i = begin; i <= end; ++i) {
      run_end_[i] = static_cast<std::uint32_t>(end);
      position_weight[i] = t.weight;
    }
  }
  auto sa = build_suffix_array(symbols_, 257);
  auto lcp = build_lcp_array(symbols_, sa, kSentinel);
  // Sentinel suffixes sort before every content suffix.
  const std::size_t skip = texts.size();
  sa_.assign(sa.begin() + static_cast<std::ptrdiff_t>(skip), sa.end());
  lcp_.assign(lcp.begin() + static_cast<std::ptrdiff_t>(skip), lcp.end());
  if (!lcp_.empty()) lcp_[0] = 0;
  weight_prefix_.assign(sa_.size() + 1, 0);
  for (std::size_t r = 0; r < sa_.size(); ++r) {
    weight_prefix_[r + 1] = weight_prefix_[r] + position_weight[sa_[r]];
  }
}

std::size_t SuffixIndex::suffix_length(std::size_t rank) const {
  return run_end_[sa_[rank]] - sa_[rank];
}

std::string SuffixIndex::prefix(std::size_t rank, std::size_t length) const {
  std::string out;
  out.reserve(length);
  const std::size_t start = sa_[rank];
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(static_cast<char>(symbols_[start + i] - 1));
  }
  return out;
}

void for_each_repeat_interval(const SuffixIndex& index,
                              const std::function<void(const RepeatInterval&)>& visit) {
  struct Open {
    std::size_t height;
    std::size_t first_rank;
  };
  std::vector<Open> stack;
  const std::size_t n = index.size();
  const auto lcp = index.lcp();
  for (std::size_t cur = 1; cur <= n; ++cur) {
    // Leaf of rank cur-1, unless it coincides with the open interval.
    const std::size_t leaf = index.suffix_length(cur - 1);
    if (stack.empty() ? leaf > 0 : leaf > stack.back().height) {
      stack.push_back({leaf, cur - 1});
    }
    const std::size_t h = cur < n ? lcp[cur] : 0;
    std::size_t left = cur - 1;
    while (!stack.empty() && stack.back().height > h) {
      const Open top = stack.back();
      stack.pop_back();
      RepeatInterval iv;
      iv.length = top.height;
      iv.first_rank = top.first_rank;
      iv.end_rank = cur;
      iv.freq = index.weight(top.first_rank, cur);
      iv.floor_height = stack.empty() ? h : stack.back().height;
      visit(iv);
      left = top.first_rank;
    }
    if (stack.empty() || stack.back().height < h) stack.push_back({h, left});
  }
}

SeedVocabulary emit_seed(const SuffixIndex& index, const SeedOptions& options) {
  const std::size_t max_len = options.max_len;
  TokenValidator valid = options.validator;
  if (!valid) valid = [max_len](std::string_view s) { return is_valid_token(s, max_len); };

  std::unordered_map<std::string, SeedCandidate> best;
  auto add = [&](std::string token, std::uint64_t freq) {
    const std::uint64_t score = freq * token.size();
    auto [it, inserted] = best.try_emplace(token, SeedCandidate{token, freq, score});
    if (!inserted && score > it->second.score) it->second = {std::move(token), freq, score};
  };

  for_each_repeat_interval(index, [&](const RepeatInterval& iv) {
    if (iv.freq < 2 || iv.length <= 1) return;
    if (!options.recovery) {
      if (iv.length > max_len) return;
      std::string p = index.prefix(iv.first_rank, iv.length);
      if (valid(p)) add(std::move(p), iv.freq);
      return;
    }
    const std::size_t top = std::min(iv.length, max_len);
    const std::size_t lowest = std::max<std::size_t>(iv.floor_height + 1, 2);
    if (top < lowest) return;
    const std::string p = index.prefix(iv.first_rank, top);
    for (std::size_t len = top; len >= lowest; --len) {
      const std::string_view candidate(p.data(), len);
      if (valid(candidate)) {
        add(std::string(candidate), iv.freq);
        break;
      }
    }
  });

  SeedVocabulary seed;
  seed.candidates.reserve(best.size());
  for (auto& [token, cand] : best) seed.candidates.push_back(std::move(cand));
  auto by_score = [](const SeedCandidate& a, const SeedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.token < b.token;
  };
  if (seed.candidates.size() > options.n_seed) {
    std::partial_sort(seed.candidates.begin(),
                      seed.candidates.begin() + static_cast<std::ptrdiff_t>(options.n_seed),
                      seed.candidates.end(), by_score);
    seed.candidates.resize(options.n_seed);
  } else {
    std::sort(seed.candidates.begin(), seed.candidates.end(), by_score);
  }

  const auto& counts = index.byte_counts();
  for (int b = 0; b < 256; ++b) {
    if (counts[b] == 0) continue;
    seed.atomics.push_back({std::string(1, static_cast<char>(b)), counts[b], counts[b]});
  }
  return seed;
}

SeedVocabulary emit_seed_fulltext(const SuffixIndex& index, std::size_t n_seed,
                                  std::size_t max_len) {
  return emit_seed(index, SeedOptions{n_seed, max_len, false, {}});
}

SeedVocabulary emit_seed_recovery(const SuffixIndex& index, std::size_t n_seed,
                                  std::size_t max_len) {
  return emit_seed(index, SeedOptions{n_seed, max_len, true, {}});
}

SuffixIndex build_fulltext_index(std::span<const std::string> documents) {
  std::vector<WeightedText> texts;
  texts.reserve(documents.size());
  for (const auto& doc : documents) {
    if (!doc.empty()) texts.push_back({doc, 1});
  }
  return SuffixIndex(texts);
}

SuffixIndex build_pretoken_index(const PretokenTable& table) {
  std::vector<WeightedText> texts;
  texts.reserve(table.size());
  for (const auto& e : table.entries()) texts.push_back({e.bytes, e.count});
  return SuffixIndex(texts);
}

SeedVocabulary emit_seed_pretoken(const PretokenTable& table, std::size_t n_seed,
                                  std::size_t max_len, bool recovery) {
  return emit_seed(build_pretoken_index(table), SeedOptions{n_seed, max_len, recovery, {}});
}

Vocabulary finalize_seed(const SeedVocabulary& seed) {
  if (seed.size() == 0) throw ConfigError("cannot finalize an empty seed vocabulary");
  double total = 0.0;
  for (const auto& c : seed.candidates) total += static_cast<double>(c.score);
  for (const auto& c : seed.atomics) total += std::max<double>(1.0, static_cast<double>(c.score));
  const double log_total = std::log(total);
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(seed.size());
  for (const auto& c : seed.atomics) {
    entries.push_back({c.token,
                       std::log(std::max<double>(1.0, static_cast<double>(c.score))) - log_total,
                       true});
  }
  for (const auto& c : seed.candidates) {
    entries.push_back({c.token, std::log(static_cast<double>(c.score)) - log_total, false});
  }
  return Vocabulary(std::move(entries));
}

}  // namespace unitok
