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

#include "unitok/bpe.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"

namespace unitok {
namespace {

std::uint64_t pair_key(std::uint32_t left, std::uint32_t right) {
  return (static_cast<std::uint64_t>(left) << 32) | right;
}
std::uint32_t key_left(std::uint64_t key) { return static_cast<std::uint32_t>(key >> 32); }
std::uint32_t key_right(std::uint64_t key) { return static_cast<std::uint32_t>(key); }

// Adjacent pairs of `symbols`, counting a run of identical pairs
// non-overlapping from the left ("aaa" holds one (a, a)).
template <class Visit>
void for_each_pair(const std::vector<std::uint32_t>& symbols, Visit&& visit) {
  bool prev_counted_same = false;
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
    const bool same = symbols[i] == symbols[i + 1];
    if (same && prev_counted_same && symbols[i - 1] == symbols[i]) {
      prev_counted_same = false;
      continue;
    }
    visit(pair_key(symbols[i], symbols[i + 1]));
    prev_counted_same = same;
  }
}

// Replaces left-to-right occurrences of (left, right) with `result`.
bool apply_merge(std::vector<std::uint32_t>& symbols, std::uint32_t left,
                 std::uint32_t right, std::uint32_t result) {
  bool changed = false;
  std::size_t out = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      symbols[out++] = result;
      ++i;
      changed = true;
    } else {
      symbols[out++] = symbols[i];
    }
  }
  symbols.resize(out);
  return changed;
}

}  // namespace

MergeList::MergeList(std::vector<unsigned char> alphabet, std::vector<Merge> merges)
    : alphabet_(std::move(alphabet)), merges_(std::move(merges)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  index();
}

void MergeList::index() {
  id_token_.clear();
  token_ids_.clear();
  rank_.clear();
  result_id_.clear();
  rank_key_.clear();
  for (const unsigned char b : alphabet_) in_alphabet_[b] = true;
  for (int b = 0; b < 256; ++b) {
    id_token_.emplace_back(1, static_cast<char>(b));
    token_ids_.emplace(id_token_.back(), static_cast<std::uint32_t>(b));
  }
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const auto& m = merges_[r];
    auto left = token_ids_.find(m.left);
    auto right = token_ids_.find(m.right);
    if (left == token_ids_.end() || right == token_ids_.end()) {
      throw ConfigError("merge " + std::to_string(r) + " uses an unknown token");
    }
    const auto key = pair_key(left->second, right->second);
    if (!rank_.emplace(key, static_cast<std::uint32_t>(r)).second) {
      throw ConfigError("duplicate merge pair at rank " + std::to_string(r));
    }
    const std::string result = m.result();
    auto [it, inserted] =
        token_ids_.try_emplace(result, static_cast<std::uint32_t>(id_token_.size()));
    if (inserted) id_token_.push_back(result);
    result_id_.push_back(it->second);
    rank_key_.push_back(key);
  }
}

MergeList MergeList::prefix(std::size_t k) const {
  k = std::min(k, merges_.size());
  return MergeList(alphabet_, std::vector<Merge>(merges_.begin(),
                                                 merges_.begin() + static_cast<std::ptrdiff_t>(k)));
}

std::vector<std::string> MergeList::encode(std::string_view pretoken) const {
  std::vector<std::uint32_t> symbols;
  symbols.reserve(pretoken.size());
  for (std::size_t i = 0; i < pretoken.size(); ++i) {
    const auto b = static_cast<unsigned char>(pretoken[i]);
    if (!in_alphabet_[b]) {
      throw DataError("byte \"" + escape_bytes(pretoken.substr(i, 1)) + "\" at offset " +
                      std::to_string(i) + " is outside the BPE alphabet");
    }
    symbols.push_back(b);
  }
  while (symbols.size() > 1) {
    std::uint32_t best = 0xffffffffu;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = rank_.find(pair_key(symbols[i], symbols[i + 1]));
      if (it != rank_.end()) best = std::min(best, it->second);
    }
    if (best == 0xffffffffu) break;
    const auto key = rank_key_[best];
    apply_merge(symbols, key_left(key), key_right(key), result_id_[best]);
  }
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (const auto id : symbols) out.push_back(id_token_[id]);
  return out;
}

Vocabulary MergeList::vocabulary() const {
  std::vector<std::string> tokens;
  for (const unsigned char b : alphabet_) tokens.emplace_back(1, static_cast<char>(b));
  for (const auto& m : merges_) tokens.push_back(m.result());
  std::vector<Vocabulary::Entry> entries;
  std::unordered_map<std::string, bool> seen;
  for (auto& t : tokens) {
    if (!seen.emplace(t, true).second) continue;
    const bool required = t.size() == 1;
    entries.push_back({std::move(t), 0.0, required});
  }
  const double lp = -std::log(static_cast<double>(entries.size()));
  for (auto& e : entries) e.log_prob = lp;
  return Vocabulary(std::move(entries));
}

BpeResult train_bpe(const PretokenTable& table, std::size_t n) {
  auto alphabet = atomic_alphabet(table);
  if (n < alphabet.size()) {
    throw ConfigError("BPE vocabulary size " + std::to_string(n) +
                      " is below the alphabet size " + std::to_string(alphabet.size()));
  }
  std::vector<std::string> tokens;
  std::unordered_map<std::string, std::uint32_t> known;
  for (int b = 0; b < 256; ++b) tokens.emplace_back(1, static_cast<char>(b));
  for (const unsigned char b : alphabet) known.emplace(tokens[b], b);

  const auto entries = table.entries();
  std::vector<std::vector<std::uint32_t>> words(entries.size());
  std::vector<std::int64_t> weight(entries.size());
  std::unordered_map<std::uint64_t, std::int64_t> pair_count;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> where;
  for (std::size_t w = 0; w < entries.size(); ++w) {
    for (const char c : entries[w].bytes) words[w].push_back(static_cast<unsigned char>(c));
    weight[w] = static_cast<std::int64_t>(entries[w].count);
    for_each_pair(words[w], [&](std::uint64_t key) {
      pair_count[key] += weight[w];
      auto& list = where[key];
      if (list.empty() || list.back() != w) list.push_back(static_cast<std::uint32_t>(w));
    });
  }

  struct Candidate {
    std::int64_t count;
    std::uint64_t key;
  };
  auto lower_priority = [&tokens](const Candidate& a, const Candidate& b) {
    if (a.count != b.count) return a.count < b.count;
    const auto& al = tokens[key_left(a.key)];
    const auto& bl = tokens[key_left(b.key)];
    if (al != bl) return al > bl;
    return tokens[key_right(a.key)] > tokens[key_right(b.key)];
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(lower_priority)> heap(
      lower_priority);
  for (const auto& [key, count] : pair_count) {
    if (count > 0) heap.push({count, key});
  }

  std::vector<Merge> merges;
  std::size_t vocab_size = alphabet.size();
  std::unordered_map<std::uint64_t, std::int64_t> delta;
  while (vocab_size < n && !heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    auto it = pair_count.find(top.key);
    if (it == pair_count.end() || it->second != top.count || top.count <= 0) continue;

    const std::uint32_t left = key_left(top.key);
    const std::uint32_t right = key_right(top.key);
    std::string result = tokens[left] + tokens[right];
    auto [known_it, fresh] =
        known.try_emplace(result, static_cast<std::uint32_t>(tokens.size()));
    if (fresh) {
      tokens.push_back(result);
      ++vocab_size;
    }
    const std::uint32_t result_id = known_it->second;
    merges.push_back({tokens[left], tokens[right]});

    delta.clear();
    const std::vector<std::uint32_t> affected = std::move(where[top.key]);
    where.erase(top.key);
    for (const std::uint32_t w : affected) {
      auto& sym = words[w];
      std::vector<std::uint32_t> before = sym;
      if (!apply_merge(sym, left, right, result_id)) continue;
      for_each_pair(before, [&](std::uint64_t key) { delta[key] -= weight[w]; });
      for_each_pair(sym, [&](std::uint64_t key) {
        delta[key] += weight[w];
        auto& list = where[key];
        if (list.empty() || list.back() != w) list.push_back(w);
      });
    }
    for (const auto& [key, d] : delta) {
      if (d == 0) continue;
      auto& count = pair_count[key];
      count += d;
      if (count > 0) heap.push({count, key});
    }
  }
  MergeList list(std::move(alphabet), std::move(merges));
  Vocabulary vocab = list.vocabulary();
  return {std::move(list), std::move(vocab)};
}

std::vector<std::string> encode_bpe(std::string_view pretoken, const MergeList& merges) {
  return merges.encode(pretoken);
}

void write_merges(std::ostream& out, const MergeList& merges) {
  const std::string alphabet(merges.alphabet().begin(), merges.alphabet().end());
  out << kMergesHeader << '\t' << escape_bytes(alphabet) << '\n';
  for (const auto& m : merges.merges()) {
    out << escape_bytes(m.left) << '\t' << escape_bytes(m.right) << '\n';
  }
}

MergeList read_merges(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(std::string(kMergesHeader) + "\t")) {
    throw DataError("merges file: missing header line");
  }
  const std::string alphabet =
      unescape_bytes(std::string_view(line).substr(kMergesHeader.size() + 1));
  return read_merges(in, std::vector<unsigned char>(alphabet.begin(), alphabet.end()));
}

MergeList read_merges(std::istream& in, std::vector<unsigned char> alphabet) {
  std::vector<Merge> merges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("merges line " + std::to_string(line_no) + ": expected left<TAB>right");
    }
    merges.push_back({unescape_bytes(std::string_view(line).substr(0, tab)),
                      unescape_bytes(std::string_view(line).substr(tab + 1))});
  }
  return MergeList(std::move(alphabet), std::move(merges));
}

}  // namespace unitok
