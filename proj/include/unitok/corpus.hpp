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

#ifndef UNITOK_CORPUS_HPP_
#define UNITOK_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace unitok {

// Splits one document into pretokens. Each space attaches to the following
// run of non-space bytes; a space not followed by a non-space byte becomes a
// lone " " pretoken. Newline bytes act as separators and are dropped, so
// concatenating the result reproduces any newline-free input exactly.
//
//   "the old" -> ["the", " old"]
//   "a  b"    -> ["a", " ", " b"]
std::vector<std::string_view> pretokenize(std::string_view text);

// True if `bytes` satisfies the pretoken invariants: non-empty, no newline,
// and no space except possibly at index 0.
bool is_pretoken(std::string_view bytes);

struct PretokenCount {
  std::string bytes;
  std::uint64_t count = 0;

  friend bool operator==(const PretokenCount&, const PretokenCount&) = default;
};

// A corpus compressed to unique pretokens with occurrence counts. Entries are
// kept sorted by bytes, so two tables with the same contents are identical
// regardless of the order they were built in.
class PretokenTable {
 public:
  PretokenTable() = default;

  // Merges duplicate pretokens. Throws DataError for zero counts or entries
  // that violate the pretoken invariants.
  explicit PretokenTable(std::vector<PretokenCount> entries);

  std::span<const PretokenCount> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Σ count × byte-length.
  std::uint64_t total_atoms() const { return total_atoms_; }
  // Σ count.
  std::uint64_t total_count() const { return total_count_; }

  // Occurrence count of one pretoken, 0 if absent.
  std::uint64_t count_of(std::string_view pretoken) const;

  // Weighted number of occurrences of each byte value.
  std::array<std::uint64_t, 256> byte_counts() const;

  // Every count multiplied by `factor`; used to check scale invariance.
  PretokenTable scaled(std::uint64_t factor) const;

  friend bool operator==(const PretokenTable&, const PretokenTable&) = default;

 private:
  std::vector<PretokenCount> entries_;
  std::uint64_t total_atoms_ = 0;
  std::uint64_t total_count_ = 0;
};

// Accumulates pretoken counts. Builders over disjoint shards can be merged in
// any order.
class PretokenTableBuilder {
 public:
  void add_document(std::string_view text);
  void add(std::string_view pretoken, std::uint64_t count = 1);
  void merge(const PretokenTableBuilder& other);
  PretokenTable build() const;

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

PretokenTable build_pretoken_table(std::span<const std::string> documents);
PretokenTable build_pretoken_table(std::string_view text);

// The distinct byte values occurring in any pretoken, ascending.
std::vector<unsigned char> atomic_alphabet(const PretokenTable& table);

// Reads UTF-8 text files and returns their non-empty lines as documents.
// Stops before the line that would push the total past `max_bytes`. A
// trailing '\r' is stripped from each line. Throws DataError naming the file
// for unreadable input and naming the file and byte offset for malformed
// UTF-8.
std::vector<std::string> load_corpus(
    std::span<const std::filesystem::path> paths,
    std::optional<std::uint64_t> max_bytes = std::nullopt);

// Table cache: one `count<TAB>escaped-pretoken` line per entry.
void write_table(std::ostream& out, const PretokenTable& table);
PretokenTable read_table(std::istream& in);

}  // namespace unitok

#endif  // UNITOK_CORPUS_HPP_
