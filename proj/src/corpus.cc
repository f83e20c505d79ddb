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

#include "unitok/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"
#include "unitok/utf8.hpp"

namespace unitok {

std::vector<std::string_view> pretokenize(std::string_view text) {
  std::vector<std::string_view> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (text[i] == '\n') {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (text[i] == ' ') {
      ++i;
      if (i >= n || text[i] == ' ' || text[i] == '\n') {
        out.push_back(text.substr(begin, 1));
        continue;
      }
    }
    while (i < n && text[i] != ' ' && text[i] != '\n') ++i;
    out.push_back(text.substr(begin, i - begin));
  }
  return out;
}

bool is_pretoken(std::string_view bytes) {
  if (bytes.empty()) return false;
  if (bytes.find('\n') != std::string_view::npos) return false;
  return bytes.find(' ', 1) == std::string_view::npos;
}

PretokenTable::PretokenTable(std::vector<PretokenCount> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.bytes < b.bytes; });
  for (auto& e : entries) {
    if (e.count == 0) throw DataError("pretoken count must be positive");
    if (!is_pretoken(e.bytes)) {
      throw DataError("invalid pretoken \"" + escape_bytes(e.bytes) + "\"");
    }
    if (!entries_.empty() && entries_.back().bytes == e.bytes) {
      entries_.back().count += e.count;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  for (const auto& e : entries_) {
    total_atoms_ += e.count * e.bytes.size();
    total_count_ += e.count;
  }
}

std::uint64_t PretokenTable::count_of(std::string_view pretoken) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), pretoken,
      [](const PretokenCount& e, std::string_view key) { return e.bytes < key; });
  return it != entries_.end() && it->bytes == pretoken ? it->count : 0;
}

std::array<std::uint64_t, 256> PretokenTable::byte_counts() const {
  std::array<std::uint64_t, 256> counts{};
  for (const auto& e : entries_) {
    for (const char c : e.bytes) counts[static_cast<unsigned char>(c)] += e.count;
  }
  return counts;
}

PretokenTable PretokenTable::scaled(std::uint64_t factor) const {
  std::vector<PretokenCount> copy = entries_;
  for (auto& e : copy) e.count *= factor;
  return PretokenTable(std::move(copy));
}

void PretokenTableBuilder::add_document(std::string_view text) {
  for (const auto piece : pretokenize(text)) ++counts_[std::string(piece)];
}

void PretokenTableBuilder::add(std::string_view pretoken, std::uint64_t count) {
  counts_[std::string(pretoken)] += count;
}

void PretokenTableBuilder::merge(const PretokenTableBuilder& other) {
  for (const auto& [bytes, count] : other.counts_) counts_[bytes] += count;
}

PretokenTable PretokenTableBuilder::build() const {
  std::vector<PretokenCount> entries;
  entries.reserve(counts_.size());
  for (const auto& [bytes, count] : counts_) entries.push_back({bytes, count});
  return PretokenTable(std::move(entries));
}

PretokenTable build_pretoken_table(std::span<const std::string> documents) {
  PretokenTableBuilder builder;
  for (const auto& doc : documents) builder.add_document(doc);
  return builder.build();
}

PretokenTable build_pretoken_table(std::string_view text) {
  PretokenTableBuilder builder;
  builder.add_document(text);
  return builder.build();
}

std::vector<unsigned char> atomic_alphabet(const PretokenTable& table) {
  const auto counts = table.byte_counts();
  std::vector<unsigned char> out;
  for (int b = 0; b < 256; ++b) {
    if (counts[b] > 0) out.push_back(static_cast<unsigned char>(b));
  }
  return out;
}

std::vector<std::string> load_corpus(std::span<const std::filesystem::path> paths,
                                     std::optional<std::uint64_t> max_bytes) {
  std::vector<std::string> documents;
  std::uint64_t total = 0;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file " + path.string());
    std::string data{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
    if (in.bad()) throw DataError("error reading corpus file " + path.string());
    if (auto bad = find_invalid_utf8(data)) {
      throw DataError(path.string() + ": invalid UTF-8 at byte offset " +
                      std::to_string(*bad));
    }
    std::size_t pos = 0;
    while (pos < data.size()) {
      std::size_t end = data.find('\n', pos);
      if (end == std::string::npos) end = data.size();
      std::string_view line(data.data() + pos, end - pos);
      pos = end + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty()) continue;
      if (max_bytes && total + line.size() > *max_bytes) return documents;
      total += line.size();
      documents.emplace_back(line);
    }
  }
  return documents;
}

void write_table(std::ostream& out, const PretokenTable& table) {
  for (const auto& e : table.entries()) {
    out << e.count << '\t' << escape_bytes(e.bytes) << '\n';
  }
}

PretokenTable read_table(std::istream& in) {
  std::vector<PretokenCount> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError("table line " + std::to_string(line_no) +
                      ": expected count<TAB>pretoken");
    }
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(line.substr(0, tab), &used);
      if (used != tab) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DataError("table line " + std::to_string(line_no) + ": bad count");
    }
    entries.push_back({unescape_bytes(std::string_view(line).substr(tab + 1)), count});
  }
  return PretokenTable(std::move(entries));
}

}  // namespace unitok
