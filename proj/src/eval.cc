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

#include "unitok/eval.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"
#include "unitok/lattice.hpp"

namespace unitok {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> UnigramSegmenter::segment(std::string_view pretoken) const {
  const Segmentation seg = viterbi(Lattice(pretoken, vocab_));
  std::vector<std::string> out;
  out.reserve(seg.token_ids.size());
  for (const TokenId id : seg.token_ids) out.emplace_back(vocab_.token(id));
  return out;
}

std::size_t UnigramSegmenter::count(std::string_view pretoken) const {
  return viterbi(Lattice(pretoken, vocab_)).token_ids.size();
}

double corpus_loss(const PretokenTable& table, const Vocabulary& vocab) {
  if (table.total_atoms() == 0) return 0.0;
  Lattice lattice;
  double loglik = 0.0;
  for (const auto& e : table.entries()) {
    lattice.reset(e.bytes, vocab);
    loglik += static_cast<double>(e.count) * marginal_log_prob(lattice);
  }
  return -loglik / static_cast<double>(table.total_atoms());
}

double viterbi_loss(const PretokenTable& table, const Vocabulary& vocab) {
  if (table.total_atoms() == 0) return 0.0;
  Lattice lattice;
  double loglik = 0.0;
  for (const auto& e : table.entries()) {
    lattice.reset(e.bytes, vocab);
    loglik += static_cast<double>(e.count) * viterbi(lattice).log_prob;
  }
  return -loglik / static_cast<double>(table.total_atoms());
}

std::uint64_t token_count(const PretokenTable& table, const Segmenter& segmenter) {
  std::uint64_t total = 0;
  for (const auto& e : table.entries()) total += e.count * segmenter.count(e.bytes);
  return total;
}

double vocab_overlap(const Vocabulary& a, const Vocabulary& b) {
  if (a.size() != b.size()) {
    throw ConfigError("vocabulary overlap needs equal sizes (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) return 100.0;
  std::size_t shared = 0;
  for (const auto& e : a.entries()) shared += b.contains(e.bytes) ? 1 : 0;
  return 100.0 * static_cast<double>(shared) / static_cast<double>(a.size());
}

GoldWord parse_gold_line(std::string_view line) {
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw DataError("gold line \"" + escape_bytes(line) + "\": expected word<TAB>morphs");
  }
  GoldWord gold;
  gold.word = std::string(trim(line.substr(0, tab)));
  std::string_view rest = line.substr(tab + 1);
  std::string_view morphs = rest;
  if (const auto tab2 = rest.find('\t'); tab2 != std::string_view::npos) {
    morphs = rest.substr(0, tab2);
    const std::string freq(trim(rest.substr(tab2 + 1)));
    try {
      gold.frequency = std::stod(freq);
    } catch (const std::exception&) {
      throw DataError("gold line for \"" + gold.word + "\": bad frequency");
    }
    if (!(gold.frequency >= 0.0)) {
      throw DataError("gold line for \"" + gold.word + "\": negative frequency");
    }
  }
  std::string spelled;
  std::size_t pos = 0;
  while (true) {
    const auto bar = morphs.find('|', pos);
    const auto morph = trim(morphs.substr(pos, bar == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : bar - pos));
    if (morph.empty()) throw DataError("gold line for \"" + gold.word + "\": empty morph");
    spelled += morph;
    if (bar == std::string_view::npos) break;
    gold.boundaries.push_back(spelled.size());
    pos = bar + 1;
  }
  if (spelled != gold.word) {
    throw DataError("gold morphs for \"" + gold.word + "\" spell \"" + spelled + "\"");
  }
  return gold;
}

std::vector<GoldWord> read_gold(std::istream& in) {
  std::vector<GoldWord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    out.push_back(parse_gold_line(line));
  }
  return out;
}

std::vector<GoldWord> read_gold_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold file " + path.string());
  return read_gold(in);
}

bool matches_gold(std::span<const std::string> pieces,
                  std::span<const std::size_t> boundaries) {
  std::vector<std::size_t> cuts;
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    offset += pieces[i].size();
    cuts.push_back(offset);
  }
  return std::all_of(boundaries.begin(), boundaries.end(), [&](std::size_t b) {
    return std::binary_search(cuts.begin(), cuts.end(), b);
  });
}

BoundaryRecall boundary_recall(std::span<const GoldWord> gold, const Segmenter& segmenter,
                               bool prefix_space) {
  if (gold.empty()) throw ConfigError("boundary recall needs at least one gold word");
  BoundaryRecall r;
  double total_weight = 0.0, matched_weight = 0.0;
  for (const auto& g : gold) {
    const std::string text = prefix_space ? " " + g.word : g.word;
    std::vector<std::size_t> boundaries = g.boundaries;
    if (prefix_space) {
      for (auto& b : boundaries) b += 1;
    }
    const bool match = matches_gold(segmenter.segment(text), boundaries);
    ++r.words;
    total_weight += g.frequency;
    if (match) {
      ++r.matched;
      matched_weight += g.frequency;
    }
  }
  r.uniform = static_cast<double>(r.matched) / static_cast<double>(r.words);
  r.weighted = total_weight > 0.0 ? matched_weight / total_weight : 0.0;
  return r;
}

}  // namespace unitok
