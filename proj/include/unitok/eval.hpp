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

#ifndef UNITOK_EVAL_HPP_
#define UNITOK_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitok/bpe.hpp"
#include "unitok/corpus.hpp"
#include "unitok/vocabulary.hpp"

namespace unitok {

// Anything that splits a pretoken into tokens.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::vector<std::string> segment(std::string_view pretoken) const = 0;
  virtual std::size_t count(std::string_view pretoken) const {
    return segment(pretoken).size();
  }
};

// Viterbi segmentation under a unigram vocabulary.
class UnigramSegmenter : public Segmenter {
 public:
  explicit UnigramSegmenter(const Vocabulary& vocab) : vocab_(vocab) {}
  std::vector<std::string> segment(std::string_view pretoken) const override;
  std::size_t count(std::string_view pretoken) const override;

 private:
  const Vocabulary& vocab_;
};

class BpeSegmenter : public Segmenter {
 public:
  explicit BpeSegmenter(const MergeList& merges) : merges_(merges) {}
  std::vector<std::string> segment(std::string_view pretoken) const override {
    return merges_.encode(pretoken);
  }

 private:
  const MergeList& merges_;
};

// Marginal negative log-likelihood per atomic token (nats per byte):
// -(Σ count × log Σ_segmentations P) / total_atoms.
double corpus_loss(const PretokenTable& table, const Vocabulary& vocab);

// Same normalization, but scoring each pretoken by its Viterbi path only.
// Never below corpus_loss.
double viterbi_loss(const PretokenTable& table, const Vocabulary& vocab);

// Σ count × number of tokens in the segmentation of each pretoken.
std::uint64_t token_count(const PretokenTable& table, const Segmenter& segmenter);

// 100 × |a ∩ b| / |a|. Throws ConfigError when the sizes differ.
double vocab_overlap(const Vocabulary& a, const Vocabulary& b);

struct GoldWord {
  std::string word;
  std::vector<std::size_t> boundaries;  // internal byte offsets, ascending
  double frequency = 1.0;
};

// Parses `word<TAB>morph1|morph2|...[<TAB>frequency]`. Spaces around the
// bars are ignored. Throws DataError if the morphs do not spell the word.
GoldWord parse_gold_line(std::string_view line);
std::vector<GoldWord> read_gold(std::istream& in);
std::vector<GoldWord> read_gold_file(const std::filesystem::path& path);

struct BoundaryRecall {
  double weighted = 0.0;  // frequency-weighted fraction of matching words
  double uniform = 0.0;   // each word counted once
  std::size_t words = 0;
  std::size_t matched = 0;
};

// Fraction of gold words whose segmentation contains every gold boundary.
// With `prefix_space` each word is segmented as " word" (its mid-sentence
// form) and offsets are shifted accordingly. Throws ConfigError for an empty
// gold list.
BoundaryRecall boundary_recall(std::span<const GoldWord> gold, const Segmenter& segmenter,
                               bool prefix_space = false);

// True if the internal boundaries of `pieces` include all of `boundaries`.
bool matches_gold(std::span<const std::string> pieces,
                  std::span<const std::size_t> boundaries);

struct MetricsRow {
  double loss = 0.0;
  std::uint64_t tokens = 0;
  std::optional<double> overlap;
  std::optional<BoundaryRecall> morph;
};

}  // namespace unitok

#endif  // UNITOK_EVAL_HPP_
