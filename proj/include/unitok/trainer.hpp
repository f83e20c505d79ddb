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

#ifndef UNITOK_TRAINER_HPP_
#define UNITOK_TRAINER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unitok/corpus.hpp"
#include "unitok/seed.hpp"
#include "unitok/vocabulary.hpp"

namespace unitok {

enum class SeedMode { kPretoken, kFullText };
enum class PruneMode { kLikelihood, kFinalStyle };

// Pruning-score model for the likelihood pruning step.
enum class PruneScore {
  // Occurrences of the removed token move onto its alternative tokens, whose
  // counts and the total are adjusted accordingly.
  kRedistribute,
  // Plain log-probability difference between the alternative and the token.
  kLogProbDelta,
};

// Training hyperparameters. Defaults follow the reference implementation,
// except for the seed size, which is relative to the target size.
struct TrainerConfig {
  std::size_t vocab_size = 0;
  double beta_seed = 10.0;
  int em_iterations = 2;
  double alpha_prune = 0.75;
  double alpha_inter = 1.1;
  double tau_mp = 0.5;
  bool digamma = true;
  std::size_t max_token_length = kDefaultMaxTokenLength;
  SeedMode seed_mode = SeedMode::kPretoken;
  bool recovery = false;
  PruneMode prune_mode = PruneMode::kLikelihood;
  PruneScore prune_score = PruneScore::kRedistribute;
  unsigned threads = 1;

  // Throws ConfigError naming the offending parameter.
  void validate() const;

  // ceil(beta_seed × vocab_size), the number of multi-byte seed candidates.
  std::size_t seed_size() const;
  // ceil(alpha_inter × vocab_size), where the pruning loop stops.
  std::size_t intermediate_size() const;

  // Single-line `key=value` rendering, using the CLI flag names.
  std::string to_string() const;
};

// Input to training. Documents are only needed for full-text seeding.
struct Corpus {
  std::vector<std::string> documents;
  PretokenTable table;

  static Corpus from_documents(std::vector<std::string> documents);
};

struct IterationRecord {
  int round = 0;          // pruning round, starting at 0
  std::string phase;      // "seed", "em", "prune", "finalize", "final"
  std::size_t vocab_size = 0;
  double loss = 0.0;      // corpus loss after the phase; NaN when not measured
  double seconds = 0.0;   // wall time since training started
};

struct TrainingReport {
  std::vector<IterationRecord> records;
  double final_loss = 0.0;
};

struct TrainingResult {
  Vocabulary vocab;
  TrainingReport report;
};

struct EStepResult {
  std::vector<double> counts;  // expected count per token id
  double loss = 0.0;           // corpus loss at the input probabilities
};

// Expected token counts over all segmentations of every pretoken, weighted by
// pretoken counts, plus the corpus loss. Work is split into fixed chunks
// whose partial sums are reduced in order, so results do not depend on the
// thread count. Throws DataError if a byte is not covered.
EStepResult e_step(const PretokenTable& table, const Vocabulary& vocab,
                   unsigned threads = 1);

struct MStepResult {
  Vocabulary vocab;
  std::vector<double> counts;  // input counts of the surviving tokens
};

// Drops non-required tokens whose expected count is below tau_mp (or zero),
// then re-estimates probabilities from the counts, through exp(ψ(c)) when
// `digamma` is set. Required tokens are kept with their count clamped up to
// tau_mp; a required token left at zero gets log probability -30 before
// normalization. Throws DataError if every count is zero.
MStepResult m_step(std::span<const double> counts, const Vocabulary& vocab,
                   double tau_mp, bool digamma);

// Likelihood pruning step. Removes non-required tokens whose own Viterbi
// segmentation is not the token itself, then keeps the required tokens plus
// the survivors whose removal would cost the most likelihood, up to
// target_size. `counts` is aligned with `vocab`.
Vocabulary prune_step_likelihood(const Vocabulary& vocab, std::span<const double> counts,
                                 std::size_t target_size,
                                 PruneScore score = PruneScore::kRedistribute);

// Removal cost of each token under the likelihood pruning model, aligned with
// `vocab`. Required tokens and tokens dropped by the self-segmentation rule
// get +infinity and -infinity respectively.
std::vector<double> prune_losses(const Vocabulary& vocab, std::span<const double> counts,
                                 PruneScore score = PruneScore::kRedistribute);

// Keeps all required tokens plus the most probable others, up to
// target_size in total, and renormalizes. Ties at the cutoff go to the
// lexicographically smaller token.
Vocabulary prune_step_probability(const Vocabulary& vocab, std::size_t target_size);

// Final selection to exactly n tokens. Throws ConfigError if the vocabulary
// is smaller than n or n is below the number of required tokens.
Vocabulary finalize(const Vocabulary& vocab, std::size_t n);

// Builds the seed vocabulary for the configured seed mode.
Vocabulary make_seed_vocabulary(const Corpus& corpus, const TrainerConfig& config);

// The full training loop: seed, then rounds of EM sub-iterations each
// followed by a pruning step, until the vocabulary is at most
// alpha_inter × n; then the final probability-based selection to n tokens.
TrainingResult train(const Corpus& corpus, const TrainerConfig& config);

}  // namespace unitok

#endif  // UNITOK_TRAINER_HPP_
