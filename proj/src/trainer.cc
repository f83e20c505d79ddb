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

#include "unitok/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "unitok/digamma.hpp"
#include "unitok/errors.hpp"
#include "unitok/lattice.hpp"

namespace unitok {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRequiredFloorLogProb = -30.0;

// ceil() that ignores representation noise such as 1.1 * 10 = 11.000000000000002.
std::size_t ceil_size(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

// Keeps the ids flagged in `keep` (in vocabulary order) and renormalizes.
Vocabulary subset(const Vocabulary& vocab, const std::vector<bool>& keep) {
  std::vector<Vocabulary::Entry> entries;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (keep[i]) entries.push_back(vocab[static_cast<TokenId>(i)]);
  }
  return Vocabulary(std::move(entries)).normalized();
}

}  // namespace

void TrainerConfig::validate() const {
  if (vocab_size == 0) throw ConfigError("--vocab-size must be positive");
  if (!(beta_seed >= 1.0)) throw ConfigError("--beta-seed must be at least 1");
  if (em_iterations < 1) throw ConfigError("--n-em must be at least 1");
  if (!(alpha_prune >= 0.0 && alpha_prune < 1.0)) {
    throw ConfigError("--alpha-prune must lie in [0, 1)");
  }
  if (!(alpha_inter >= 1.0)) throw ConfigError("--alpha-inter must be at least 1");
  if (!(tau_mp >= 0.0)) throw ConfigError("--tau-mp must be non-negative");
  if (max_token_length < 2) throw ConfigError("--max-token-len must be at least 2");
  if (threads < 1) throw ConfigError("--threads must be at least 1");
}

std::size_t TrainerConfig::seed_size() const {
  return ceil_size(beta_seed * static_cast<double>(vocab_size));
}

std::size_t TrainerConfig::intermediate_size() const {
  return ceil_size(alpha_inter * static_cast<double>(vocab_size));
}

std::string TrainerConfig::to_string() const {
  std::ostringstream os;
  os << "vocab-size=" << vocab_size << " beta-seed=" << beta_seed
     << " n-em=" << em_iterations << " alpha-prune=" << alpha_prune
     << " alpha-inter=" << alpha_inter << " tau-mp=" << tau_mp
     << " digamma=" << (digamma ? "on" : "off")
     << " max-token-len=" << max_token_length
     << " seed-mode=" << (seed_mode == SeedMode::kPretoken ? "pretoken" : "fulltext")
     << " recovery=" << (recovery ? "on" : "off")
     << " prune-mode=" << (prune_mode == PruneMode::kLikelihood ? "likelihood" : "fsp");
  if (prune_score == PruneScore::kLogProbDelta) os << " prune-score=logprob";
  return os.str();
}

Corpus Corpus::from_documents(std::vector<std::string> documents) {
  Corpus corpus;
  corpus.table = build_pretoken_table(documents);
  corpus.documents = std::move(documents);
  return corpus;
}

EStepResult e_step(const PretokenTable& table, const Vocabulary& vocab, unsigned threads) {
  const auto entries = table.entries();
  const std::size_t chunk =
      std::max<std::size_t>(1024, (entries.size() + 63) / 64);
  const std::size_t n_chunks = (entries.size() + chunk - 1) / chunk;
  std::vector<std::vector<double>> partial(n_chunks);
  std::vector<double> partial_loglik(n_chunks, 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto work = [&] {
    Lattice lattice;
    try {
      for (std::size_t k = next++; k < n_chunks && !failed; k = next++) {
        auto& counts = partial[k];
        counts.assign(vocab.size(), 0.0);
        double loglik = 0.0;
        const std::size_t end = std::min(entries.size(), (k + 1) * chunk);
        for (std::size_t i = k * chunk; i < end; ++i) {
          const double w = static_cast<double>(entries[i].count);
          lattice.reset(entries[i].bytes, vocab);
          loglik += w * accumulate_expected_counts(lattice, w, counts);
        }
        partial_loglik[k] = loglik;
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  const std::size_t n_threads = std::min<std::size_t>(std::max(1u, threads), n_chunks);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  EStepResult result;
  result.counts.assign(vocab.size(), 0.0);
  double loglik = 0.0;
  for (std::size_t k = 0; k < n_chunks; ++k) {
    for (std::size_t j = 0; j < vocab.size(); ++j) result.counts[j] += partial[k][j];
    loglik += partial_loglik[k];
  }
  result.loss = table.total_atoms() == 0
                    ? 0.0
                    : -loglik / static_cast<double>(table.total_atoms());
  return result;
}

MStepResult m_step(std::span<const double> counts, const Vocabulary& vocab, double tau_mp,
                   bool digamma) {
  if (counts.size() != vocab.size()) {
    throw ConfigError("m_step: counts do not match the vocabulary");
  }
  if (std::all_of(counts.begin(), counts.end(), [](double c) { return !(c > 0.0); })) {
    throw DataError("m_step: all expected counts are zero");
  }
  std::vector<Vocabulary::Entry> entries;
  MStepResult result;
  std::vector<double> score;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    double c = counts[i];
    if (!vocab.required(id) && (c < tau_mp || !(c > 0.0))) continue;  // early prune
    result.counts.push_back(c);
    if (vocab.required(id)) c = std::max(c, tau_mp);
    entries.push_back(vocab[id]);
    score.push_back(c > 0.0 ? (digamma ? unitok::digamma(c) : std::log(c)) : -kInf);
  }
  double hi = -kInf;
  for (const double s : score) hi = std::max(hi, s);
  double sum = 0.0;
  for (const double s : score) {
    if (s > -kInf) sum += std::exp(s - hi);
  }
  const double z = hi + std::log(sum);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    entries[k].log_prob = score[k] > -kInf ? score[k] - z : kRequiredFloorLogProb;
  }
  result.vocab = Vocabulary(std::move(entries)).normalized();
  return result;
}

std::vector<double> prune_losses(const Vocabulary& vocab, std::span<const double> counts,
                                 PruneScore score) {
  if (counts.size() != vocab.size()) {
    throw ConfigError("prune: counts do not match the vocabulary");
  }
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::vector<double> loss(vocab.size(), kInf);
  Lattice lattice;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    if (vocab.required(id)) continue;
    lattice.reset(vocab.token(id), vocab);
    const Segmentation best = viterbi(lattice);
    if (best.token_ids.size() != 1 || best.token_ids[0] != id) {
      loss[i] = -kInf;  // never chosen over its own text
      continue;
    }
    const Segmentation alt = viterbi_excluding_singleton(lattice);
    const double c = counts[i];
    if (!(c > 0.0)) {
      loss[i] = 0.0;
      continue;
    }
    if (score == PruneScore::kLogProbDelta) {
      loss[i] = c * (vocab.log_prob(id) - alt.log_prob);
      continue;
    }
    const double old_ll = std::log(c / total);
    const double new_total = total + c * (static_cast<double>(alt.token_ids.size()) - 1.0);
    double new_ll = 0.0;
    for (const TokenId a : alt.token_ids) new_ll += std::log((counts[a] + c) / new_total);
    loss[i] = c * (old_ll - new_ll);
  }
  return loss;
}

Vocabulary prune_step_likelihood(const Vocabulary& vocab, std::span<const double> counts,
                                 std::size_t target_size, PruneScore score) {
  const auto loss = prune_losses(vocab, counts, score);
  std::vector<bool> keep(vocab.size(), false);
  std::vector<TokenId> candidates;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto id = static_cast<TokenId>(i);
    if (vocab.required(id)) {
      keep[i] = true;
      ++kept;
    } else if (loss[i] > -kInf) {
      candidates.push_back(id);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](TokenId a, TokenId b) {
    if (loss[a] != loss[b]) return loss[a] > loss[b];
    return vocab.token(a) < vocab.token(b);
  });
  for (const TokenId id : candidates) {
    if (kept >= target_size) break;
    keep[id] = true;
    ++kept;
  }
  return subset(vocab, keep);
}

Vocabulary prune_step_probability(const Vocabulary& vocab, std::size_t target_size) {
  std::vector<bool> keep(vocab.size(), false);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (vocab.required(static_cast<TokenId>(i))) {
      keep[i] = true;
      ++kept;
    }
  }
  for (const TokenId id : vocab.ids_by_probability()) {
    if (kept >= target_size) break;
    if (keep[id]) continue;
    keep[id] = true;
    ++kept;
  }
  return subset(vocab, keep);
}

Vocabulary finalize(const Vocabulary& vocab, std::size_t n) {
  if (n < vocab.required_count()) {
    throw ConfigError("target size " + std::to_string(n) + " is below the " +
                      std::to_string(vocab.required_count()) + " required tokens");
  }
  if (vocab.size() < n) {
    throw DataError("training produced only " + std::to_string(vocab.size()) +
                    " tokens, fewer than the requested " + std::to_string(n));
  }
  return prune_step_probability(vocab, n);
}

Vocabulary make_seed_vocabulary(const Corpus& corpus, const TrainerConfig& config) {
  const std::size_t n_seed = config.seed_size();
  const std::size_t max_len = config.max_token_length;
  if (config.seed_mode == SeedMode::kPretoken) {
    return finalize_seed(emit_seed_pretoken(corpus.table, n_seed, max_len, config.recovery));
  }
  if (corpus.documents.empty()) {
    throw ConfigError("full-text seeding needs the corpus documents");
  }
  const SuffixIndex index = build_fulltext_index(corpus.documents);
  return finalize_seed(emit_seed(index, SeedOptions{n_seed, max_len, config.recovery, {}}));
}

TrainingResult train(const Corpus& corpus, const TrainerConfig& config) {
  config.validate();
  const PretokenTable& table = corpus.table;
  if (table.empty()) throw DataError("cannot train on an empty corpus");
  const std::size_t alphabet = atomic_alphabet(table).size();
  if (config.vocab_size < alphabet) {
    throw ConfigError("--vocab-size " + std::to_string(config.vocab_size) +
                      " is below the alphabet size " + std::to_string(alphabet));
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  TrainingResult result;
  auto& records = result.report.records;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Vocabulary vocab = make_seed_vocabulary(corpus, config);
  records.push_back({0, "seed", vocab.size(), nan, elapsed()});

  const std::size_t n_inter = config.intermediate_size();
  std::vector<double> counts;
  for (int round = 0;; ++round) {
    for (int it = 0; it < config.em_iterations; ++it) {
      const EStepResult es = e_step(table, vocab, config.threads);
      MStepResult ms = m_step(es.counts, vocab, config.tau_mp, config.digamma);
      vocab = std::move(ms.vocab);
      counts = std::move(ms.counts);
      records.push_back({round, "em", vocab.size(), es.loss, elapsed()});
    }
    if (vocab.size() <= n_inter) break;
    std::size_t target = std::max(
        n_inter, ceil_size(config.alpha_prune * static_cast<double>(vocab.size())));
    target = std::min(target, vocab.size() - 1);
    vocab = config.prune_mode == PruneMode::kLikelihood
                ? prune_step_likelihood(vocab, counts, target, config.prune_score)
                : prune_step_probability(vocab, target);
    records.push_back({round, "prune", vocab.size(), nan, elapsed()});
  }

  const int last_round = records.back().round;
  vocab = finalize(vocab, config.vocab_size);
  records.push_back({last_round, "finalize", vocab.size(), nan, elapsed()});
  const EStepResult final_step = e_step(table, vocab, config.threads);
  records.push_back({last_round, "final", vocab.size(), final_step.loss, elapsed()});
  result.report.final_loss = final_step.loss;
  result.vocab = std::move(vocab);
  return result;
}

}  // namespace unitok
