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

#include "unitok/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"

namespace unitok {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct Cell {
  double score = kNegInf;
  std::uint32_t tokens = 0;
  std::int64_t edge = -1;  // best incoming edge
};

std::vector<TokenId> backtrack(const Lattice& lattice, const std::vector<Cell>& cells,
                               std::size_t node) {
  std::vector<TokenId> ids;
  const auto edges = lattice.edges();
  while (node > 0) {
    const auto& e = edges[cells[node].edge];
    ids.push_back(e.token);
    node = e.start;
  }
  std::reverse(ids.begin(), ids.end());
  return ids;
}

Segmentation viterbi_impl(const Lattice& lattice, bool exclude_full_span) {
  const std::size_t n = lattice.length();
  const auto edges = lattice.edges();
  std::vector<Cell> cells(n + 1);
  cells[0].score = 0.0;
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    if (exclude_full_span && e.start == 0 && e.end == n) continue;
    const Cell& from = cells[e.start];
    if (from.score == kNegInf) continue;
    const double score = from.score + e.log_prob;
    const std::uint32_t tokens = from.tokens + 1;
    Cell& to = cells[e.end];
    bool better = false;
    if (to.edge < 0) {
      better = true;
    } else if (!nearly_equal(score, to.score)) {
      better = score > to.score;
    } else if (tokens != to.tokens) {
      better = tokens < to.tokens;
    } else {
      // Exact tie on score and length: compare the two id sequences.
      auto candidate = backtrack(lattice, cells, e.start);
      candidate.push_back(e.token);
      better = candidate < backtrack(lattice, cells, e.end);
    }
    if (better) to = Cell{score, tokens, static_cast<std::int64_t>(ei)};
  }
  Segmentation seg;
  if (n == 0) return seg;
  if (cells[n].edge < 0) return Segmentation{{}, kNegInf};
  seg.token_ids = backtrack(lattice, cells, n);
  seg.log_prob = cells[n].score;
  return seg;
}

}  // namespace

void Lattice::reset(std::string_view pretoken, const Vocabulary& vocab) {
  length_ = pretoken.size();
  edges_.clear();
  begin_.assign(length_ + 2, 0);
  const auto& trie = vocab.trie();
  const std::size_t max_len = vocab.max_token_length();
  for (std::size_t start = 0; start < length_; ++start) {
    begin_[start] = static_cast<std::uint32_t>(edges_.size());
    const auto window = pretoken.substr(start, max_len);
    bool has_atom = false;
    trie.for_each_prefix(window, [&](std::size_t len, TokenId id) {
      has_atom |= len == 1;
      edges_.push_back({static_cast<std::uint32_t>(start),
                        static_cast<std::uint32_t>(start + len), id,
                        vocab.log_prob(id)});
    });
    if (!has_atom) {
      throw DataError("byte \"" + escape_bytes(pretoken.substr(start, 1)) +
                      "\" at offset " + std::to_string(start) +
                      " is not covered by the vocabulary");
    }
  }
  begin_[length_] = begin_[length_ + 1] = static_cast<std::uint32_t>(edges_.size());
}

Segmentation viterbi(const Lattice& lattice) { return viterbi_impl(lattice, false); }

Segmentation viterbi_excluding_singleton(const Lattice& lattice) {
  return viterbi_impl(lattice, true);
}

Segmentation viterbi_excluding_singleton(std::string_view token_bytes,
                                         const Vocabulary& vocab) {
  if (token_bytes.size() < 2) {
    throw ConfigError("second-best segmentation needs a text of at least two bytes");
  }
  return viterbi_impl(Lattice(token_bytes, vocab), true);
}

ForwardBackward forward_backward(const Lattice& lattice) {
  const std::size_t n = lattice.length();
  const auto edges = lattice.edges();
  ForwardBackward fb;
  fb.forward.assign(n + 1, kNegInf);
  fb.backward.assign(n + 1, kNegInf);
  fb.forward[0] = 0.0;
  for (const auto& e : edges) {
    fb.forward[e.end] = log_add(fb.forward[e.end], fb.forward[e.start] + e.log_prob);
  }
  fb.backward[n] = 0.0;
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    fb.backward[it->start] =
        log_add(fb.backward[it->start], it->log_prob + fb.backward[it->end]);
  }
  return fb;
}

double marginal_log_prob(const Lattice& lattice) {
  const auto edges = lattice.edges();
  std::vector<double> forward(lattice.length() + 1, kNegInf);
  forward[0] = 0.0;
  for (const auto& e : edges) {
    forward[e.end] = log_add(forward[e.end], forward[e.start] + e.log_prob);
  }
  return forward.back();
}

double accumulate_expected_counts(const Lattice& lattice, double weight,
                                  std::span<double> counts) {
  const auto fb = forward_backward(lattice);
  const double z = fb.marginal();
  for (const auto& e : lattice.edges()) {
    const double posterior = std::exp(fb.forward[e.start] + e.log_prob + fb.backward[e.end] - z);
    counts[e.token] += weight * posterior;
  }
  return z;
}

std::vector<std::pair<TokenId, double>> expected_counts(const Lattice& lattice,
                                                        double weight) {
  const auto fb = forward_backward(lattice);
  const double z = fb.marginal();
  std::vector<std::pair<TokenId, double>> out;
  for (const auto& e : lattice.edges()) {
    out.emplace_back(e.token, weight * std::exp(fb.forward[e.start] + e.log_prob +
                                                fb.backward[e.end] - z));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<TokenId, double>> merged;
  for (const auto& [id, c] : out) {
    if (!merged.empty() && merged.back().first == id) {
      merged.back().second += c;
    } else {
      merged.emplace_back(id, c);
    }
  }
  return merged;
}

Segmentation sample_segmentation(const Lattice& lattice, double temperature,
                                 std::mt19937_64& rng) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  const std::size_t n = lattice.length();
  const auto edges = lattice.edges();
  const double inv_t = 1.0 / temperature;
  std::vector<double> forward(n + 1, kNegInf);
  forward[0] = 0.0;
  std::vector<std::vector<std::uint32_t>> incoming(n + 1);
  for (std::uint32_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    forward[e.end] = log_add(forward[e.end], forward[e.start] + e.log_prob * inv_t);
    incoming[e.end].push_back(ei);
  }
  Segmentation seg;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::size_t node = n;
  while (node > 0) {
    const auto& in = incoming[node];
    // Posterior of each incoming edge given the path continues from `node`.
    double u = uniform(rng);
    // Falls back to the last reachable edge if rounding leaves u past the end.
    std::uint32_t chosen = in.back();
    for (const auto ei : in) {
      const auto& e = edges[ei];
      if (forward[e.start] == kNegInf) continue;
      chosen = ei;
      const double p = std::exp(forward[e.start] + e.log_prob * inv_t - forward[node]);
      if (u < p) break;
      u -= p;
    }
    const auto& e = edges[chosen];
    seg.token_ids.push_back(e.token);
    seg.log_prob += e.log_prob;
    node = e.start;
  }
  std::reverse(seg.token_ids.begin(), seg.token_ids.end());
  return seg;
}

Segmentation sample_segmentation(const Lattice& lattice, double temperature,
                                 std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return sample_segmentation(lattice, temperature, rng);
}

}  // namespace unitok
