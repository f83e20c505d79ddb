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

#ifndef UNITOK_LATTICE_HPP_
#define UNITOK_LATTICE_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "unitok/vocabulary.hpp"

namespace unitok {

// One token occurrence spanning bytes [start, end) of a pretoken.
struct LatticeEdge {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  TokenId token = -1;
  double log_prob = 0.0;
};

// Segmentation DAG of one pretoken. Nodes are byte positions 0..length and
// edges are the vocabulary tokens found at each position. Edges are stored
// sorted by start then end, which is a topological order for both the
// forward and the backward pass.
class Lattice {
 public:
  Lattice() = default;

  // Throws DataError naming the byte if some position is not covered by a
  // single-byte token, which would leave the end node unreachable.
  Lattice(std::string_view pretoken, const Vocabulary& vocab) {
    reset(pretoken, vocab);
  }

  // Rebuilds in place, reusing storage.
  void reset(std::string_view pretoken, const Vocabulary& vocab);

  std::size_t length() const { return length_; }
  std::span<const LatticeEdge> edges() const { return edges_; }

  // Index range into edges() of the edges leaving `node`.
  std::pair<std::size_t, std::size_t> edges_from(std::size_t node) const {
    return {begin_[node], begin_[node + 1]};
  }

 private:
  std::size_t length_ = 0;
  std::vector<LatticeEdge> edges_;
  std::vector<std::uint32_t> begin_;
};

struct Segmentation {
  std::vector<TokenId> token_ids;
  double log_prob = 0.0;
};

// Highest-probability tiling. Ties (within a relative 1e-12) go to fewer
// tokens, then to the lexicographically smallest token id sequence.
Segmentation viterbi(const Lattice& lattice);

// Best tiling that does not use the edge spanning the whole pretoken, i.e.
// the best segmentation of a token's own text other than the token itself.
Segmentation viterbi_excluding_singleton(const Lattice& lattice);
// Throws ConfigError for texts shorter than two bytes.
Segmentation viterbi_excluding_singleton(std::string_view token_bytes,
                                         const Vocabulary& vocab);

// log Σ over all tilings of P(tiling), by the forward recursion.
double marginal_log_prob(const Lattice& lattice);

// Forward and backward log-space tables. forward[i] is the log mass of all
// paths 0 -> i, backward[i] of all paths i -> length.
struct ForwardBackward {
  std::vector<double> forward;
  std::vector<double> backward;
  double marginal() const { return forward.back(); }
};
ForwardBackward forward_backward(const Lattice& lattice);

// Adds weight × posterior marginal of every edge into counts[token] and
// returns the marginal log probability. `counts` must be sized to the
// vocabulary the lattice was built from.
double accumulate_expected_counts(const Lattice& lattice, double weight,
                                  std::span<double> counts);

// Sparse form of the above: (token, expected count) sorted by token id.
std::vector<std::pair<TokenId, double>> expected_counts(const Lattice& lattice,
                                                        double weight);

// Draws a tiling with probability proportional to P(x)^(1/temperature) by
// forward filtering and backward sampling.
Segmentation sample_segmentation(const Lattice& lattice, double temperature,
                                 std::mt19937_64& rng);
Segmentation sample_segmentation(const Lattice& lattice, double temperature,
                                 std::uint64_t rng_seed);

}  // namespace unitok

#endif  // UNITOK_LATTICE_HPP_
