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

#include <cmath>
#include <map>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "unitok/errors.hpp"

namespace unitok {
namespace {

using testing::brute_force;
using testing::make_vocab;

// p(ab)=0.5, p(a)=0.3, p(b)=0.2.
Vocabulary ab_vocab() { return make_vocab({{"a", 0.3}, {"b", 0.2}, {"ab", 0.5}}); }

Vocabulary abc_vocab() {
  return make_vocab(
      {{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"ab", 0.125}, {"bc", 0.125}});
}

std::vector<std::string> pieces(const Segmentation& seg, const Vocabulary& v) {
  std::vector<std::string> out;
  for (const TokenId id : seg.token_ids) out.emplace_back(v.token(id));
  return out;
}

std::map<TokenId, double> as_map(const std::vector<std::pair<TokenId, double>>& counts) {
  return {counts.begin(), counts.end()};
}

// Random vocabulary over `alphabet` with every single byte present and up to
// `extra` multi-byte tokens, normalized.
Vocabulary random_vocab(std::mt19937_64& rng, std::string_view alphabet, int extra) {
  std::map<std::string, double> weights;
  std::uniform_real_distribution<double> w(0.05, 1.0);
  for (const char c : alphabet) weights[std::string(1, c)] = w(rng);
  for (int i = 0; i < extra; ++i) weights[testing::random_string(rng, 2, 4, alphabet)] = w(rng);
  std::vector<Vocabulary::Entry> entries;
  for (const auto& [t, x] : weights) entries.push_back({t, std::log(x), t.size() == 1});
  return Vocabulary(std::move(entries)).normalized();
}

TEST(LatticeTest, EdgeEnumeration) {
  EXPECT_EQ(Lattice("ab", ab_vocab()).edges().size(), 3u);
  EXPECT_EQ(Lattice("a", make_vocab({{"a", 1.0}})).edges().size(), 1u);
  const Lattice abc("abc", abc_vocab());
  EXPECT_EQ(abc.edges().size(), 5u);
  for (const auto& e : abc.edges()) {
    EXPECT_LT(e.start, e.end);
    EXPECT_FALSE(e.start == 0 && e.end == 3);
  }
}

TEST(LatticeTest, EdgesMatchTokenBytesAndAreSortedByStart) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Vocabulary v = random_vocab(rng, "abc", 8);
    const std::string text = testing::random_string(rng, 1, 12, "abc");
    const Lattice lattice(text, v);
    std::uint32_t last_start = 0;
    for (const auto& e : lattice.edges()) {
      ASSERT_GE(e.start, last_start);
      last_start = e.start;
      ASSERT_EQ(v.token(e.token), text.substr(e.start, e.end - e.start));
    }
  }
}

TEST(LatticeTest, MissingByteIsNamed) {
  try {
    Lattice("abz", ab_vocab());
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("z"), std::string::npos) << what;
    EXPECT_NE(what.find("2"), std::string::npos) << what;
  }
}

TEST(ViterbiTest, Examples) {
  const Vocabulary v = ab_vocab();
  const auto seg = viterbi(Lattice("ab", v));
  EXPECT_EQ(pieces(seg, v), (std::vector<std::string>{"ab"}));
  EXPECT_NEAR(seg.log_prob, std::log(0.5), 1e-12);

  EXPECT_EQ(pieces(viterbi(Lattice("b", v)), v), (std::vector<std::string>{"b"}));

  const Vocabulary only_a = make_vocab({{"a", 1.0}});
  const auto aa = viterbi(Lattice("aa", only_a));
  EXPECT_EQ(pieces(aa, only_a), (std::vector<std::string>{"a", "a"}));
  EXPECT_EQ(aa.log_prob, 0.0);
}

TEST(ViterbiTest, TiesPreferFewerTokens) {
  // p(ab) = p(a) p(b): both tilings score 0.25.
  const Vocabulary v = make_vocab({{"a", 0.5}, {"b", 0.5}, {"ab", 0.25}});
  EXPECT_EQ(pieces(viterbi(Lattice("ab", v)), v), (std::vector<std::string>{"ab"}));
}

TEST(ViterbiTest, EmptyPretoken) {
  const auto seg = viterbi(Lattice("", ab_vocab()));
  EXPECT_TRUE(seg.token_ids.empty());
  EXPECT_EQ(seg.log_prob, 0.0);
}

TEST(MarginalTest, Examples) {
  EXPECT_NEAR(marginal_log_prob(Lattice("ab", ab_vocab())), std::log(0.56), 1e-12);
  EXPECT_NEAR(marginal_log_prob(Lattice("a", ab_vocab())), std::log(0.3), 1e-12);
  EXPECT_NEAR(marginal_log_prob(Lattice("abc", abc_vocab())), std::log(0.078125), 1e-12);
}

TEST(ExpectedCountsTest, Examples) {
  const Vocabulary v = ab_vocab();
  const auto counts = as_map(expected_counts(Lattice("ab", v), 1.0));
  EXPECT_NEAR(counts.at(*v.find("ab")), 0.5 / 0.56, 1e-12);
  EXPECT_NEAR(counts.at(*v.find("a")), 0.06 / 0.56, 1e-12);
  EXPECT_NEAR(counts.at(*v.find("b")), 0.06 / 0.56, 1e-12);

  const auto single = as_map(expected_counts(Lattice("a", v), 3.5));
  EXPECT_NEAR(single.at(*v.find("a")), 3.5, 1e-12);

  const auto doubled = as_map(expected_counts(Lattice("ab", v), 2.0));
  for (const auto& [id, c] : counts) EXPECT_NEAR(doubled.at(id), 2.0 * c, 1e-12);
}

TEST(ExpectedCountsTest, AccumulateMatchesSparseForm) {
  const Vocabulary v = abc_vocab();
  const Lattice lattice("abcab", v);
  std::vector<double> dense(v.size(), 0.0);
  const double z = accumulate_expected_counts(lattice, 2.0, dense);
  EXPECT_NEAR(z, marginal_log_prob(lattice), 1e-12);
  for (const auto& [id, c] : expected_counts(lattice, 2.0)) EXPECT_NEAR(dense[id], c, 1e-12);
}

TEST(SecondBestTest, Examples) {
  const Vocabulary v = ab_vocab();
  const auto alt = viterbi_excluding_singleton("ab", v);
  EXPECT_EQ(pieces(alt, v), (std::vector<std::string>{"a", "b"}));
  EXPECT_NEAR(alt.log_prob, std::log(0.06), 1e-12);

  // [ab,c] and [a,bc] tie at 1/32; ids: a=0 b=1 c=2 ab=3 bc=4, so [a,bc]=(0,4)
  // precedes [ab,c]=(3,2).
  const Vocabulary w = abc_vocab();
  const auto tie = viterbi_excluding_singleton("abc", w);
  EXPECT_EQ(pieces(tie, w), (std::vector<std::string>{"a", "bc"}));
  EXPECT_NEAR(tie.log_prob, std::log(0.03125), 1e-12);

  // No full-span token: same as plain Viterbi.
  EXPECT_EQ(viterbi_excluding_singleton("abc", w).token_ids,
            viterbi(Lattice("abc", w)).token_ids);
  EXPECT_THROW(viterbi_excluding_singleton("a", v), ConfigError);
}

TEST(LatticeOracleTest, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Vocabulary v = random_vocab(rng, "abc", static_cast<int>(rng() % 9));
    const std::string text = testing::random_string(rng, 1, 10, "abc");
    const Lattice lattice(text, v);
    const auto bf = brute_force(text, v);
    ASSERT_NEAR(marginal_log_prob(lattice), bf.marginal, 1e-9);
    const auto best = viterbi(lattice);
    ASSERT_NEAR(best.log_prob, bf.best, 1e-9);
    ASSERT_EQ(best.token_ids, bf.best_path) << text;
    const auto counts = as_map(expected_counts(lattice, 1.0));
    for (const auto& [id, c] : bf.expected) ASSERT_NEAR(counts.at(id), c, 1e-9);
  }
}

TEST(LatticePropertyTest, ForwardBackwardConsistency) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Vocabulary v = random_vocab(rng, "ab", 6);
    const std::string text = testing::random_string(rng, 1, 14, "ab");
    const Lattice lattice(text, v);
    const auto fb = forward_backward(lattice);
    ASSERT_NEAR(fb.forward.back(), fb.backward.front(), 1e-9);

    // Flow conservation at interior nodes.
    std::vector<double> in(text.size() + 1, 0.0), out(text.size() + 1, 0.0);
    for (const auto& e : lattice.edges()) {
      const double p = std::exp(fb.forward[e.start] + e.log_prob + fb.backward[e.end] -
                                fb.marginal());
      out[e.start] += p;
      in[e.end] += p;
    }
    for (std::size_t k = 1; k < text.size(); ++k) ASSERT_NEAR(in[k], out[k], 1e-9);

    // Every byte is covered exactly once by every tiling.
    double covered = 0.0;
    for (const auto& [id, c] : expected_counts(lattice, 3.0)) covered += c * v.token(id).size();
    ASSERT_NEAR(covered, 3.0 * static_cast<double>(text.size()), 1e-9);

    const double best = viterbi(lattice).log_prob;
    ASSERT_LE(best, marginal_log_prob(lattice) + 1e-12);
  }
}

TEST(SamplingTest, SingleTilingIsAlwaysReturned) {
  const Vocabulary v = make_vocab({{"a", 0.5}, {"b", 0.5}});
  const Lattice lattice("abba", v);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(sample_segmentation(lattice, 1.0, seed).token_ids,
              viterbi(lattice).token_ids);
  }
}

TEST(SamplingTest, EmpiricalFrequencyMatchesPosterior) {
  const Vocabulary v = ab_vocab();
  const Lattice lattice("ab", v);
  std::mt19937_64 rng(42);
  const int n = 100000;
  int whole = 0;
  for (int i = 0; i < n; ++i) whole += sample_segmentation(lattice, 1.0, rng).token_ids.size() == 1;
  const double p = 0.5 / 0.56;
  const double sigma = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(static_cast<double>(whole) / n, p, 3 * sigma);
}

TEST(SamplingTest, TemperatureAnnealsPathProbabilities) {
  // At T = 2 the path weights become sqrt(0.5) and sqrt(0.06).
  const Vocabulary v = ab_vocab();
  const Lattice lattice("ab", v);
  std::mt19937_64 rng(43);
  const int n = 100000;
  int whole = 0;
  for (int i = 0; i < n; ++i) whole += sample_segmentation(lattice, 2.0, rng).token_ids.size() == 1;
  const double p = std::sqrt(0.5) / (std::sqrt(0.5) + std::sqrt(0.06));
  EXPECT_NEAR(static_cast<double>(whole) / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(SamplingTest, LowTemperatureRecoversViterbi) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Vocabulary v = random_vocab(rng, "abc", 6);
    const std::string text = testing::random_string(rng, 1, 10, "abc");
    const Lattice lattice(text, v);
    const auto bf = brute_force(text, v);
    // Only lattices whose best path is clearly ahead of the runner-up.
    double second = -INFINITY;
    testing::enumerate_segmentations(text, v, [&](const std::vector<TokenId>& ids) {
      if (ids != bf.best_path) second = std::max(second, testing::path_log_prob(ids, v));
    });
    if (bf.best - second < 1e-2) continue;
    EXPECT_EQ(sample_segmentation(lattice, 1e-4, rng).token_ids, bf.best_path);
  }
}

TEST(SamplingTest, SameSeedSameSample) {
  const Vocabulary v = abc_vocab();
  const Lattice lattice("abcabcabc", v);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(sample_segmentation(lattice, 1.0, seed).token_ids,
              sample_segmentation(lattice, 1.0, seed).token_ids);
  }
  EXPECT_THROW(sample_segmentation(lattice, 0.0, std::uint64_t{1}), ConfigError);
}

}  // namespace
}  // namespace unitok
