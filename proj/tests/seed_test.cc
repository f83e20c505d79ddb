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

#include "unitok/seed.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace unitok {
namespace {

using testing::brute_force_repeats;

std::map<std::string, std::uint64_t> emitted_repeats(const SuffixIndex& index) {
  std::map<std::string, std::uint64_t> out;
  for_each_repeat_interval(index, [&](const RepeatInterval& iv) {
    if (iv.freq < 2) return;
    const auto [it, inserted] = out.emplace(index.prefix(iv.first_rank, iv.length), iv.freq);
    EXPECT_TRUE(inserted) << "pattern emitted twice: " << it->first;
  });
  return out;
}

std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> by_token(
    const std::vector<SeedCandidate>& candidates) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& c : candidates) out[c.token] = {c.freq, c.score};
  return out;
}

std::set<std::string> token_set(const SeedVocabulary& seed) {
  std::set<std::string> out;
  for (const auto& c : seed.candidates) out.insert(c.token);
  return out;
}

TEST(IsValidTokenTest, Examples) {
  EXPECT_TRUE(is_valid_token(" the"));
  EXPECT_FALSE(is_valid_token("the "));
  EXPECT_FALSE(is_valid_token("t he"));
  EXPECT_FALSE(is_valid_token("a"));
  EXPECT_FALSE(is_valid_token("ab\n"));
  EXPECT_TRUE(is_valid_token(std::string(16, 'x')));
  EXPECT_FALSE(is_valid_token(std::string(17, 'x')));
  EXPECT_TRUE(is_valid_token("abcd", 4));
  EXPECT_FALSE(is_valid_token("abcde", 4));
}

TEST(FullTextSeedTest, AbabYieldsAb) {
  const std::vector<std::string> docs{"abab"};
  const auto seed = emit_seed_fulltext(build_fulltext_index(docs), 100);
  EXPECT_EQ(by_token(seed.candidates),
            (std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>{{"ab", {2, 4}}}));
  ASSERT_EQ(seed.atomics.size(), 2u);
  EXPECT_EQ(seed.atomics[0].token, "a");
  EXPECT_EQ(seed.atomics[0].freq, 2u);
}

TEST(FullTextSeedTest, NoRepeatsLeavesOnlyAtomics) {
  const std::vector<std::string> docs{"abc"};
  const auto seed = emit_seed_fulltext(build_fulltext_index(docs), 100);
  EXPECT_TRUE(seed.candidates.empty());
  EXPECT_EQ(seed.atomics.size(), 3u);
}

TEST(FullTextSeedTest, TrailingSpacePatternRejectedAndPrefixOmitted) {
  const std::vector<std::string> docs{"the old man the boat"};
  const SuffixIndex index = build_fulltext_index(docs);
  const auto repeats = emitted_repeats(index);
  EXPECT_EQ(repeats.count("the "), 1u);
  EXPECT_EQ(repeats.count("the"), 0u);
  const auto seed = emit_seed_fulltext(index, 100);
  EXPECT_TRUE(seed.candidates.empty());
}

TEST(RecoverySeedTest, RecoversLongestValidPrefix) {
  const std::vector<std::string> docs{"the old man the boat"};
  const auto seed = emit_seed_recovery(build_fulltext_index(docs), 100);
  EXPECT_EQ(by_token(seed.candidates),
            (std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>{
                {"the", {2, 6}}, {"he", {2, 4}}}));
}

TEST(RecoverySeedTest, ValidPatternsNeedNoRecovery) {
  const std::vector<std::string> docs{"abab", "cabd"};
  const SuffixIndex index = build_fulltext_index(docs);
  EXPECT_EQ(by_token(emit_seed_recovery(index, 100).candidates),
            by_token(emit_seed_fulltext(index, 100).candidates));
}

TEST(RecoverySeedTest, HandTracedMixedCorpus) {
  // Repeats of "ab cab c": "ab c", "b c", " c" and "c", each twice. Only " c"
  // is valid as is. Recovery scans "ab c" down to "ab"; "b c" has no valid
  // prefix of two or more bytes.
  const std::vector<std::string> docs{"ab cab c"};
  const SuffixIndex index = build_fulltext_index(docs);
  EXPECT_EQ(emitted_repeats(index), (std::map<std::string, std::uint64_t>{
                                        {"ab c", 2}, {"b c", 2}, {" c", 2}, {"c", 2}}));
  EXPECT_EQ(token_set(emit_seed_fulltext(index, 100)), (std::set<std::string>{" c"}));
  EXPECT_EQ(by_token(emit_seed_recovery(index, 100).candidates),
            (std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>{
                {" c", {2, 4}}, {"ab", {2, 4}}}));
}

TEST(RecoverySeedTest, ScanStartsAboveStackTopAfterPop) {
  // When "xa b" is popped, the interval "xa " has not been pushed yet, so the
  // stack top is the root and the scan reaches "xa" with the child's
  // frequency. The parent's own scan finds "xa" again with frequency 4, and
  // the duplicate keeps the higher score.
  const std::vector<std::string> docs{"xa b", "xa b", "xa c", "xa c"};
  const SuffixIndex index = build_fulltext_index(docs);
  const auto repeats = emitted_repeats(index);
  EXPECT_EQ(repeats.at("xa b"), 2u);
  EXPECT_EQ(repeats.at("xa "), 4u);
  for_each_repeat_interval(index, [&](const RepeatInterval& iv) {
    const std::string p = index.prefix(iv.first_rank, iv.length);
    if (p == "xa b") EXPECT_EQ(iv.floor_height, 0u);
  });
  EXPECT_EQ(by_token(emit_seed_recovery(index, 100).candidates).at("xa"),
            (std::pair<std::uint64_t, std::uint64_t>{4, 8}));
}

TEST(PretokenSeedTest, WeightedCounts) {
  const PretokenTable table({{"the", 1}, {" the", 1}});
  const auto cands = by_token(emit_seed_pretoken(table, 100).candidates);
  EXPECT_EQ(cands.at("the"), (std::pair<std::uint64_t, std::uint64_t>{2, 6}));
  EXPECT_EQ(cands.count(" the"), 0u);
}

TEST(PretokenSeedTest, SingleHeavyPretoken) {
  const PretokenTable table({{"ab", 5}});
  const auto seed = emit_seed_pretoken(table, 100);
  EXPECT_EQ(by_token(seed.candidates),
            (std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>{{"ab", {5, 10}}}));
}

TEST(PretokenSeedTest, EmptyTable) {
  const auto seed = emit_seed_pretoken(PretokenTable{}, 100);
  EXPECT_EQ(seed.size(), 0u);
}

TEST(SeedCapacityTest, KeepsTopScoresWithLexicographicTies) {
  // Every two-byte pattern occurs twice: equal scores, order by bytes.
  const std::vector<std::string> docs{"ab", "ab", "cd", "cd", "ef", "ef"};
  const auto seed = emit_seed_fulltext(build_fulltext_index(docs), 2);
  ASSERT_EQ(seed.candidates.size(), 2u);
  EXPECT_EQ(seed.candidates[0].token, "ab");
  EXPECT_EQ(seed.candidates[1].token, "cd");
  EXPECT_EQ(seed.atomics.size(), 6u);  // atomics are never capped
}

TEST(SeedCapacityTest, MaxLengthBound) {
  const std::vector<std::string> docs{"abcdef", "abcdef"};
  const auto seed = emit_seed_fulltext(build_fulltext_index(docs), 100, 4);
  for (const auto& c : seed.candidates) EXPECT_LE(c.token.size(), 4u) << c.token;
  const auto recovered = token_set(emit_seed_recovery(build_fulltext_index(docs), 100, 4));
  EXPECT_TRUE(recovered.count("abcd"));  // longest prefix of the too-long repeat
}

TEST(SeedOracleTest, FullTextMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> docs(1 + rng() % 3);
    std::vector<std::pair<std::string, std::uint64_t>> texts;
    for (auto& d : docs) {
      d = testing::random_string(rng, 1, 40, "ab c");
      texts.emplace_back(d, 1);
    }
    const SuffixIndex index = build_fulltext_index(docs);
    ASSERT_EQ(emitted_repeats(index), brute_force_repeats(texts)) << "trial " << trial;
  }
}

TEST(SeedOracleTest, PretokenModeMatchesWeightedBruteForce) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    PretokenTableBuilder builder;
    for (int i = 0; i < 6; ++i) {
      builder.add(testing::random_string(rng, 1, 6, "abc"), 1 + rng() % 4);
    }
    const PretokenTable table = builder.build();
    std::vector<std::pair<std::string, std::uint64_t>> texts;
    for (const auto& e : table.entries()) texts.emplace_back(e.bytes, e.count);
    ASSERT_EQ(emitted_repeats(build_pretoken_index(table)), brute_force_repeats(texts));
  }
}

TEST(SeedOracleTest, RecoveryIsSupersetOfFullText) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<std::string> docs{testing::random_string(rng, 1, 60, "ab  c")};
    const SuffixIndex index = build_fulltext_index(docs);
    const auto plain = token_set(emit_seed_fulltext(index, 1000, 4));
    const auto recovered = token_set(emit_seed_recovery(index, 1000, 4));
    for (const auto& t : plain) ASSERT_TRUE(recovered.count(t)) << t;
  }
}

TEST(SeedPropertyTest, NewOccurrenceCanCreateFrequentToken) {
  // "the" is always followed by a space, so only the invalid "the " repeats.
  // One occurrence of "them" makes "the" right-maximal with frequency 3.
  std::vector<std::string> docs{"the old", "man the boat"};
  EXPECT_FALSE(token_set(emit_seed_fulltext(build_fulltext_index(docs), 100)).count("the"));
  docs.push_back("them");
  const auto cands = by_token(emit_seed_fulltext(build_fulltext_index(docs), 100).candidates);
  EXPECT_EQ(cands.at("the"), (std::pair<std::uint64_t, std::uint64_t>{3, 9}));
}

TEST(SeedPropertyTest, Deterministic) {
  std::mt19937_64 rng(10);
  const std::vector<std::string> docs{testing::random_string(rng, 100, 200, "abcd ")};
  const auto a = emit_seed_fulltext(build_fulltext_index(docs), 10);
  const auto b = emit_seed_fulltext(build_fulltext_index(docs), 10);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].token, b.candidates[i].token);
    EXPECT_EQ(a.candidates[i].score, b.candidates[i].score);
  }
}

TEST(FinalizeSeedTest, NormalizesScores) {
  SeedVocabulary seed;
  seed.candidates = {{"ab", 2, 4}, {"cd", 6, 12}};
  const Vocabulary v = finalize_seed(seed);
  EXPECT_NEAR(std::exp(v.log_prob(*v.find("ab"))), 0.25, 1e-12);
  EXPECT_NEAR(std::exp(v.log_prob(*v.find("cd"))), 0.75, 1e-12);

  SeedVocabulary equal;
  equal.candidates = {{"ab", 2, 4}, {"cd", 2, 4}};
  const Vocabulary e = finalize_seed(equal);
  EXPECT_NEAR(std::exp(e.log_prob(0)), 0.5, 1e-12);
  EXPECT_NEAR(std::exp(e.log_prob(1)), 0.5, 1e-12);

  SeedVocabulary single;
  single.candidates = {{"ab", 2, 4}};
  EXPECT_NEAR(finalize_seed(single).log_prob(0), 0.0, 1e-12);
}

TEST(FinalizeSeedTest, AtomicsAreRequiredAndProbabilitiesSumToOne) {
  const std::vector<std::string> docs{"the old man the boat"};
  const Vocabulary v = finalize_seed(emit_seed_recovery(build_fulltext_index(docs), 100));
  EXPECT_NEAR(v.log_total(), 0.0, 1e-9);
  for (const char c : std::string("the oldmanb")) {
    const auto id = v.find(std::string(1, c));
    ASSERT_TRUE(id) << c;
    EXPECT_TRUE(v.required(*id));
  }
  EXPECT_FALSE(v.required(*v.find("the")));
  EXPECT_THROW(finalize_seed(SeedVocabulary{}), std::exception);
}

}  // namespace
}  // namespace unitok
