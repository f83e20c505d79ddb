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

// Runs the unitok binary end to end through the shell.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("unitok_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

CliRun run(const std::string& args) {
  const auto out = scratch() / "stdout";
  const auto err = scratch() / "stderr";
  const std::string cmd = std::string(UNITOK_CLI) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string corpus_path() { return std::string(UNITOK_TEST_DATA) + "/english_docs.txt"; }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    model_ = scratch() / "small.model";
    // An extra file adds non-ASCII atomics to the sample.
    write(scratch() / "extra.txt", "caf\xc3\xa9 \xe2\x82\xac 5\n");
    const CliRun r = run("train " + (scratch() / "extra.txt").string() + " " + corpus_path() +
                         " --max-bytes 60000 --vocab-size 300 -o " + model_.string());
    ASSERT_EQ(r.status, 0) << r.err;
  }
  static fs::path model_;
};
fs::path CliTest::model_;

TEST_F(CliTest, TrainPrintsLossAndTokens) {
  const CliRun r = run("train " + corpus_path() + " --max-bytes 20000 --vocab-size 150 -o " +
                    (scratch() / "t.model").string());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("final_loss="), std::string::npos);
  EXPECT_NE(r.out.find("tokens="), std::string::npos);
  EXPECT_NE(r.out.find("report,"), std::string::npos);
  const std::string model = slurp(scratch() / "t.model");
  EXPECT_EQ(model.rfind("unitok-unigram\tversion=1\tvocab_size=150\t", 0), 0u);
}

TEST_F(CliTest, EncodeDecodeRoundTrip) {
  const std::string text = "The quick brown fox  jumps over the lazy dog.\n\ncaf\xc3\xa9 \xe2\x82\xac\n";
  write(scratch() / "in.txt", text);
  const CliRun enc = run("encode -m " + model_.string() + " " + (scratch() / "in.txt").string());
  ASSERT_EQ(enc.status, 0) << enc.err;
  write(scratch() / "ids.txt", enc.out);
  const CliRun dec = run("decode -m " + model_.string() + " " + (scratch() / "ids.txt").string());
  ASSERT_EQ(dec.status, 0) << dec.err;
  EXPECT_EQ(dec.out, text);

  const CliRun pieces =
      run("encode --pieces -m " + model_.string() + " " + (scratch() / "in.txt").string());
  ASSERT_EQ(pieces.status, 0);
  write(scratch() / "pieces.txt", pieces.out);
  const CliRun back =
      run("decode --pieces -m " + model_.string() + " " + (scratch() / "pieces.txt").string());
  EXPECT_EQ(back.out, text);
}

TEST_F(CliTest, RoundTripWithoutFinalNewline) {
  for (const std::string text : {"no newline at the end", "two\n\nblank lines\n\n", "\n"}) {
    write(scratch() / "nl.txt", text);
    const CliRun enc = run("encode -m " + model_.string() + " " + (scratch() / "nl.txt").string());
    ASSERT_EQ(enc.status, 0) << enc.err;
    write(scratch() / "nl.ids", enc.out);
    const CliRun dec = run("decode -m " + model_.string() + " " + (scratch() / "nl.ids").string());
    EXPECT_EQ(dec.out, text);
  }
}

TEST_F(CliTest, EncodeEmptyInput) {
  write(scratch() / "empty.txt", "");
  const CliRun r = run("encode -m " + model_.string() + " " + (scratch() / "empty.txt").string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, SamplingNeedsSeedAndIsDeterministic) {
  write(scratch() / "s.txt", "reproducible sampling of segmentations\n");
  const std::string base = "encode -m " + model_.string() + " " + (scratch() / "s.txt").string();
  EXPECT_EQ(run(base + " --sample").status, 1);
  const CliRun a = run(base + " --sample --temperature 1 --rng-seed 7");
  const CliRun b = run(base + " --sample --temperature 1 --rng-seed 7");
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UncoveredByteIsDataError) {
  write(scratch() / "odd.txt", std::string("\x01\x02", 2));
  const CliRun r = run("encode -m " + model_.string() + " " + (scratch() / "odd.txt").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("\\x01"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalPrintsMetricLines) {
  write(scratch() / "gold.tsv", "months\tmonth|s\nbeen\tbe|en\n");
  const CliRun r = run("eval " + corpus_path() + " --max-bytes 20000 -m " + model_.string() +
                    " --baseline " + model_.string() + " --gold " +
                    (scratch() / "gold.tsv").string());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("loss,"), std::string::npos);
  EXPECT_NE(r.out.find("tokens,"), std::string::npos);
  EXPECT_NE(r.out.find("overlap_pct,100.00"), std::string::npos);
  EXPECT_NE(r.out.find("morph_recall_weighted,"), std::string::npos);
  EXPECT_NE(r.out.find("morph_recall_uniform,"), std::string::npos);
}

TEST(CliUsageTest, BadFlagsExitOne) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  const CliRun zero = run("train " + corpus_path() + " --vocab-size 0 -o /tmp/x.model");
  EXPECT_EQ(zero.status, 1);
  EXPECT_NE(zero.err.find("--vocab-size"), std::string::npos) << zero.err;
  const CliRun alpha =
      run("train " + corpus_path() + " --vocab-size 100 --alpha-prune 2 -o /tmp/x.model");
  EXPECT_EQ(alpha.status, 1);
  EXPECT_NE(alpha.err.find("--alpha-prune"), std::string::npos) << alpha.err;
  EXPECT_EQ(run("train " + corpus_path() + " --vocab-size 100 --digamma maybe -o /tmp/x").status,
            1);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(CliUsageTest, HelpShowsDefaults) {
  const CliRun r = run("train --help");
  EXPECT_EQ(r.status, 0);
  for (const char* flag : {"--beta-seed", "--n-em", "--alpha-prune", "--alpha-inter", "--tau-mp",
                           "--digamma", "--max-token-len", "--seed-mode", "--recovery",
                           "--prune-mode", "--threads", "--seed"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  EXPECT_NE(r.out.find("0.75"), std::string::npos);
  EXPECT_NE(r.out.find("1.1"), std::string::npos);
}

TEST(CliUsageTest, DataErrorsExitTwo) {
  EXPECT_EQ(run("train /nonexistent.txt --vocab-size 100 -o /tmp/x.model").status, 2);
  write(scratch() / "bad.txt", std::string("ok\n\xff\n", 4));
  const CliRun r = run("train " + (scratch() / "bad.txt").string() + " --vocab-size 10 -o /tmp/x");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("offset 3"), std::string::npos) << r.err;
  EXPECT_EQ(run("encode -m /nonexistent.model").status, 2);
}

TEST(CliSeedDumpTest, PrintsScoreFreqToken) {
  write(scratch() / "old.txt", "the old man the boat\n");
  const CliRun full = run("seed-dump " + (scratch() / "old.txt").string() +
                       " --vocab-size 10 --seed-mode fulltext");
  ASSERT_EQ(full.status, 0) << full.err;
  EXPECT_EQ(full.out, "");
  const CliRun rec = run("seed-dump " + (scratch() / "old.txt").string() +
                      " --vocab-size 10 --seed-mode fulltext --recovery");
  EXPECT_EQ(rec.out, "6\t2\tthe\n4\t2\the\n");
}

TEST(CliSweepTest, WritesCsvWithBaseline) {
  write(scratch() / "grid.txt", "em n-em=1,3\nfsp prune-mode=fsp alpha-inter=1\n");
  const CliRun r = run("sweep " + corpus_path() + " --max-bytes 15000 --vocab-size 120 --grid " +
                    (scratch() / "grid.txt").string());
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("label,status,vocab_size,loss,tokens", 0), 0u);
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_NE(r.out.find("baseline,ok,120,"), std::string::npos);
}

TEST(CliCompareTest, ThreeMethods) {
  const CliRun r = run("compare-bpe " + corpus_path() + " --max-bytes 15000 --vocab-size 120");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("baseline"), std::string::npos);
  EXPECT_NE(r.out.find("fsp"), std::string::npos);
  EXPECT_NE(r.out.find("bpe"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliBpeTest, TrainBpeAndEval) {
  const auto merges = scratch() / "m.bpe";
  const CliRun t = run("train-bpe " + corpus_path() + " --max-bytes 15000 --vocab-size 120 -o " +
                    merges.string());
  ASSERT_EQ(t.status, 0) << t.err;
  const CliRun e = run("eval " + corpus_path() + " --max-bytes 15000 --merges " + merges.string());
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_NE(e.out.find("vocab_size,120"), std::string::npos) << e.out;
}

}  // namespace
