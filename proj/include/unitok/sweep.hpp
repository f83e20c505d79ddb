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

#ifndef UNITOK_SWEEP_HPP_
#define UNITOK_SWEEP_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unitok/eval.hpp"
#include "unitok/trainer.hpp"

namespace unitok {

// Sets one trainer parameter by its CLI flag name (without the leading
// dashes), e.g. ("alpha-prune", "0.9") or ("digamma", "off"). Throws
// ConfigError naming the key for unknown keys or unparsable values.
void apply_override(TrainerConfig& config, std::string_view key, std::string_view value);

struct SweepRun {
  std::string label;
  TrainerConfig config;
};

// Grid file: one run per line, `label key=value key=value ...`. A value list
// `key=a,b,c` expands into one run per value (the cartesian product when
// several keys have lists), labeled `label:key=a`. Blank lines and lines
// starting with '#' are skipped. The returned list always starts with the
// baseline run: the line labeled "baseline" if present, otherwise `base`.
std::vector<SweepRun> parse_grid(std::istream& in, const TrainerConfig& base);

double relative_change_pct(double value, double baseline);

struct SweepRow {
  std::string label;
  std::string status = "ok";  // or the error message
  std::string config;
  std::size_t vocab_size = 0;
  double loss = 0.0;
  std::uint64_t tokens = 0;
  double loss_change_pct = 0.0;
  double tokens_change_pct = 0.0;
  std::optional<double> overlap_pct;
  double seconds = 0.0;
};

// Trains every run (the first is the baseline) and reports loss, token
// count, relative change against the baseline in percent and vocabulary
// overlap with the baseline. A failing baseline aborts by rethrowing; other
// failures are recorded in the row status. Progress goes to `log` if given.
std::vector<SweepRow> run_sweep(const Corpus& corpus, std::span<const SweepRun> runs,
                                std::ostream* log = nullptr);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct ComparisonRow {
  std::string method;  // "baseline", "fsp" or "bpe"
  std::size_t vocab_size = 0;
  std::uint64_t tokens = 0;
  double tokens_change_pct = 0.0;
  std::optional<double> loss;  // unigram methods only
  std::optional<BoundaryRecall> morph;
  bool round_trip = false;
};

// Trains the unigram baseline (`base` with likelihood pruning), the
// final-style pruning variant (probability pruning at every step with
// alpha_inter = 1) and BPE at each vocabulary size, then compares token
// counts against the baseline, corpus loss and optional gold boundary recall.
std::vector<ComparisonRow> compare_methods(const Corpus& corpus,
                                           std::span<const std::size_t> vocab_sizes,
                                           const TrainerConfig& base,
                                           std::span<const GoldWord> gold = {},
                                           bool morph_prefix_space = false,
                                           std::ostream* log = nullptr);

void write_comparison_table(std::ostream& out, std::span<const ComparisonRow> rows);

}  // namespace unitok

#endif  // UNITOK_SWEEP_HPP_
