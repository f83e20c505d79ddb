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

#include "unitok/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "unitok/errors.hpp"

namespace unitok {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  std::istringstream in{std::string(value)};
  T x{};
  in >> x;
  if (in.fail() || !in.eof()) {
    throw ConfigError("--" + std::string(key) + ": cannot parse \"" + std::string(value) + "\"");
  }
  return x;
}

bool parse_switch(std::string_view key, std::string_view value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("--" + std::string(key) + ": expected on or off, got \"" +
                    std::string(value) + "\"");
}

std::string fmt(double x, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

}  // namespace

void apply_override(TrainerConfig& c, std::string_view key, std::string_view value) {
  if (key == "vocab-size") {
    const auto v = parse_number<long long>(key, value);
    if (v <= 0) throw ConfigError("--vocab-size must be positive");
    c.vocab_size = static_cast<std::size_t>(v);
  } else if (key == "beta-seed") {
    c.beta_seed = parse_number<double>(key, value);
  } else if (key == "n-em") {
    c.em_iterations = parse_number<int>(key, value);
  } else if (key == "alpha-prune") {
    c.alpha_prune = parse_number<double>(key, value);
  } else if (key == "alpha-inter") {
    c.alpha_inter = parse_number<double>(key, value);
  } else if (key == "tau-mp") {
    c.tau_mp = parse_number<double>(key, value);
  } else if (key == "digamma") {
    c.digamma = parse_switch(key, value);
  } else if (key == "max-token-len") {
    const auto v = parse_number<long long>(key, value);
    if (v < 2) throw ConfigError("--max-token-len must be at least 2");
    c.max_token_length = static_cast<std::size_t>(v);
  } else if (key == "seed-mode") {
    if (value == "pretoken") {
      c.seed_mode = SeedMode::kPretoken;
    } else if (value == "fulltext") {
      c.seed_mode = SeedMode::kFullText;
    } else {
      throw ConfigError("--seed-mode: expected pretoken or fulltext");
    }
  } else if (key == "recovery") {
    c.recovery = parse_switch(key, value);
  } else if (key == "prune-mode") {
    if (value == "likelihood") {
      c.prune_mode = PruneMode::kLikelihood;
    } else if (value == "fsp") {
      c.prune_mode = PruneMode::kFinalStyle;
    } else {
      throw ConfigError("--prune-mode: expected likelihood or fsp");
    }
  } else if (key == "prune-score") {
    if (value == "redistribute") {
      c.prune_score = PruneScore::kRedistribute;
    } else if (value == "logprob") {
      c.prune_score = PruneScore::kLogProbDelta;
    } else {
      throw ConfigError("--prune-score: expected redistribute or logprob");
    }
  } else if (key == "threads") {
    const auto v = parse_number<long long>(key, value);
    if (v < 1) throw ConfigError("--threads must be at least 1");
    c.threads = static_cast<unsigned>(v);
  } else {
    throw ConfigError("unknown parameter \"" + std::string(key) + "\"");
  }
}

std::vector<SweepRun> parse_grid(std::istream& in, const TrainerConfig& base) {
  std::vector<SweepRun> runs;
  std::optional<SweepRun> baseline;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string_view> words;
    for (const auto w : split(line, ' ')) {
      if (!w.empty() && w != "\r") words.push_back(w);
    }
    if (words.empty() || words[0].front() == '#') continue;
    const std::string label(words[0]);
    // (key, values) per override, expanded as a cartesian product.
    std::vector<std::pair<std::string_view, std::vector<std::string_view>>> axes;
    for (std::size_t i = 1; i < words.size(); ++i) {
      const auto eq = words[i].find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("grid run \"" + label + "\": expected key=value, got \"" +
                          std::string(words[i]) + "\"");
      }
      axes.emplace_back(words[i].substr(0, eq), split(words[i].substr(eq + 1), ','));
    }
    std::vector<SweepRun> expanded{{label, base}};
    for (const auto& [key, values] : axes) {
      std::vector<SweepRun> next;
      for (const auto& run : expanded) {
        for (const auto value : values) {
          SweepRun r = run;
          apply_override(r.config, key, value);
          if (values.size() > 1) {
            r.label += ":" + std::string(key) + "=" + std::string(value);
          }
          next.push_back(std::move(r));
        }
      }
      expanded = std::move(next);
    }
    for (auto& r : expanded) {
      r.config.validate();
      if (label == "baseline" && !baseline) {
        baseline = std::move(r);
      } else {
        runs.push_back(std::move(r));
      }
    }
  }
  if (!baseline) baseline = SweepRun{"baseline", base};
  runs.insert(runs.begin(), std::move(*baseline));
  return runs;
}

double relative_change_pct(double value, double baseline) {
  return baseline == 0.0 ? 0.0 : 100.0 * (value - baseline) / baseline;
}

std::vector<SweepRow> run_sweep(const Corpus& corpus, std::span<const SweepRun> runs,
                                std::ostream* log) {
  std::vector<SweepRow> rows;
  std::optional<Vocabulary> baseline_vocab;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    SweepRow row;
    row.label = run.label;
    row.config = run.config.to_string();
    const auto started = std::chrono::steady_clock::now();
    try {
      const TrainingResult result = train(corpus, run.config);
      row.vocab_size = result.vocab.size();
      row.loss = result.report.final_loss;
      row.tokens = token_count(corpus.table, UnigramSegmenter(result.vocab));
      if (i == 0) {
        baseline_vocab = result.vocab;
      } else if (baseline_vocab && baseline_vocab->size() == result.vocab.size()) {
        row.overlap_pct = vocab_overlap(*baseline_vocab, result.vocab);
      }
      if (i == 0) row.overlap_pct = 100.0;
    } catch (const std::exception& e) {
      if (i == 0) throw;
      row.status = e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (i > 0 && row.status == "ok") {
      row.loss_change_pct = relative_change_pct(row.loss, rows[0].loss);
      row.tokens_change_pct = relative_change_pct(static_cast<double>(row.tokens),
                                                   static_cast<double>(rows[0].tokens));
    }
    if (log) {
      *log << "[sweep] " << row.label << ": " << row.status << " loss=" << fmt(row.loss)
           << " tokens=" << row.tokens << " (" << fmt(row.seconds, "%.1f") << "s)\n";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "label,status,vocab_size,loss,tokens,loss_change_pct,tokens_change_pct,"
         "overlap_pct,seconds,config\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    for (auto& ch : status) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << r.label << ',' << status << ',' << r.vocab_size << ',' << fmt(r.loss, "%.9f") << ','
        << r.tokens << ',' << fmt(r.loss_change_pct, "%+.4f") << ','
        << fmt(r.tokens_change_pct, "%+.4f") << ','
        << (r.overlap_pct ? fmt(*r.overlap_pct, "%.2f") : std::string()) << ','
        << fmt(r.seconds, "%.2f") << ',' << r.config << '\n';
  }
}

std::vector<ComparisonRow> compare_methods(const Corpus& corpus,
                                           std::span<const std::size_t> vocab_sizes,
                                           const TrainerConfig& base,
                                           std::span<const GoldWord> gold,
                                           bool morph_prefix_space, std::ostream* log) {
  std::vector<ComparisonRow> rows;
  auto round_trips = [&](const Segmenter& seg) {
    for (const auto& e : corpus.table.entries()) {
      std::string joined;
      for (const auto& piece : seg.segment(e.bytes)) joined += piece;
      if (joined != e.bytes) return false;
    }
    return true;
  };
  for (const std::size_t n : vocab_sizes) {
    TrainerConfig baseline_config = base;
    baseline_config.vocab_size = n;
    baseline_config.prune_mode = PruneMode::kLikelihood;
    TrainerConfig fsp_config = baseline_config;
    fsp_config.prune_mode = PruneMode::kFinalStyle;
    fsp_config.alpha_inter = 1.0;

    std::uint64_t baseline_tokens = 0;
    for (const auto& [name, config] :
         {std::pair{"baseline", baseline_config}, std::pair{"fsp", fsp_config}}) {
      if (log) *log << "[compare] training " << name << " at n=" << n << "\n";
      const TrainingResult result = train(corpus, config);
      const UnigramSegmenter seg(result.vocab);
      ComparisonRow row;
      row.method = name;
      row.vocab_size = result.vocab.size();
      row.tokens = token_count(corpus.table, seg);
      row.loss = result.report.final_loss;
      if (!gold.empty()) row.morph = boundary_recall(gold, seg, morph_prefix_space);
      row.round_trip = round_trips(seg);
      if (row.method == "baseline") baseline_tokens = row.tokens;
      row.tokens_change_pct = relative_change_pct(static_cast<double>(row.tokens),
                                                  static_cast<double>(baseline_tokens));
      rows.push_back(std::move(row));
    }
    if (log) *log << "[compare] training bpe at n=" << n << "\n";
    const BpeResult bpe = train_bpe(corpus.table, n);
    const BpeSegmenter seg(bpe.merges);
    ComparisonRow row;
    row.method = "bpe";
    row.vocab_size = bpe.vocab.size();
    row.tokens = token_count(corpus.table, seg);
    if (!gold.empty()) row.morph = boundary_recall(gold, seg, morph_prefix_space);
    row.round_trip = round_trips(seg);
    row.tokens_change_pct = relative_change_pct(static_cast<double>(row.tokens),
                                                static_cast<double>(baseline_tokens));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_comparison_table(std::ostream& out, std::span<const ComparisonRow> rows) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %8s %12s %9s %10s %8s %8s %6s\n", "method", "n",
                "tokens", "change%", "loss", "morph_w", "morph_u", "rt");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-10s %8zu %12llu %+9.3f %10s %8s %8s %6s\n",
                  r.method.c_str(), r.vocab_size, static_cast<unsigned long long>(r.tokens),
                  r.tokens_change_pct, r.loss ? fmt(*r.loss).c_str() : "-",
                  r.morph ? fmt(r.morph->weighted, "%.4f").c_str() : "-",
                  r.morph ? fmt(r.morph->uniform, "%.4f").c_str() : "-",
                  r.round_trip ? "ok" : "FAIL");
    out << buf;
  }
}

}  // namespace unitok
