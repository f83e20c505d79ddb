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

// unitok: command-line front end for training and applying unigram and BPE
// tokenizers. Results go to standard output, progress to standard error.
// Exit status: 0 on success, 1 on usage or configuration errors, 2 on data
// errors (unreadable or malformed input, coverage failures).

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unitok/bpe.hpp"
#include "unitok/corpus.hpp"
#include "unitok/encoding.hpp"
#include "unitok/errors.hpp"
#include "unitok/escape.hpp"
#include "unitok/eval.hpp"
#include "unitok/model_file.hpp"
#include "unitok/seed.hpp"
#include "unitok/sweep.hpp"
#include "unitok/trainer.hpp"

namespace {

using namespace unitok;

std::string fmt(double x, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

// Trainer flags are kept as text and applied through apply_override so that
// the CLI and sweep grid files share one parser and one set of error messages.
struct TrainerFlags {
  std::string vocab_size = "0";
  std::string beta_seed = "10";
  std::string n_em = "2";
  std::string alpha_prune = "0.75";
  std::string alpha_inter = "1.1";
  std::string tau_mp = "0.5";
  std::string digamma = "on";
  std::string max_token_len = std::to_string(kDefaultMaxTokenLength);
  std::string seed_mode = "pretoken";
  bool recovery = false;
  std::string prune_mode = "likelihood";
  std::string prune_score = "redistribute";
  std::string threads = "1";
  std::uint64_t rng_seed = 0;

  void add_to(CLI::App* app, bool with_vocab_size = true) {
    if (with_vocab_size) {
      app->add_option("--vocab-size", vocab_size, "Target vocabulary size n")->required();
    }
    app->add_option("--beta-seed", beta_seed, "Seed size multiplier: n_seed = beta × n")
        ->capture_default_str();
    app->add_option("--n-em", n_em, "EM iterations per pruning round")->capture_default_str();
    app->add_option("--alpha-prune", alpha_prune, "Fraction of tokens kept per pruning round")
        ->capture_default_str();
    app->add_option("--alpha-inter", alpha_inter,
                    "Pruning stops at alpha_inter × n before final pruning")
        ->capture_default_str();
    app->add_option("--tau-mp", tau_mp, "Early-prune threshold on expected counts")
        ->capture_default_str();
    app->add_option("--digamma", digamma, "Digamma M-step (on|off)")->capture_default_str();
    app->add_option("--max-token-len", max_token_len, "Maximum token length in bytes")
        ->capture_default_str();
    app->add_option("--seed-mode", seed_mode, "Seed extraction mode (pretoken|fulltext)")
        ->capture_default_str();
    app->add_flag("--recovery", recovery, "Recover the longest valid prefix of rejected seeds");
    app->add_option("--prune-mode", prune_mode, "Pruning mode (likelihood|fsp)")
        ->capture_default_str();
    app->add_option("--prune-score", prune_score,
                    "Likelihood prune score (redistribute|logprob)")
        ->capture_default_str();
    app->add_option("--threads", threads, "Worker threads for the E-step")
        ->capture_default_str();
    app->add_option("--seed", rng_seed,
                    "RNG seed (recorded; training itself is deterministic)")
        ->capture_default_str();
  }

  TrainerConfig config(bool with_vocab_size = true) const {
    TrainerConfig c;
    if (with_vocab_size) apply_override(c, "vocab-size", vocab_size);
    apply_override(c, "beta-seed", beta_seed);
    apply_override(c, "n-em", n_em);
    apply_override(c, "alpha-prune", alpha_prune);
    apply_override(c, "alpha-inter", alpha_inter);
    apply_override(c, "tau-mp", tau_mp);
    apply_override(c, "digamma", digamma);
    apply_override(c, "max-token-len", max_token_len);
    apply_override(c, "seed-mode", seed_mode);
    apply_override(c, "recovery", recovery ? "on" : "off");
    apply_override(c, "prune-mode", prune_mode);
    apply_override(c, "prune-score", prune_score);
    apply_override(c, "threads", threads);
    if (with_vocab_size) c.validate();
    return c;
  }
};

struct CorpusFlags {
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> max_bytes;

  void add_to(CLI::App* app) {
    app->add_option("inputs", inputs, "UTF-8 corpus files, one document per line")->required();
    app->add_option("--max-bytes", max_bytes, "Stop reading after this many corpus bytes");
  }

  Corpus load() const {
    const std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
    std::vector<std::string> docs = load_corpus(paths, max_bytes);
    std::uint64_t bytes = 0;
    for (const auto& d : docs) bytes += d.size();
    std::cerr << "[corpus] " << docs.size() << " documents, " << bytes << " bytes\n";
    Corpus corpus = Corpus::from_documents(std::move(docs));
    std::cerr << "[corpus] " << corpus.table.size() << " distinct pretokens, "
              << corpus.table.total_atoms() << " atoms\n";
    return corpus;
  }
};

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void print_report(const TrainingReport& report) {
  std::cerr << "round  phase      vocab        loss   seconds\n";
  for (const auto& r : report.records) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%5d  %-9s %7zu  %10s  %8.2f\n", r.round, r.phase.c_str(),
                  r.vocab_size, std::isnan(r.loss) ? "-" : fmt(r.loss).c_str(), r.seconds);
    std::cerr << buf;
  }
}

int cmd_train(const CorpusFlags& corpus_flags, const TrainerFlags& flags,
              const std::string& output) {
  const TrainerConfig config = flags.config();
  std::cerr << "[train] " << config.to_string() << "\n";
  const Corpus corpus = corpus_flags.load();
  const TrainingResult result = train(corpus, config);
  print_report(result.report);
  save_model(output, result.vocab, config.to_string());
  const std::uint64_t tokens = token_count(corpus.table, UnigramSegmenter(result.vocab));
  std::cout << "vocab_size=" << result.vocab.size() << "\n"
            << "final_loss=" << fmt(result.report.final_loss, "%.9f") << "\n"
            << "tokens=" << tokens << "\n";
  for (const auto& r : result.report.records) {
    std::cout << "report," << r.round << ',' << r.phase << ',' << r.vocab_size << ','
              << (std::isnan(r.loss) ? std::string() : fmt(r.loss, "%.9f")) << ','
              << fmt(r.seconds, "%.3f") << "\n";
  }
  return 0;
}

int cmd_train_bpe(const CorpusFlags& corpus_flags, std::size_t n, const std::string& output) {
  if (n == 0) throw ConfigError("--vocab-size must be positive");
  const Corpus corpus = corpus_flags.load();
  const BpeResult result = train_bpe(corpus.table, n);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw DataError("cannot write " + output);
  write_merges(out, result.merges);
  std::cout << "vocab_size=" << result.vocab.size() << "\n"
            << "merges=" << result.merges.size() << "\n"
            << "tokens=" << token_count(corpus.table, BpeSegmenter(result.merges)) << "\n";
  return 0;
}

struct EncodeFlags {
  std::string model;
  std::string input;
  bool pieces = false;
  bool sample = false;
  double temperature = 1.0;
  std::optional<std::uint64_t> rng_seed;
};

// Id files hold one line per input line, each ending in '\n'. An input with
// k newline bytes has k + 1 lines (the last possibly empty), so decoding is
// byte-exact whether or not the input ends in a newline. Empty input gives
// empty output.
int cmd_encode(const EncodeFlags& f) {
  if (f.sample && !f.rng_seed) throw ConfigError("--sample requires --rng-seed");
  if (f.sample && !(f.temperature > 0.0)) throw ConfigError("--temperature must be positive");
  const ModelFile model = load_model(f.model);
  const Vocabulary& vocab = model.vocab;
  const std::string text = read_all(f.input);
  if (text.empty()) return 0;
  std::mt19937_64 rng(f.rng_seed.value_or(0));
  EncodeOptions options;
  options.sample = f.sample;
  options.temperature = f.temperature;
  options.rng = &rng;
  std::string out;
  for (const auto line : split_text_lines(text)) {
    bool first = true;
    for (const TokenId id : encode_line(line, vocab, options)) {
      if (!first) out += f.pieces ? '\t' : ' ';
      first = false;
      out += f.pieces ? escape_bytes(vocab.token(id)) : std::to_string(id);
    }
    out += '\n';
  }
  std::cout << out;
  return 0;
}

int cmd_decode(const std::string& model_path, const std::string& input, bool pieces) {
  const ModelFile model = load_model(model_path);
  const std::string file = read_all(input);
  std::string_view text = file;
  if (text.empty()) return 0;
  if (text.back() == '\n') text.remove_suffix(1);
  std::string out;
  std::size_t line_no = 0;
  const char sep = pieces ? '\t' : ' ';
  for (const auto line : split_text_lines(text)) {
    if (line_no++) out += '\n';
    std::size_t begin = 0;
    while (begin < line.size()) {
      auto end = line.find(sep, begin);
      if (end == std::string_view::npos) end = line.size();
      const std::string_view field = line.substr(begin, end - begin);
      begin = end + 1;
      if (field.empty()) continue;
      if (pieces) {
        out += unescape_bytes(field);
        continue;
      }
      TokenId id = -1;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
      if (ec != std::errc() || ptr != field.data() + field.size() || id < 0 ||
          static_cast<std::size_t>(id) >= model.vocab.size()) {
        throw DataError("line " + std::to_string(line_no) + ": invalid token id \"" +
                        std::string(field) + "\"");
      }
      out += model.vocab.token(id);
    }
  }
  std::cout << out;
  return 0;
}

struct EvalFlags {
  std::string model;
  std::string merges;
  std::string baseline;
  std::string gold;
  bool gold_prefix_space = false;
};

int cmd_eval(const CorpusFlags& corpus_flags, const EvalFlags& f) {
  if (f.model.empty() == f.merges.empty()) {
    throw ConfigError("eval needs exactly one of --model or --merges");
  }
  const Corpus corpus = corpus_flags.load();
  std::vector<std::pair<std::string, std::string>> metrics;
  std::optional<ModelFile> model;
  std::optional<MergeList> merges;
  std::unique_ptr<Segmenter> segmenter;
  if (!f.model.empty()) {
    model = load_model(f.model);
    segmenter = std::make_unique<UnigramSegmenter>(model->vocab);
    metrics.emplace_back("vocab_size", std::to_string(model->vocab.size()));
    metrics.emplace_back("loss", fmt(corpus_loss(corpus.table, model->vocab), "%.9f"));
    metrics.emplace_back("viterbi_loss", fmt(viterbi_loss(corpus.table, model->vocab), "%.9f"));
  } else {
    std::ifstream in(f.merges, std::ios::binary);
    if (!in) throw DataError("cannot open " + f.merges);
    merges = read_merges(in);
    segmenter = std::make_unique<BpeSegmenter>(*merges);
    metrics.emplace_back("vocab_size", std::to_string(merges->vocabulary().size()));
  }
  const std::uint64_t tokens = token_count(corpus.table, *segmenter);
  metrics.emplace_back("tokens", std::to_string(tokens));
  metrics.emplace_back("bytes_per_token",
                       fmt(static_cast<double>(corpus.table.total_atoms()) /
                           static_cast<double>(std::max<std::uint64_t>(tokens, 1))));
  if (!f.baseline.empty()) {
    if (!model) throw ConfigError("--baseline needs --model");
    const ModelFile base = load_model(f.baseline);
    metrics.emplace_back("overlap_pct", fmt(vocab_overlap(base.vocab, model->vocab), "%.2f"));
  }
  if (!f.gold.empty()) {
    const auto gold = read_gold_file(f.gold);
    const BoundaryRecall recall = boundary_recall(gold, *segmenter, f.gold_prefix_space);
    metrics.emplace_back("morph_recall_weighted", fmt(recall.weighted));
    metrics.emplace_back("morph_recall_uniform", fmt(recall.uniform));
    metrics.emplace_back("morph_words", std::to_string(recall.words));
    metrics.emplace_back("morph_matched", std::to_string(recall.matched));
  }
  for (const auto& [name, value] : metrics) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-22s %s\n", name.c_str(), value.c_str());
    std::cerr << buf;
  }
  for (const auto& [name, value] : metrics) std::cout << name << ',' << value << "\n";
  return 0;
}

int cmd_seed_dump(const CorpusFlags& corpus_flags, const TrainerFlags& flags,
                  bool include_atomics) {
  const TrainerConfig config = flags.config();
  const Corpus corpus = corpus_flags.load();
  const std::size_t n_seed = config.seed_size();
  SeedVocabulary seed;
  if (config.seed_mode == SeedMode::kPretoken) {
    seed = emit_seed_pretoken(corpus.table, n_seed, config.max_token_length, config.recovery);
  } else {
    const SuffixIndex index = build_fulltext_index(corpus.documents);
    SeedOptions options;
    options.n_seed = n_seed;
    options.max_len = config.max_token_length;
    options.recovery = config.recovery;
    seed = emit_seed(index, options);
  }
  std::string out;
  auto emit = [&](const SeedCandidate& c) {
    out += std::to_string(c.score) + '\t' + std::to_string(c.freq) + '\t' +
           escape_bytes(c.token) + '\n';
  };
  for (const auto& c : seed.candidates) emit(c);
  if (include_atomics) {
    for (const auto& c : seed.atomics) emit(c);
  }
  std::cout << out;
  std::cerr << "[seed] " << seed.candidates.size() << " candidates, " << seed.atomics.size()
            << " atomics\n";
  return 0;
}

int cmd_sweep(const CorpusFlags& corpus_flags, const TrainerFlags& flags,
              const std::string& grid_path) {
  const TrainerConfig base = flags.config();
  std::ifstream grid(grid_path);
  if (!grid) throw DataError("cannot open " + grid_path);
  const auto runs = parse_grid(grid, base);
  std::cerr << "[sweep] " << runs.size() << " runs\n";
  const Corpus corpus = corpus_flags.load();
  const auto rows = run_sweep(corpus, runs, &std::cerr);
  write_sweep_csv(std::cout, rows);
  return 0;
}

int cmd_compare(const CorpusFlags& corpus_flags, const TrainerFlags& flags,
                const std::vector<std::size_t>& sizes, const std::string& gold_path,
                bool gold_prefix_space) {
  TrainerConfig base = flags.config(/*with_vocab_size=*/false);
  for (const std::size_t n : sizes) {
    base.vocab_size = n;
    base.validate();
  }
  std::vector<GoldWord> gold;
  if (!gold_path.empty()) gold = read_gold_file(gold_path);
  const Corpus corpus = corpus_flags.load();
  const auto rows = compare_methods(corpus, sizes, base, gold, gold_prefix_space, &std::cerr);
  write_comparison_table(std::cout, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unitok: unigram tokenizer training and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "unitok 0.1.0");

  CorpusFlags train_corpus;
  TrainerFlags train_flags;
  std::string model_out;
  auto* train_cmd = app.add_subcommand("train", "Train a unigram model");
  train_corpus.add_to(train_cmd);
  train_flags.add_to(train_cmd);
  train_cmd->add_option("-o,--output", model_out, "Model file to write")->required();

  CorpusFlags bpe_corpus;
  std::size_t bpe_size = 0;
  std::string merges_out;
  auto* bpe_cmd = app.add_subcommand("train-bpe", "Train a BPE merge list");
  bpe_corpus.add_to(bpe_cmd);
  bpe_cmd->add_option("--vocab-size", bpe_size, "Target vocabulary size")->required();
  bpe_cmd->add_option("-o,--output", merges_out, "Merges file to write")->required();

  EncodeFlags enc;
  auto* enc_cmd = app.add_subcommand("encode", "Segment text into token ids");
  enc_cmd->add_option("-m,--model", enc.model, "Model file")->required();
  enc_cmd->add_option("input", enc.input, "Input text (default: standard input)");
  enc_cmd->add_flag("--pieces", enc.pieces, "Print escaped pieces instead of ids");
  enc_cmd->add_flag("--sample", enc.sample, "Sample segmentations instead of Viterbi");
  enc_cmd->add_option("--temperature", enc.temperature, "Sampling temperature")
      ->capture_default_str();
  enc_cmd->add_option("--rng-seed", enc.rng_seed, "RNG seed, required with --sample");

  std::string dec_model, dec_input;
  bool dec_pieces = false;
  auto* dec_cmd = app.add_subcommand("decode", "Turn token ids back into text");
  dec_cmd->add_option("-m,--model", dec_model, "Model file")->required();
  dec_cmd->add_option("input", dec_input, "Encoded input (default: standard input)");
  dec_cmd->add_flag("--pieces", dec_pieces, "Input holds escaped pieces instead of ids");

  CorpusFlags eval_corpus;
  EvalFlags eval_flags;
  auto* eval_cmd = app.add_subcommand("eval", "Report loss, token count and morph recall");
  eval_corpus.add_to(eval_cmd);
  eval_cmd->add_option("-m,--model", eval_flags.model, "Unigram model file");
  eval_cmd->add_option("--merges", eval_flags.merges, "BPE merges file");
  eval_cmd->add_option("--baseline", eval_flags.baseline, "Model to compute overlap against");
  eval_cmd->add_option("--gold", eval_flags.gold, "Gold file: word<TAB>morph|morph[<TAB>freq]");
  eval_cmd->add_flag("--gold-prefix-space", eval_flags.gold_prefix_space,
                     "Prefix gold words with a space, as inside running text");

  CorpusFlags seed_corpus;
  TrainerFlags seed_flags;
  bool seed_atomics = false;
  auto* seed_cmd = app.add_subcommand("seed-dump", "Print seed candidates as score, freq, token");
  seed_corpus.add_to(seed_cmd);
  seed_flags.add_to(seed_cmd);
  seed_cmd->add_flag("--atomics", seed_atomics, "Also print the single-byte tokens");

  CorpusFlags sweep_corpus;
  TrainerFlags sweep_flags;
  std::string grid_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Train a grid of configurations, print CSV");
  sweep_corpus.add_to(sweep_cmd);
  sweep_flags.add_to(sweep_cmd);
  sweep_cmd->add_option("--grid", grid_path, "Grid file: label key=value[,value...] ...")
      ->required();

  CorpusFlags cmp_corpus;
  TrainerFlags cmp_flags;
  std::vector<std::size_t> cmp_sizes;
  std::string cmp_gold;
  bool cmp_prefix_space = false;
  auto* cmp_cmd =
      app.add_subcommand("compare-bpe", "Compare unigram baseline, FSP and BPE at equal sizes");
  cmp_corpus.add_to(cmp_cmd);
  cmp_flags.add_to(cmp_cmd, /*with_vocab_size=*/false);
  cmp_cmd->add_option("--vocab-size", cmp_sizes, "Vocabulary size(s)")->required();
  cmp_cmd->add_option("--gold", cmp_gold, "Gold file for boundary recall");
  cmp_cmd->add_flag("--gold-prefix-space", cmp_prefix_space,
                    "Prefix gold words with a space, as inside running text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*train_cmd) return cmd_train(train_corpus, train_flags, model_out);
    if (*bpe_cmd) return cmd_train_bpe(bpe_corpus, bpe_size, merges_out);
    if (*enc_cmd) return cmd_encode(enc);
    if (*dec_cmd) return cmd_decode(dec_model, dec_input, dec_pieces);
    if (*eval_cmd) return cmd_eval(eval_corpus, eval_flags);
    if (*seed_cmd) return cmd_seed_dump(seed_corpus, seed_flags, seed_atomics);
    if (*sweep_cmd) return cmd_sweep(sweep_corpus, sweep_flags, grid_path);
    if (*cmp_cmd) {
      return cmd_compare(cmp_corpus, cmp_flags, cmp_sizes, cmp_gold, cmp_prefix_space);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
