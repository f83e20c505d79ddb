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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "unitok/bpe.hpp"
#include "unitok/corpus.hpp"
#include "unitok/encoding.hpp"
#include "unitok/errors.hpp"
#include "unitok/eval.hpp"
#include "unitok/lattice.hpp"
#include "unitok/model_file.hpp"
#include "unitok/seed.hpp"
#include "unitok/sweep.hpp"
#include "unitok/trainer.hpp"

namespace py = pybind11;
using namespace unitok;

namespace {

std::vector<std::string> split_pretokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto p : pretokenize(text)) out.emplace_back(p);
  return out;
}

// One line of text; a newline byte is a DataError because newlines separate
// documents and cannot be represented in a single id sequence.
std::vector<TokenId> encode(const Vocabulary& vocab, const std::string& text) {
  return encode_line(text, vocab);
}

std::vector<TokenId> sample(const Vocabulary& vocab, const std::string& text, double temperature,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EncodeOptions options;
  options.sample = true;
  options.temperature = temperature;
  options.rng = &rng;
  return encode_line(text, vocab, options);
}

py::bytes decode(const Vocabulary& vocab, const std::vector<TokenId>& ids) {
  return py::bytes(decode_line(ids, vocab));
}

Vocabulary make_vocabulary(const std::vector<std::tuple<std::string, double, bool>>& items) {
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(items.size());
  for (const auto& [bytes, log_prob, required] : items) {
    entries.push_back({bytes, log_prob, required});
  }
  return Vocabulary(std::move(entries));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unigram and BPE tokenizer training (C++ core)";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  (void)config_error;
  (void)data_error;

  py::class_<Vocabulary>(m, "Vocabulary")
      .def(py::init(&make_vocabulary), py::arg("entries"),
           "Builds a vocabulary from (token bytes, log_prob, required) tuples.")
      .def("__len__", &Vocabulary::size)
      .def("token", [](const Vocabulary& v, TokenId id) { return py::bytes(std::string(v.token(id))); })
      .def("log_prob", &Vocabulary::log_prob)
      .def("find", &Vocabulary::find)
      .def("__contains__", [](const Vocabulary& v, const std::string& t) { return v.contains(t); })
      .def("tokens", [](const Vocabulary& v) {
        py::list out;
        for (const auto& e : v.entries()) out.append(py::bytes(e.bytes));
        return out;
      })
      .def("items", [](const Vocabulary& v) {
        py::list out;
        for (const auto& e : v.entries()) {
          out.append(py::make_tuple(py::bytes(e.bytes), e.log_prob, e.required));
        }
        return out;
      })
      .def("normalized", &Vocabulary::normalized);

  py::enum_<SeedMode>(m, "SeedMode")
      .value("PRETOKEN", SeedMode::kPretoken)
      .value("FULLTEXT", SeedMode::kFullText);
  py::enum_<PruneMode>(m, "PruneMode")
      .value("LIKELIHOOD", PruneMode::kLikelihood)
      .value("FSP", PruneMode::kFinalStyle);

  py::class_<TrainerConfig>(m, "TrainerConfig")
      .def(py::init([](std::size_t vocab_size) {
             TrainerConfig c;
             c.vocab_size = vocab_size;
             return c;
           }),
           py::arg("vocab_size") = 0)
      .def_readwrite("vocab_size", &TrainerConfig::vocab_size)
      .def_readwrite("beta_seed", &TrainerConfig::beta_seed)
      .def_readwrite("n_em", &TrainerConfig::em_iterations)
      .def_readwrite("alpha_prune", &TrainerConfig::alpha_prune)
      .def_readwrite("alpha_inter", &TrainerConfig::alpha_inter)
      .def_readwrite("tau_mp", &TrainerConfig::tau_mp)
      .def_readwrite("digamma", &TrainerConfig::digamma)
      .def_readwrite("max_token_len", &TrainerConfig::max_token_length)
      .def_readwrite("seed_mode", &TrainerConfig::seed_mode)
      .def_readwrite("recovery", &TrainerConfig::recovery)
      .def_readwrite("prune_mode", &TrainerConfig::prune_mode)
      .def_readwrite("threads", &TrainerConfig::threads)
      .def("set", [](TrainerConfig& c, const std::string& key, const std::string& value) {
        apply_override(c, key, value);
      }, py::arg("key"), py::arg("value"), "Sets a parameter by its CLI flag name.")
      .def("validate", &TrainerConfig::validate)
      .def("__repr__", [](const TrainerConfig& c) { return "TrainerConfig(" + c.to_string() + ")"; });

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("round", &IterationRecord::round)
      .def_readonly("phase", &IterationRecord::phase)
      .def_readonly("vocab_size", &IterationRecord::vocab_size)
      .def_readonly("loss", &IterationRecord::loss)
      .def_readonly("seconds", &IterationRecord::seconds);

  m.def("pretokenize", &split_pretokens, py::arg("text"));

  m.def(
      "train",
      [](std::vector<std::string> documents, const TrainerConfig& config) {
        TrainingResult result;
        {
          py::gil_scoped_release release;
          const Corpus corpus = Corpus::from_documents(std::move(documents));
          result = train(corpus, config);
        }
        return py::make_tuple(result.vocab, result.report.final_loss, result.report.records);
      },
      py::arg("documents"), py::arg("config"),
      "Trains a unigram vocabulary. Returns (vocab, final_loss, records).");

  m.def("seed_candidates",
        [](const std::vector<std::string>& documents, std::size_t n_seed, bool fulltext,
           bool recovery, std::size_t max_len) {
          SeedVocabulary seed;
          if (fulltext) {
            const SuffixIndex index = build_fulltext_index(documents);
            SeedOptions options;
            options.n_seed = n_seed;
            options.max_len = max_len;
            options.recovery = recovery;
            seed = emit_seed(index, options);
          } else {
            seed = emit_seed_pretoken(build_pretoken_table(documents), n_seed, max_len, recovery);
          }
          py::list out;
          for (const auto& c : seed.candidates) {
            out.append(py::make_tuple(py::bytes(c.token), c.freq, c.score));
          }
          return out;
        },
        py::arg("documents"), py::arg("n_seed"), py::arg("fulltext") = false,
        py::arg("recovery") = false, py::arg("max_len") = kDefaultMaxTokenLength,
        "Seed candidates as (token, freq, score), best first.");

  m.def("encode", &encode, py::arg("vocab"), py::arg("text"), "Viterbi token ids.");
  m.def("sample", &sample, py::arg("vocab"), py::arg("text"), py::arg("temperature"),
        py::arg("seed"), "Sampled token ids; deterministic for a given seed.");
  m.def("decode", &decode, py::arg("vocab"), py::arg("ids"));

  m.def("corpus_loss", [](const std::vector<std::string>& documents, const Vocabulary& vocab) {
    return corpus_loss(build_pretoken_table(documents), vocab);
  }, py::arg("documents"), py::arg("vocab"));
  m.def("token_count", [](const std::vector<std::string>& documents, const Vocabulary& vocab) {
    return token_count(build_pretoken_table(documents), UnigramSegmenter(vocab));
  }, py::arg("documents"), py::arg("vocab"));
  m.def("vocab_overlap", &vocab_overlap, py::arg("a"), py::arg("b"));

  py::class_<MergeList>(m, "MergeList")
      .def("__len__", &MergeList::size)
      .def("merges", [](const MergeList& ml) {
        py::list out;
        for (const auto& mg : ml.merges()) {
          out.append(py::make_tuple(py::bytes(mg.left), py::bytes(mg.right)));
        }
        return out;
      })
      .def("encode", [](const MergeList& ml, const std::string& text) {
        py::list out;
        for (const auto pretoken : pretokenize(text)) {
          for (const auto& piece : ml.encode(pretoken)) out.append(py::bytes(piece));
        }
        return out;
      }, py::arg("text"))
      .def("vocabulary", &MergeList::vocabulary);

  m.def("train_bpe", [](const std::vector<std::string>& documents, std::size_t n) {
    return train_bpe(build_pretoken_table(documents), n).merges;
  }, py::arg("documents"), py::arg("vocab_size"));

  m.def("save_model", [](const std::string& path, const Vocabulary& vocab) {
    save_model(path, vocab);
  }, py::arg("path"), py::arg("vocab"));
  m.def("load_model", [](const std::string& path) { return load_model(path).vocab; },
        py::arg("path"));

  m.attr("__version__") = "0.1.0";
}
