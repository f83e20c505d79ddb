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

#include "unitok/model_file.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "unitok/errors.hpp"
#include "unitok/escape.hpp"

namespace unitok {
namespace {

constexpr std::string_view kMagic = "unitok-unigram";

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Splits "key=value"; returns false if the key does not match.
bool take_field(std::string_view field, std::string_view key, std::string_view* value) {
  if (field.size() <= key.size() || field.substr(0, key.size()) != key ||
      field[key.size()] != '=') {
    return false;
  }
  *value = field.substr(key.size() + 1);
  return true;
}

}  // namespace

void write_model(std::ostream& out, const Vocabulary& vocab, std::string_view config) {
  out << kMagic << "\tversion=" << kModelFormatVersion << "\tvocab_size=" << vocab.size()
      << "\tconfig=" << config << '\n';
  for (const TokenId id : vocab.ids_by_probability()) {
    out << escape_bytes(vocab.token(id)) << '\t' << format_double(vocab.log_prob(id)) << '\n';
  }
}

ModelFile read_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("model file is empty");
  std::vector<std::string_view> fields;
  {
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
  }
  std::string_view version, size, config;
  if (fields.size() < 3 || fields[0] != kMagic || !take_field(fields[1], "version", &version) ||
      !take_field(fields[2], "vocab_size", &size)) {
    throw DataError("model file has a malformed header");
  }
  if (fields.size() > 3 && !take_field(fields[3], "config", &config) && fields[3] != "config=") {
    throw DataError("model file has a malformed header");
  }
  ModelFile model;
  model.config = std::string(config);
  try {
    model.version = std::stoi(std::string(version));
  } catch (const std::exception&) {
    throw DataError("model file has a malformed version");
  }
  if (model.version != kModelFormatVersion) {
    throw DataError("unsupported model format version " + std::string(version));
  }
  std::size_t expected = 0;
  try {
    expected = std::stoull(std::string(size));
  } catch (const std::exception&) {
    throw DataError("model file has a malformed vocab_size");
  }

  std::vector<Vocabulary::Entry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw DataError("model line " + std::to_string(line_no) + ": expected token<TAB>log_prob");
    }
    const std::string number = line.substr(tab + 1);
    char* end = nullptr;
    errno = 0;
    const double lp = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size() || errno == ERANGE) {
      throw DataError("model line " + std::to_string(line_no) + ": bad log probability");
    }
    std::string token = unescape_bytes(std::string_view(line).substr(0, tab));
    const bool required = token.size() == 1;
    entries.push_back({std::move(token), lp, required});
  }
  if (entries.size() != expected) {
    throw DataError("model file declares " + std::to_string(expected) + " tokens but has " +
                    std::to_string(entries.size()));
  }
  try {
    model.vocab = Vocabulary(std::move(entries));
  } catch (const ConfigError& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
  return model;
}

void save_model(const std::filesystem::path& path, const Vocabulary& vocab,
                std::string_view config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file " + path.string());
  write_model(out, vocab, config);
  if (!out) throw DataError("error writing model file " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  return read_model(in);
}

}  // namespace unitok
