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

#ifndef UNITOK_MODEL_FILE_HPP_
#define UNITOK_MODEL_FILE_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "unitok/vocabulary.hpp"

namespace unitok {

inline constexpr int kModelFormatVersion = 1;

// Text model format:
//
//   unitok-unigram<TAB>version=1<TAB>vocab_size=N<TAB>config=<echo>
//   <escaped token><TAB><log prob>
//   ...
//
// Body lines are ordered by descending log probability, ties by token bytes.
// Log probabilities are written with 17 significant digits, which round-trips
// every double exactly. Single-byte tokens are the required tokens.
struct ModelFile {
  Vocabulary vocab;
  int version = kModelFormatVersion;
  std::string config;
};

void write_model(std::ostream& out, const Vocabulary& vocab, std::string_view config = {});
// Throws DataError on a malformed header or body line.
ModelFile read_model(std::istream& in);

void save_model(const std::filesystem::path& path, const Vocabulary& vocab,
                std::string_view config = {});
ModelFile load_model(const std::filesystem::path& path);

}  // namespace unitok

#endif  // UNITOK_MODEL_FILE_HPP_
