# Copyright 2026 The unitok Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the unitok tokenizer toolkit."""

from ._core import (
    ConfigError,
    DataError,
    IterationRecord,
    MergeList,
    PruneMode,
    SeedMode,
    TrainerConfig,
    Vocabulary,
    __version__,
    corpus_loss,
    decode,
    encode,
    load_model,
    pretokenize,
    sample,
    save_model,
    seed_candidates,
    token_count,
    train,
    train_bpe,
    vocab_overlap,
)

__all__ = [
    "ConfigError",
    "DataError",
    "IterationRecord",
    "MergeList",
    "PruneMode",
    "SeedMode",
    "TrainerConfig",
    "Vocabulary",
    "corpus_loss",
    "decode",
    "encode",
    "load_model",
    "pretokenize",
    "sample",
    "save_model",
    "seed_candidates",
    "token_count",
    "train",
    "train_bpe",
    "vocab_overlap",
]
