// Copyright 2026 The Amsem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMSEM_CORPUS_H_
#define AMSEM_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amsem/ethiopic_text.h"

namespace amsem {

using TokenizedSentence = std::vector<std::string>;
using WordId = std::uint32_t;

// Dense 0-based word ids ordered by descending count, ties by byte-wise
// lexicographic order of the word.
class Vocabulary {
 public:
  Vocabulary() = default;

  // `counts` need not be sorted; ids are assigned by the ordering rule.
  // `total_tokens` is the size of the unfiltered stream.
  static Vocabulary from_counts(
      std::vector<std::pair<std::string, std::uint64_t>> counts,
      std::uint64_t total_tokens);

  // Keeps the given order as the id assignment (used by model loaders).
  static Vocabulary from_ordered(std::vector<std::string> words,
                                 std::vector<std::uint64_t> counts,
                                 std::uint64_t total_tokens);

  std::optional<WordId> id(const std::string& word) const;
  bool contains(const std::string& word) const { return id(word).has_value(); }
  const std::string& word(WordId id) const { return words_[id]; }
  std::uint64_t count(WordId id) const { return counts_[id]; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  std::uint64_t total_tokens() const { return total_tokens_; }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // TSV `word<TAB>count` ordered by id. Loading sets total_tokens to the
  // sum of the stored counts.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.counts_ == b.counts_ &&
           a.total_tokens_ == b.total_tokens_;
  }

 private:
  std::unordered_map<std::string, WordId> index_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_tokens_ = 0;
};

// Streaming frequency counter. Counters over disjoint shards merge by
// map-union with addition.
class VocabCounter {
 public:
  void add(std::span<const std::string> sentence);
  void merge(const VocabCounter& other);
  Vocabulary build(std::uint64_t min_count) const;
  std::uint64_t total_tokens() const { return total_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

Vocabulary build_vocab(std::span<const TokenizedSentence> corpus,
                       std::uint64_t min_count);

struct CorpusStats {
  std::uint64_t sentence_count = 0;
  std::uint64_t token_count = 0;
  std::uint64_t type_count = 0;
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(std::span<const TokenizedSentence> corpus);

struct SplitSpec {
  std::array<double, 3> ratios{0.8, 0.1, 0.1};  // train, dev, test
  std::uint64_t seed = 42;

  // Throws ConfigError unless ratios are non-negative and sum to 1 (1e-9).
  void validate() const;
};

// Part sizes by the largest-remainder method; ties go train, dev, test.
std::array<std::size_t, 3> split_sizes(std::size_t n,
                                       const std::array<double, 3>& ratios);

// Seeded shuffle of 0..n-1 sliced into train/dev/test index lists.
std::array<std::vector<std::size_t>, 3> split_indices(std::size_t n,
                                                      const SplitSpec& spec);

template <class T>
struct DatasetSplit {
  std::vector<T> train;
  std::vector<T> dev;
  std::vector<T> test;
};

template <class T>
DatasetSplit<T> split_dataset(std::span<const T> items, const SplitSpec& spec) {
  const auto parts = split_indices(items.size(), spec);
  DatasetSplit<T> out;
  std::array<std::vector<T>*, 3> dst{&out.train, &out.dev, &out.test};
  for (std::size_t p = 0; p < 3; ++p) {
    dst[p]->reserve(parts[p].size());
    for (std::size_t i : parts[p]) dst[p]->push_back(items[i]);
  }
  return out;
}

enum class CorpusMode {
  kTokenized,  // one sentence per line, tokens separated by whitespace
  kRaw,        // raw text; each line is normalized, tokenized and segmented
};

// Whitespace-split of an already tokenized line.
TokenizedSentence split_tokens(std::string_view line);

// Streams sentences from disk without materializing the corpus. `table` is
// used in raw mode only and may be null to skip normalization.
void for_each_sentence(const std::filesystem::path& path, CorpusMode mode,
                       const NormalizationTable* table,
                       const std::function<void(TokenizedSentence&&)>& fn);

std::vector<TokenizedSentence> read_corpus(const std::filesystem::path& path,
                                           CorpusMode mode,
                                           const NormalizationTable* table);

void write_corpus(const std::filesystem::path& path,
                  std::span<const TokenizedSentence> corpus);

}  // namespace amsem

#endif  // AMSEM_CORPUS_H_
