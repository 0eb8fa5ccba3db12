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

#ifndef AMSEM_THESAURUS_H_
#define AMSEM_THESAURUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amsem/corpus.h"

namespace amsem {

enum class Significance { kLmi, kPmi, kFrequency };

std::string_view to_string(Significance s);
Significance parse_significance(std::string_view name);

struct HolingConfig {
  std::size_t window = 3;
  bool positional = true;  // "-1@word" rather than "word"
  std::uint64_t min_word_feature_count = 2;
  std::size_t features_per_word = 1000;
  std::size_t max_words_per_feature = 1000;
  std::size_t max_neighbors = 200;  // 0 keeps every neighbor
  Significance significance = Significance::kLmi;
  // Rank neighbors by sum over shared features of min(score_w, score_w')
  // instead of the plain overlap count.
  bool weighted_overlap = false;

  void validate() const;
};

struct WordFeature {
  std::string word;
  std::string feature;
  friend bool operator==(const WordFeature&, const WordFeature&) = default;
};

std::string context_feature(std::ptrdiff_t offset, std::string_view word,
                            bool positional);

// Holing: every (word_i, feature(d, word_{i+d})) with 1 <= |d| <= window.
std::vector<WordFeature> extract_features(std::span<const std::string> sentence,
                                          const HolingConfig& cfg);

// Lexicographer's mutual information n_wf * log2(n_wf * N / (n_w * n_f)).
// Throws ConfigError when n_wf, N, n_w or n_f is zero.
double lmi(std::uint64_t n_wf, std::uint64_t n_w, std::uint64_t n_f,
           std::uint64_t n);
double pmi(std::uint64_t n_wf, std::uint64_t n_w, std::uint64_t n_f,
           std::uint64_t n);
double significance(Significance kind, std::uint64_t n_wf, std::uint64_t n_w,
                    std::uint64_t n_f, std::uint64_t n);

// Sparse word/feature co-occurrence counts. Marginals are over pairs:
// n_w(w) = sum_f n_wf(w, f), n_f(f) = sum_w n_wf(w, f), N = sum n_wf.
class CooccurrenceCounter {
 public:
  explicit CooccurrenceCounter(HolingConfig cfg = {});

  void add(std::span<const std::string> sentence);
  // Associative, commutative merge of counts over a disjoint shard.
  void merge(const CooccurrenceCounter& other);

  std::uint64_t pair_count(const std::string& word,
                           const std::string& feature) const;
  std::uint64_t word_count(const std::string& word) const;
  std::uint64_t feature_count(const std::string& feature) const;
  std::uint64_t total() const { return total_; }
  std::uint64_t sentences() const { return sentences_; }
  std::size_t num_words() const { return words_.size(); }
  std::size_t num_features() const { return features_.size(); }
  std::size_t num_pairs() const { return pairs_.size(); }
  const HolingConfig& config() const { return cfg_; }

 private:
  friend class ThesaurusBuilder;

  std::uint32_t intern_word(const std::string& w);
  std::uint32_t intern_feature(const std::string& f);
  void add_pair(std::uint32_t w, std::uint32_t f, std::uint64_t count);

  HolingConfig cfg_;
  std::unordered_map<std::string, std::uint32_t> word_index_;
  std::unordered_map<std::string, std::uint32_t> feature_index_;
  std::vector<std::string> words_;
  std::vector<std::string> features_;
  std::vector<std::uint64_t> word_marginal_;
  std::vector<std::uint64_t> feature_marginal_;
  std::unordered_map<std::uint64_t, std::uint64_t> pairs_;
  std::uint64_t total_ = 0;
  std::uint64_t sentences_ = 0;
};

struct SalientFeature {
  std::string feature;
  double score = 0;
  std::uint64_t count = 0;
};

struct Neighbor {
  std::string word;
  std::uint64_t overlap = 0;
  double weight = 0;  // == overlap unless weighted_overlap
};

class ThesaurusModel {
 public:
  struct Entry {
    std::string word;
    std::vector<SalientFeature> salient;  // score descending
    std::vector<Neighbor> neighbors;      // rank order, self excluded
  };

  ThesaurusModel() = default;
  explicit ThesaurusModel(std::vector<Entry> entries);

  bool contains(const std::string& word) const;
  const Entry& entry(const std::string& word) const;  // NotFoundError
  std::span<const SalientFeature> salient(const std::string& word) const {
    return entry(word).salient;
  }
  std::span<const Neighbor> neighbors(const std::string& word) const {
    return entry(word).neighbors;
  }
  // Entries sorted by word.
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // TSV `word<TAB>neighbor<TAB>overlap`, sorted by (word, rank).
  void save_neighbors(const std::filesystem::path& path) const;
  // TSV `word<TAB>feature<TAB>score`.
  void save_salient(const std::filesystem::path& path) const;
  static ThesaurusModel load(
      const std::filesystem::path& neighbors_path,
      const std::optional<std::filesystem::path>& salient_path = std::nullopt);

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Filters, scores and prunes the counts, then ranks neighbors by salient
// feature overlap. Throws DataError when the counter saw no tokens.
ThesaurusModel build_dt(const CooccurrenceCounter& counts);
ThesaurusModel build_dt(std::span<const TokenizedSentence> corpus,
                        const HolingConfig& cfg);

// First min(k, available) neighbors. NotFoundError for unknown words.
std::vector<Neighbor> similar(const ThesaurusModel& model,
                              const std::string& word, std::size_t k);

}  // namespace amsem

#endif  // AMSEM_THESAURUS_H_
