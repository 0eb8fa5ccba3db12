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

#ifndef AMSEM_DENSE_EMBEDDINGS_H_
#define AMSEM_DENSE_EMBEDDINGS_H_

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
#include "amsem/random.h"

namespace amsem {

enum class EmbedMode { kSkipGram, kCbow };

std::string_view to_string(EmbedMode mode);
EmbedMode parse_embed_mode(std::string_view name);

struct SubwordConfig {
  std::size_t ngram_len = 5;  // in Unicode scalars, word padded as <word>
  std::uint32_t bucket_count = 2'000'000;
  friend bool operator==(const SubwordConfig&, const SubwordConfig&) = default;
};

struct EmbedConfig {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_lr = 0.025;  // decays linearly to initial_lr * 1e-4
  std::uint64_t min_count = 5;
  EmbedMode mode = EmbedMode::kCbow;
  std::optional<SubwordConfig> subword;
  double subsample_t = 1e-3;  // 0 disables subsampling
  std::uint64_t seed = 42;
  // 1 = deterministic single worker; >1 = unsynchronized parallel updates.
  std::size_t workers = 1;
  // Sample the effective window uniformly in [1, window] per center word.
  bool shrink_window = true;

  // Toolkit defaults used for word2vec-style models.
  static EmbedConfig word2vec();
  // 300-d CBOW, character 5-grams, window 5, 10 negatives.
  static EmbedConfig fasttext();

  void validate() const;
};

// Character n-grams of `<word>` with exactly n scalars each, in order.
std::vector<std::string> char_ngrams(std::string_view word, std::size_t n);

// FNV-1a (32-bit) over the UTF-8 bytes of the n-gram, modulo bucket_count.
std::uint32_t ngram_bucket(std::string_view ngram, std::uint32_t bucket_count);

// Vocabulary plus input vectors (and output vectors while training). In
// subword mode a word's vector is its own row plus the rows of its hashed
// n-gram buckets. Buckets are stored sparsely: rows are materialized for the
// buckets used by the vocabulary, and any other bucket reads as its seeded
// initial value, identical to what a dense matrix would hold.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  // Randomly initialized input rows, zero output rows.
  EmbeddingModel(Vocabulary vocab, std::size_t dim,
                 std::optional<SubwordConfig> subword, std::uint64_t seed);
  // Plain (no subword) model from explicit row-major input vectors.
  EmbeddingModel(Vocabulary vocab, std::size_t dim, std::vector<float> input);

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  const std::optional<SubwordConfig>& subword() const { return subword_; }
  bool has_output() const { return !output_.empty(); }

  std::span<const float> word_row(WordId id) const;
  std::span<float> word_row(WordId id);
  std::span<const float> output_row(WordId id) const;
  std::span<float> output_row(WordId id);
  void drop_output() { output_.clear(); output_.shrink_to_fit(); }

  // Bucket ids of a vocabulary word's n-grams (empty without subwords).
  std::span<const std::uint32_t> word_buckets(WordId id) const;
  // Materialized row index for each of word_buckets(id).
  std::span<const std::uint32_t> word_bucket_slots(WordId id) const;
  std::span<float> bucket_slot_row(std::uint32_t slot);
  std::span<const float> bucket_slot_row(std::uint32_t slot) const;
  // Current value of any bucket row.
  std::vector<float> bucket_vector(std::uint32_t bucket) const;

  // Input representation of a vocabulary word (word row + n-gram rows).
  std::vector<float> word_vector(WordId id) const;

  // In-vocabulary word -> its input representation; OOV word -> sum of its
  // n-gram bucket vectors when subwords are enabled, otherwise nullopt.
  std::optional<std::vector<float>> try_vector(const std::string& word) const;
  std::vector<float> vector(const std::string& word) const;  // NotFoundError

  // Row-major |V| x dim copy of every word's input representation.
  std::vector<float> composed_matrix() const;

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;

 private:
  float initial_value(std::uint64_t tag, std::uint64_t row,
                      std::size_t col) const;

  Vocabulary vocab_;
  std::size_t dim_ = 0;
  std::optional<SubwordConfig> subword_;
  std::uint64_t seed_ = 0;
  std::vector<float> input_;
  std::vector<float> output_;
  // Subword storage.
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::vector<std::uint32_t>> slots_;
  std::unordered_map<std::uint32_t, std::uint32_t> slot_of_bucket_;
  std::vector<float> bucket_rows_;
};

// Draws ids from the unigram distribution raised to `power`.
class NegativeSampler {
 public:
  NegativeSampler() = default;
  NegativeSampler(std::span<const std::uint64_t> counts, double power = 0.75);

  WordId draw(Rng& rng) const;
  double probability(WordId id) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

// word2vec subsampling keep probability; >= 1 (never dropped) whenever
// count / total < t. Returns 1 when t <= 0.
double keep_probability(std::uint64_t count, std::uint64_t total, double t);

struct TrainStats {
  std::vector<double> epoch_loss;  // mean loss per training example
  std::uint64_t examples = 0;
  std::uint64_t words_processed = 0;
};

// Builds the vocabulary and an initialized, untrained model.
EmbeddingModel init_model(std::span<const TokenizedSentence> corpus,
                          const EmbedConfig& cfg);

// Runs cfg.epochs of negative-sampling SGD over `corpus` on `model`.
TrainStats train_epochs(EmbeddingModel& model,
                        std::span<const TokenizedSentence> corpus,
                        const EmbedConfig& cfg);

// init_model + train_epochs. Throws DataError when no sentence has two
// in-vocabulary tokens.
EmbeddingModel train(std::span<const TokenizedSentence> corpus,
                     const EmbedConfig& cfg, TrainStats* stats = nullptr);

// Mean objective over every (center, context) example with the full window,
// no subsampling, and negatives drawn from Rng(seed). Needs output rows.
double evaluate_loss(const EmbeddingModel& model,
                     std::span<const TokenizedSentence> corpus,
                     const EmbedConfig& cfg, std::uint64_t seed);

struct ScoredWord {
  std::string word;
  double score = 0;
};

double cosine(std::span<const float> a, std::span<const float> b);

// Top-k vocabulary words by cosine to vector(word), query excluded, ties
// lexicographic.
std::vector<ScoredWord> nearest(const EmbeddingModel& model,
                                const std::string& word, std::size_t k);
std::vector<ScoredWord> nearest_to(const EmbeddingModel& model,
                                   std::span<const float> query, std::size_t k,
                                   const std::string* exclude = nullptr);

// word2vec text format. Subword models are written with composed vectors
// and load back as plain models.
void save_text(const EmbeddingModel& model, const std::filesystem::path& path);
void write_text(const EmbeddingModel& model, std::ostream& out);
EmbeddingModel load_text(const std::filesystem::path& path);
EmbeddingModel read_text(std::istream& in);

}  // namespace amsem

#endif  // AMSEM_DENSE_EMBEDDINGS_H_
