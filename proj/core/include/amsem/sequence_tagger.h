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

#ifndef AMSEM_SEQUENCE_TAGGER_H_
#define AMSEM_SEQUENCE_TAGGER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "amsem/dense_embeddings.h"

namespace amsem {

struct TaggedSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  friend bool operator==(const TaggedSequence&, const TaggedSequence&) = default;
};

// CoNLL: `token<TAB>tag` per line, blank line between sequences.
std::vector<TaggedSequence> read_conll(const std::filesystem::path& path);
std::vector<TaggedSequence> parse_conll(std::istream& in);
void write_conll(const std::filesystem::path& path,
                 std::span<const TaggedSequence> data);

using FeatureFn = std::function<std::vector<std::string>(
    std::span<const std::string> tokens, std::size_t i)>;

// w=, w-1= (or BOS), w+1= (or EOS), p1..p3, s1..s3 (in Unicode scalars,
// only lengths the word has), isnum for all-digit tokens, and bias.
std::vector<std::string> handcrafted_features(std::span<const std::string> tokens,
                                              std::size_t i);

bool is_numeric(std::string_view token);

// k-means over an embedding vocabulary, used to derive discrete cluster
// features from dense vectors.
class EmbeddingClusters {
 public:
  // Throws ConfigError when `model` is null or k is 0 or exceeds |V|.
  static EmbeddingClusters fit(std::shared_ptr<const EmbeddingModel> model,
                               std::size_t k, std::uint64_t seed,
                               std::size_t max_iterations = 100);

  std::size_t size() const { return centroids_.size() / dim_; }
  std::span<const double> centroid(std::size_t c) const {
    return {centroids_.data() + c * dim_, dim_};
  }
  std::size_t iterations() const { return iterations_; }
  const EmbeddingModel& model() const { return *model_; }

  // Nearest centroid (lowest index on ties).
  std::size_t assign(std::span<const float> v) const;
  // nullopt when the word has no vector (OOV without subwords).
  std::optional<std::size_t> cluster_of(const std::string& word) const;

 private:
  std::shared_ptr<const EmbeddingModel> model_;
  std::size_t dim_ = 0;
  std::vector<double> centroids_;
  std::vector<std::uint32_t> vocab_cluster_;
  std::size_t iterations_ = 0;
};

// cl=, cl-1=, cl+1= with cluster ids; UNK for words without a vector,
// BOS/EOS outside the sentence.
std::vector<std::string> embedding_features(std::span<const std::string> tokens,
                                            std::size_t i,
                                            const EmbeddingClusters& clusters);

// Handcrafted features, plus cluster features when `clusters` is set.
FeatureFn make_feature_fn(std::shared_ptr<const EmbeddingClusters> clusters = {});

// Linear-chain model. Transition index num_tags() stands for BOS when used
// as the previous tag and for EOS when used as the current tag.
class TaggerModel {
 public:
  TaggerModel() = default;
  explicit TaggerModel(std::vector<std::string> tagset);

  const std::vector<std::string>& tagset() const { return tags_; }
  std::size_t num_tags() const { return tags_.size(); }
  std::optional<std::size_t> tag_index(const std::string& tag) const;
  std::size_t boundary() const { return tags_.size(); }

  std::optional<std::uint32_t> feature_index(const std::string& feature) const;
  std::uint32_t intern_feature(const std::string& feature);
  std::size_t num_features() const { return features_.size(); }
  const std::string& feature_name(std::uint32_t f) const { return features_[f]; }

  double weight(std::uint32_t feature, std::size_t tag) const {
    return weights_[static_cast<std::size_t>(feature) * tags_.size() + tag];
  }
  double& weight(std::uint32_t feature, std::size_t tag) {
    return weights_[static_cast<std::size_t>(feature) * tags_.size() + tag];
  }
  double weight(const std::string& feature, const std::string& tag) const;
  double transition(std::size_t prev, std::size_t cur) const {
    return transitions_[prev * (tags_.size() + 1) + cur];
  }
  double& transition(std::size_t prev, std::size_t cur) {
    return transitions_[prev * (tags_.size() + 1) + cur];
  }
  std::span<const double> weights() const { return weights_; }
  std::span<double> weights() { return weights_; }
  std::span<const double> transitions() const { return transitions_; }
  std::span<double> transitions() { return transitions_; }

  // Row-major |tokens| x |tags| emission scores; unknown features ignored.
  std::vector<double> emissions(std::span<const std::string> tokens,
                                const FeatureFn& features) const;

  bool averaged = false;
  // Free-form settings recorded with the model (feature options etc.).
  std::map<std::string, std::string> metadata;

  void save(const std::filesystem::path& path) const;
  static TaggerModel load(const std::filesystem::path& path);

  friend bool operator==(const TaggerModel& a, const TaggerModel& b) {
    return a.tags_ == b.tags_ && a.features_ == b.features_ &&
           a.weights_ == b.weights_ && a.transitions_ == b.transitions_ &&
           a.averaged == b.averaged && a.metadata == b.metadata;
  }

 private:
  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::size_t> tag_index_;
  std::vector<std::string> features_;
  std::unordered_map<std::string, std::uint32_t> feature_index_;
  std::vector<double> weights_;
  std::vector<double> transitions_;
};

// Exact argmax path for row-major emissions (n x num_tags) and a
// (num_tags+1)^2 transition table with BOS/EOS at index num_tags. Ties
// prefer the lower tag index.
std::vector<std::size_t> viterbi_decode(std::span<const double> emissions,
                                        std::size_t n, std::size_t num_tags,
                                        std::span<const double> transitions);

double path_score(std::span<const double> emissions, std::size_t n,
                  std::size_t num_tags, std::span<const double> transitions,
                  std::span<const std::size_t> path);

std::vector<std::string> viterbi(const TaggerModel& model,
                                 std::span<const std::string> tokens,
                                 const FeatureFn& features);

struct TaggerTrainConfig {
  std::size_t epochs = 10;
  std::uint64_t seed = 42;
  bool average = true;
  // Fixed tagset; when empty it is the sorted set of training labels.
  std::vector<std::string> tagset;
  // Called after every sequence visit with the current raw weights.
  std::function<void(const TaggerModel&)> on_step;
};

// Averaged structured perceptron. The averaged weights are the mean of the
// weight vectors after each of the epochs x |data| sequence visits.
TaggerModel train_tagger(std::span<const TaggedSequence> data,
                         const TaggerTrainConfig& cfg, const FeatureFn& features);

struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;  // gold count
};

double f1_score(double precision, double recall);

struct TokenReport {
  std::map<std::string, PRF> per_tag;  // tags seen in gold or prediction
  PRF macro;                           // unweighted over gold tags
  PRF micro;
  double accuracy = 0;
  std::size_t tokens = 0;
};

TokenReport evaluate_tokens(std::span<const std::string> pred,
                            std::span<const std::string> gold);
TokenReport evaluate_tokens(std::span<const TaggedSequence> pred,
                            std::span<const TaggedSequence> gold);

struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::string label;
  auto operator<=>(const EntitySpan&) const = default;
};

// Decodes B-/I-/O labels. A stray I-X (not continuing an X span) opens a new
// span and increments *repaired.
std::vector<EntitySpan> decode_bio(std::span<const std::string> labels,
                                   std::size_t* repaired = nullptr);

struct SpanMetric {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

struct SpanReport {
  std::map<std::string, SpanMetric> per_class;
  SpanMetric micro;
  // True when there are neither gold nor predicted spans (all metrics 0).
  bool undefined = false;
  std::size_t repaired_predicted = 0;
  std::size_t repaired_gold = 0;
};

SpanReport evaluate_spans(std::span<const std::vector<std::string>> pred,
                          std::span<const std::vector<std::string>> gold);
SpanReport evaluate_spans(std::span<const TaggedSequence> pred,
                          std::span<const TaggedSequence> gold);

}  // namespace amsem

#endif  // AMSEM_SEQUENCE_TAGGER_H_
