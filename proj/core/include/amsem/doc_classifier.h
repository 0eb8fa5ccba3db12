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

#ifndef AMSEM_DOC_CLASSIFIER_H_
#define AMSEM_DOC_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amsem/ethiopic_text.h"

namespace amsem {

struct LabeledDocument {
  std::vector<std::string> tokens;  // may be empty
  std::string label;
};

// Dataset TSV: `label<TAB>text`. Text is split on whitespace, or passed
// through normalize + tokenize when `raw` is set (punctuation dropped).
std::vector<LabeledDocument> read_labeled_tsv(const std::filesystem::path& path,
                                              bool raw = false,
                                              const NormalizationTable* table = nullptr);

// Sparse vector as (column, value) pairs with increasing columns.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// idf(t) = ln((1 + N) / (1 + df(t))) + 1, columns in lexicographic term order.
class TfidfModel {
 public:
  TfidfModel() = default;

  // Throws DataError when `docs` is empty or contains no terms at all.
  static TfidfModel fit(std::span<const std::vector<std::string>> docs);

  std::size_t size() const { return terms_.size(); }
  std::size_t doc_count() const { return doc_count_; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::span<const double> idf() const { return idf_; }
  std::optional<std::uint32_t> column(const std::string& term) const;
  double idf(const std::string& term) const;  // 0 for unseen terms

  // counts x idf, L2-normalized; unseen terms ignored; zero vector stays zero.
  SparseVector transform(std::span<const std::string> doc) const;

  void save(const std::filesystem::path& path) const;
  static TfidfModel load(const std::filesystem::path& path);

  friend bool operator==(const TfidfModel& a, const TfidfModel& b) {
    return a.terms_ == b.terms_ && a.idf_ == b.idf_ && a.doc_count_ == b.doc_count_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> column_;
  std::size_t doc_count_ = 0;
};

class LinearClassifier {
 public:
  LinearClassifier() = default;
  LinearClassifier(std::vector<std::string> classes, std::size_t num_features);

  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t num_features() const { return num_features_; }

  // Row-major |classes| x |features|.
  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> bias() { return bias_; }
  std::span<const double> bias() const { return bias_; }
  double& weight(std::size_t c, std::size_t f) { return weights_[c * num_features_ + f]; }
  double weight(std::size_t c, std::size_t f) const {
    return weights_[c * num_features_ + f];
  }

  std::vector<double> scores(const SparseVector& x) const;
  std::vector<double> predict_proba(const SparseVector& x) const;
  // Highest probability, lowest class index on ties.
  std::size_t predict_index(const SparseVector& x) const;
  const std::string& predict(const SparseVector& x) const;

  void save(const std::filesystem::path& path) const;
  static LinearClassifier load(const std::filesystem::path& path);

  friend bool operator==(const LinearClassifier&, const LinearClassifier&) = default;

 private:
  std::vector<std::string> classes_;
  std::size_t num_features_ = 0;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// Mean cross-entropy over `rows` plus (l2 / 2) ||W||^2 (bias unregularized).
// When the gradient spans are non-empty they receive d/dW and d/db.
double logreg_objective(const LinearClassifier& model, std::span<const SparseVector> x,
                        std::span<const std::size_t> y, double l2,
                        std::span<double> grad_w = {}, std::span<double> grad_b = {});

struct LogRegConfig {
  double l2 = 1e-4;
  std::size_t epochs = 50;
  double lr = 0.5;
  std::size_t batch_size = 32;  // 0 means full batch
  std::uint64_t seed = 42;
  void validate() const;
};

struct LogRegStats {
  std::vector<double> epoch_objective;  // full-data objective after each epoch
};

// Classes are the sorted distinct labels; throws DataError for fewer than two.
LinearClassifier train_logreg(std::span<const SparseVector> x,
                              std::span<const std::string> labels, std::size_t num_features,
                              const LogRegConfig& cfg, LogRegStats* stats = nullptr);

enum class BaselineStrategy { kMostFrequent, kStratified, kUniform };

std::string_view to_string(BaselineStrategy s);
BaselineStrategy parse_baseline(std::string_view name);

// Throws DataError when `train_labels` is empty.
std::vector<std::string> baseline(BaselineStrategy strategy,
                                  std::span<const std::string> train_labels,
                                  std::size_t test_size, std::uint64_t seed);

enum class Averaging { kMacro, kWeighted };

std::string_view to_string(Averaging a);
Averaging parse_averaging(std::string_view name);

struct ClassMetric {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;
};

struct ClassificationReport {
  std::map<std::string, ClassMetric> per_class;  // classes seen in gold or pred
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double accuracy = 0;
};

// Averages run over gold classes. A class without predictions has precision 0.
ClassificationReport evaluate_classification(std::span<const std::string> pred,
                                             std::span<const std::string> gold,
                                             Averaging averaging = Averaging::kMacro);

}  // namespace amsem

#endif  // AMSEM_DOC_CLASSIFIER_H_
