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

#include "amsem/dense_embeddings.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "amsem/error.h"
#include "amsem/sgns.h"
#include "amsem/text_io.h"
#include "amsem/utf8.h"

namespace amsem {

std::string_view to_string(EmbedMode mode) {
  return mode == EmbedMode::kSkipGram ? "skipgram" : "cbow";
}

EmbedMode parse_embed_mode(std::string_view name) {
  if (name == "skipgram" || name == "sg") return EmbedMode::kSkipGram;
  if (name == "cbow") return EmbedMode::kCbow;
  throw ConfigError("unknown embedding mode '" + std::string(name) + "'");
}

EmbedConfig EmbedConfig::word2vec() { return EmbedConfig{}; }

EmbedConfig EmbedConfig::fasttext() {
  EmbedConfig cfg;
  cfg.dim = 300;
  cfg.mode = EmbedMode::kCbow;
  cfg.window = 5;
  cfg.negatives = 10;
  cfg.subword = SubwordConfig{};
  return cfg;
}

void EmbedConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(initial_lr > 0)) throw ConfigError("learning rate must be positive");
  if (!(subsample_t >= 0)) throw ConfigError("subsample threshold must be >= 0");
  if (subword && (subword->ngram_len < 1 || subword->bucket_count < 1)) {
    throw ConfigError("subword ngram_len and bucket_count must be >= 1");
  }
}

std::vector<std::string> char_ngrams(std::string_view word, std::size_t n) {
  std::u32string padded = U"<";
  padded += utf8::to_u32(word);
  padded += U">";
  std::vector<std::string> out;
  if (n == 0 || padded.size() < n) return out;
  for (std::size_t i = 0; i + n <= padded.size(); ++i) {
    out.push_back(utf8::encode(std::u32string_view(padded).substr(i, n)));
  }
  return out;
}

std::uint32_t ngram_bucket(std::string_view ngram, std::uint32_t bucket_count) {
  return fnv1a32(ngram) % bucket_count;
}

// --- EmbeddingModel --------------------------------------------------------

namespace {
constexpr std::uint64_t kWordTag = 0;
constexpr std::uint64_t kBucketTag = 1;
}  // namespace

float EmbeddingModel::initial_value(std::uint64_t tag, std::uint64_t row,
                                    std::size_t col) const {
  const std::uint64_t bits = mix64(derive_seed(seed_, tag, row * dim_ + col));
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return static_cast<float>((u - 0.5) / static_cast<double>(dim_));
}

EmbeddingModel::EmbeddingModel(Vocabulary vocab, std::size_t dim,
                               std::optional<SubwordConfig> subword,
                               std::uint64_t seed)
    : vocab_(std::move(vocab)), dim_(dim), subword_(subword), seed_(seed) {
  if (dim_ < 1) throw ConfigError("dim must be >= 1");
  const std::size_t v = vocab_.size();
  input_.resize(v * dim_);
  for (std::size_t r = 0; r < v; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      input_[r * dim_ + c] = initial_value(kWordTag, r, c);
    }
  }
  output_.assign(v * dim_, 0.0f);
  if (!subword_) return;
  buckets_.resize(v);
  slots_.resize(v);
  for (std::size_t r = 0; r < v; ++r) {
    for (const auto& g : char_ngrams(vocab_.word(static_cast<WordId>(r)),
                                     subword_->ngram_len)) {
      const std::uint32_t b = ngram_bucket(g, subword_->bucket_count);
      auto [it, inserted] = slot_of_bucket_.emplace(
          b, static_cast<std::uint32_t>(slot_of_bucket_.size()));
      if (inserted) {
        for (std::size_t c = 0; c < dim_; ++c) {
          bucket_rows_.push_back(initial_value(kBucketTag, b, c));
        }
      }
      buckets_[r].push_back(b);
      slots_[r].push_back(it->second);
    }
  }
}

EmbeddingModel::EmbeddingModel(Vocabulary vocab, std::size_t dim,
                               std::vector<float> input)
    : vocab_(std::move(vocab)), dim_(dim), input_(std::move(input)) {
  if (dim_ < 1) throw ConfigError("dim must be >= 1");
  if (input_.size() != vocab_.size() * dim_) {
    throw ConfigError("input matrix size does not match vocabulary x dim");
  }
}

std::span<const float> EmbeddingModel::word_row(WordId id) const {
  return {input_.data() + static_cast<std::size_t>(id) * dim_, dim_};
}
std::span<float> EmbeddingModel::word_row(WordId id) {
  return {input_.data() + static_cast<std::size_t>(id) * dim_, dim_};
}
std::span<const float> EmbeddingModel::output_row(WordId id) const {
  return {output_.data() + static_cast<std::size_t>(id) * dim_, dim_};
}
std::span<float> EmbeddingModel::output_row(WordId id) {
  return {output_.data() + static_cast<std::size_t>(id) * dim_, dim_};
}

std::span<const std::uint32_t> EmbeddingModel::word_buckets(WordId id) const {
  if (!subword_) return {};
  return buckets_[id];
}
std::span<const std::uint32_t> EmbeddingModel::word_bucket_slots(WordId id) const {
  if (!subword_) return {};
  return slots_[id];
}
std::span<float> EmbeddingModel::bucket_slot_row(std::uint32_t slot) {
  return {bucket_rows_.data() + static_cast<std::size_t>(slot) * dim_, dim_};
}
std::span<const float> EmbeddingModel::bucket_slot_row(std::uint32_t slot) const {
  return {bucket_rows_.data() + static_cast<std::size_t>(slot) * dim_, dim_};
}

std::vector<float> EmbeddingModel::bucket_vector(std::uint32_t bucket) const {
  auto it = slot_of_bucket_.find(bucket);
  if (it != slot_of_bucket_.end()) {
    auto row = bucket_slot_row(it->second);
    return {row.begin(), row.end()};
  }
  std::vector<float> out(dim_);
  for (std::size_t c = 0; c < dim_; ++c) out[c] = initial_value(kBucketTag, bucket, c);
  return out;
}

std::vector<float> EmbeddingModel::word_vector(WordId id) const {
  auto row = word_row(id);
  std::vector<float> out(row.begin(), row.end());
  for (std::uint32_t slot : word_bucket_slots(id)) {
    auto b = bucket_slot_row(slot);
    for (std::size_t c = 0; c < dim_; ++c) out[c] += b[c];
  }
  return out;
}

std::optional<std::vector<float>> EmbeddingModel::try_vector(
    const std::string& word) const {
  if (auto id = vocab_.id(word)) return word_vector(*id);
  if (!subword_) return std::nullopt;
  std::vector<float> out(dim_, 0.0f);
  for (const auto& g : char_ngrams(word, subword_->ngram_len)) {
    const auto b = bucket_vector(ngram_bucket(g, subword_->bucket_count));
    for (std::size_t c = 0; c < dim_; ++c) out[c] += b[c];
  }
  return out;
}

std::vector<float> EmbeddingModel::vector(const std::string& word) const {
  auto v = try_vector(word);
  if (!v) throw NotFoundError("word '" + word + "' is not in the embedding vocabulary");
  return std::move(*v);
}

std::vector<float> EmbeddingModel::composed_matrix() const {
  if (!subword_) return input_;
  std::vector<float> out;
  out.reserve(input_.size());
  for (std::size_t r = 0; r < vocab_.size(); ++r) {
    auto v = word_vector(static_cast<WordId>(r));
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// --- sampling -------------------------------------------------------------

NegativeSampler::NegativeSampler(std::span<const std::uint64_t> counts,
                                 double power) {
  cumulative_.reserve(counts.size());
  double acc = 0;
  for (std::uint64_t c : counts) {
    acc += std::pow(static_cast<double>(c), power);
    cumulative_.push_back(acc);
  }
  if (!(acc > 0)) throw DataError("negative sampler needs a positive count");
  for (double& x : cumulative_) x /= acc;
  cumulative_.back() = 1.0;
}

WordId NegativeSampler::draw(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<WordId>(it - cumulative_.begin());
}

double NegativeSampler::probability(WordId id) const {
  return cumulative_[id] - (id == 0 ? 0.0 : cumulative_[id - 1]);
}

double keep_probability(std::uint64_t count, std::uint64_t total, double t) {
  if (t <= 0 || count == 0) return 1.0;
  const double threshold = t * static_cast<double>(total);
  const double c = static_cast<double>(count);
  return (std::sqrt(c / threshold) + 1.0) * threshold / c;
}

// --- training -------------------------------------------------------------

namespace {

std::vector<std::vector<WordId>> to_ids(const Vocabulary& vocab,
                                        std::span<const TokenizedSentence> corpus) {
  std::vector<std::vector<WordId>> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) {
    std::vector<WordId> ids;
    ids.reserve(s.size());
    for (const auto& w : s) {
      if (auto id = vocab.id(w)) ids.push_back(*id);
    }
    out.push_back(std::move(ids));
  }
  return out;
}

class Trainer {
 public:
  Trainer(EmbeddingModel& model, std::span<const TokenizedSentence> corpus,
          const EmbedConfig& cfg)
      : model_(model),
        cfg_(cfg),
        sentences_(to_ids(model.vocab(), corpus)),
        sampler_(model.vocab().counts()) {
    std::uint64_t in_vocab = 0;
    for (std::uint64_t c : model.vocab().counts()) in_vocab += c;
    keep_.reserve(model.size());
    for (std::uint64_t c : model.vocab().counts()) {
      keep_.push_back(keep_probability(c, in_vocab, cfg.subsample_t));
    }
    for (const auto& s : sentences_) total_words_ += s.size();
  }

  TrainStats run() {
    TrainStats stats;
    const std::size_t workers = std::min(cfg_.workers, std::max<std::size_t>(1, sentences_.size()));
    for (std::size_t epoch = 0; epoch < cfg_.epochs; ++epoch) {
      std::vector<double> loss(workers, 0.0);
      std::vector<std::uint64_t> examples(workers, 0);
      auto shard = [&](std::size_t w) {
        const std::size_t n = sentences_.size();
        Rng rng(derive_seed(cfg_.seed, epoch, w));
        run_shard(n * w / workers, n * (w + 1) / workers, rng, loss[w], examples[w]);
      };
      if (workers == 1) {
        shard(0);
      } else {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(shard, w);
      }
      double l = 0;
      std::uint64_t e = 0;
      for (std::size_t w = 0; w < workers; ++w) {
        l += loss[w];
        e += examples[w];
      }
      stats.examples += e;
      stats.epoch_loss.push_back(e ? l / static_cast<double>(e) : 0.0);
    }
    stats.words_processed = processed_.load();
    return stats;
  }

 private:
  float learning_rate() const {
    const double progress =
        static_cast<double>(processed_.load(std::memory_order_relaxed)) /
        (static_cast<double>(cfg_.epochs * total_words_) + 1.0);
    return static_cast<float>(cfg_.initial_lr * std::max(1e-4, 1.0 - progress));
  }

  // Input representation of `id` into `h`.
  void compose(WordId id, std::span<float> h) const {
    auto row = model_.word_row(id);
    std::copy(row.begin(), row.end(), h.begin());
    for (std::uint32_t slot : model_.word_bucket_slots(id)) {
      auto b = model_.bucket_slot_row(slot);
      for (std::size_t c = 0; c < h.size(); ++c) h[c] += b[c];
    }
  }

  void apply_input(WordId id, std::span<const float> delta, float scale) {
    auto row = model_.word_row(id);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += scale * delta[c];
    for (std::uint32_t slot : model_.word_bucket_slots(id)) {
      auto b = model_.bucket_slot_row(slot);
      for (std::size_t c = 0; c < b.size(); ++c) b[c] += scale * delta[c];
    }
  }

  // Positive target followed by up to cfg.negatives sampled negatives; a
  // draw equal to the positive is skipped.
  void gather_targets(WordId positive, Rng& rng, std::vector<std::span<float>>& rows) {
    rows.clear();
    rows.push_back(model_.output_row(positive));
    for (std::size_t k = 0; k < cfg_.negatives; ++k) {
      const WordId neg = sampler_.draw(rng);
      if (neg == positive) continue;
      rows.push_back(model_.output_row(neg));
    }
  }

  void run_shard(std::size_t begin, std::size_t end, Rng& rng, double& loss,
                 std::uint64_t& examples) {
    const std::size_t dim = model_.dim();
    std::vector<float> h(dim), ascent(dim), tmp(dim);
    std::vector<std::span<float>> targets;
    std::vector<WordId> kept;
    for (std::size_t s = begin; s < end; ++s) {
      kept.clear();
      for (WordId id : sentences_[s]) {
        processed_.fetch_add(1, std::memory_order_relaxed);
        if (keep_[id] < 1.0 && keep_[id] < rng.uniform()) continue;
        kept.push_back(id);
      }
      const float lr = learning_rate();
      const auto n = static_cast<std::ptrdiff_t>(kept.size());
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto reduce = cfg_.shrink_window
                                ? static_cast<std::ptrdiff_t>(rng.below(cfg_.window))
                                : 0;
        const std::ptrdiff_t win = static_cast<std::ptrdiff_t>(cfg_.window) - reduce;
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - win);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + win);
        if (cfg_.mode == EmbedMode::kSkipGram) {
          for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            compose(kept[i], h);
            std::fill(ascent.begin(), ascent.end(), 0.0f);
            gather_targets(kept[j], rng, targets);
            loss += sgns::step<float>(h, targets, lr, ascent);
            ++examples;
            apply_input(kept[i], ascent, lr);
          }
        } else {
          const std::size_t m = static_cast<std::size_t>(hi - lo);
          if (m == 0) continue;
          std::fill(h.begin(), h.end(), 0.0f);
          for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            compose(kept[j], tmp);
            for (std::size_t c = 0; c < dim; ++c) h[c] += tmp[c];
          }
          const float inv = 1.0f / static_cast<float>(m);
          for (float& x : h) x *= inv;
          std::fill(ascent.begin(), ascent.end(), 0.0f);
          gather_targets(kept[i], rng, targets);
          loss += sgns::step<float>(h, targets, lr, ascent);
          ++examples;
          for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            if (j != i) apply_input(kept[j], ascent, lr * inv);
          }
        }
      }
    }
  }

  EmbeddingModel& model_;
  const EmbedConfig& cfg_;
  std::vector<std::vector<WordId>> sentences_;
  NegativeSampler sampler_;
  std::vector<double> keep_;
  std::uint64_t total_words_ = 0;
  std::atomic<std::uint64_t> processed_{0};
};

bool has_training_pair(const Vocabulary& vocab,
                       std::span<const TokenizedSentence> corpus) {
  for (const auto& s : corpus) {
    std::size_t n = 0;
    for (const auto& w : s) {
      if (vocab.contains(w) && ++n >= 2) return true;
    }
  }
  return false;
}

}  // namespace

EmbeddingModel init_model(std::span<const TokenizedSentence> corpus,
                          const EmbedConfig& cfg) {
  cfg.validate();
  Vocabulary vocab = build_vocab(corpus, cfg.min_count);
  if (vocab.empty() || !has_training_pair(vocab, corpus)) {
    throw DataError(
        "corpus has no sentence with two in-vocabulary tokens (min_count=" +
        std::to_string(cfg.min_count) + ")");
  }
  return EmbeddingModel(std::move(vocab), cfg.dim, cfg.subword, cfg.seed);
}

TrainStats train_epochs(EmbeddingModel& model,
                        std::span<const TokenizedSentence> corpus,
                        const EmbedConfig& cfg) {
  cfg.validate();
  if (!model.has_output()) {
    throw ConfigError("model has no output vectors; it cannot be trained further");
  }
  if (cfg.dim != model.dim()) throw ConfigError("config dim differs from model dim");
  return Trainer(model, corpus, cfg).run();
}

EmbeddingModel train(std::span<const TokenizedSentence> corpus,
                     const EmbedConfig& cfg, TrainStats* stats) {
  EmbeddingModel model = init_model(corpus, cfg);
  TrainStats s = train_epochs(model, corpus, cfg);
  if (stats) *stats = std::move(s);
  return model;
}

double evaluate_loss(const EmbeddingModel& model,
                     std::span<const TokenizedSentence> corpus,
                     const EmbedConfig& cfg, std::uint64_t seed) {
  if (!model.has_output()) throw ConfigError("model has no output vectors");
  const auto sentences = to_ids(model.vocab(), corpus);
  const NegativeSampler sampler(model.vocab().counts());
  Rng rng(seed);
  const std::size_t dim = model.dim();
  std::vector<float> h(dim);
  std::vector<std::span<const float>> targets;
  double total = 0;
  std::uint64_t examples = 0;

  auto score = [&](WordId positive) {
    targets.clear();
    targets.push_back(model.output_row(positive));
    for (std::size_t k = 0; k < cfg.negatives; ++k) {
      const WordId neg = sampler.draw(rng);
      if (neg != positive) targets.push_back(model.output_row(neg));
    }
    total += static_cast<double>(sgns::loss<float>(h, targets));
    ++examples;
  };

  for (const auto& s : sentences) {
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    const auto win = static_cast<std::ptrdiff_t>(cfg.window);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - win);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + win);
      if (hi == lo) continue;
      if (cfg.mode == EmbedMode::kSkipGram) {
        const auto center = model.word_vector(s[i]);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          std::copy(center.begin(), center.end(), h.begin());
          score(s[j]);
        }
      } else {
        std::fill(h.begin(), h.end(), 0.0f);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const auto v = model.word_vector(s[j]);
          for (std::size_t c = 0; c < dim; ++c) h[c] += v[c];
        }
        const float inv = 1.0f / static_cast<float>(hi - lo);
        for (float& x : h) x *= inv;
        score(s[i]);
      }
    }
  }
  return examples ? total / static_cast<double>(examples) : 0.0;
}

// --- queries --------------------------------------------------------------

double cosine(std::span<const float> a, std::span<const float> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * b[i];
    aa += static_cast<double>(a[i]) * a[i];
    bb += static_cast<double>(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<ScoredWord> nearest_to(const EmbeddingModel& model,
                                   std::span<const float> query, std::size_t k,
                                   const std::string* exclude) {
  if (k < 1) throw ConfigError("k must be >= 1");
  const std::vector<float> matrix = model.composed_matrix();
  const std::size_t dim = model.dim();
  std::vector<ScoredWord> all;
  all.reserve(model.size());
  for (std::size_t r = 0; r < model.size(); ++r) {
    const std::string& w = model.vocab().word(static_cast<WordId>(r));
    if (exclude && w == *exclude) continue;
    all.push_back({w, cosine(query, {matrix.data() + r * dim, dim})});
  }
  auto better = [](const ScoredWord& a, const ScoredWord& b) {
    return a.score != b.score ? a.score > b.score : a.word < b.word;
  };
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                    all.end(), better);
  all.resize(n);
  return all;
}

std::vector<ScoredWord> nearest(const EmbeddingModel& model,
                                const std::string& word, std::size_t k) {
  const std::vector<float> q = model.vector(word);
  return nearest_to(model, q, k, &word);
}

// --- persistence ----------------------------------------------------------

void write_text(const EmbeddingModel& model, std::ostream& out) {
  const std::vector<float> matrix = model.composed_matrix();
  const std::size_t dim = model.dim();
  out << model.size() << ' ' << dim << '\n';
  for (std::size_t r = 0; r < model.size(); ++r) {
    out << model.vocab().word(static_cast<WordId>(r));
    for (std::size_t c = 0; c < dim; ++c) {
      out << ' ' << format_real(matrix[r * dim + c]);
    }
    out << '\n';
  }
}

void save_text(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_text(model, out);
  if (!out) throw DataError("write failed for " + path.string());
}

EmbeddingModel read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embedding file", 1);
  const auto header = split_tokens(line);
  std::optional<std::size_t> rows, dim;
  if (header.size() == 2) {
    rows = parse_number<std::size_t>(header[0]);
    dim = parse_number<std::size_t>(header[1]);
  }
  if (!rows || !dim || *dim == 0) {
    throw ParseError("header must be '<vocab_size> <dim>'", 1);
  }
  std::vector<std::string> words;
  std::vector<float> values;
  words.reserve(*rows);
  values.reserve(*rows * *dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_tokens(line);
    if (fields.empty()) continue;
    if (words.size() == *rows) {
      throw ParseError("more rows than the header declares (" +
                           std::to_string(*rows) + ")",
                       line_no);
    }
    if (fields.size() != *dim + 1) {
      throw ParseError("expected a word and " + std::to_string(*dim) +
                           " values, got " + std::to_string(fields.size() - 1),
                       line_no);
    }
    for (std::size_t c = 1; c < fields.size(); ++c) {
      auto v = parse_number<float>(fields[c]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError("bad value '" + fields[c] + "'", line_no);
      }
      values.push_back(*v);
    }
    words.push_back(fields[0]);
  }
  if (words.size() != *rows) {
    throw ParseError("header declares " + std::to_string(*rows) +
                         " rows but file has " + std::to_string(words.size()),
                     line_no);
  }
  std::vector<std::uint64_t> counts(words.size(), 0);
  Vocabulary vocab;
  try {
    vocab = Vocabulary::from_ordered(std::move(words), std::move(counts), 0);
  } catch (const DataError& e) {
    throw ParseError(e.what());
  }
  return EmbeddingModel(std::move(vocab), *dim, std::move(values));
}

EmbeddingModel load_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_text(in);
}

}  // namespace amsem
