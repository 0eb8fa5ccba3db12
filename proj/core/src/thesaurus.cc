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

#include "amsem/thesaurus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <utility>

#include "amsem/error.h"
#include "amsem/text_io.h"

namespace amsem {

std::string_view to_string(Significance s) {
  switch (s) {
    case Significance::kLmi: return "lmi";
    case Significance::kPmi: return "pmi";
    case Significance::kFrequency: return "freq";
  }
  return "lmi";
}

Significance parse_significance(std::string_view name) {
  if (name == "lmi") return Significance::kLmi;
  if (name == "pmi") return Significance::kPmi;
  if (name == "freq") return Significance::kFrequency;
  throw ConfigError("unknown significance measure '" + std::string(name) + "'");
}

void HolingConfig::validate() const {
  if (window < 1 || min_word_feature_count < 1 || features_per_word < 1 ||
      max_words_per_feature < 1) {
    throw ConfigError("holing config: window and thresholds must be >= 1");
  }
}

std::string context_feature(std::ptrdiff_t offset, std::string_view word,
                            bool positional) {
  if (!positional) return std::string(word);
  std::string f = offset > 0 ? "+" : "-";
  f += std::to_string(offset > 0 ? offset : -offset);
  f += '@';
  f += word;
  return f;
}

std::vector<WordFeature> extract_features(std::span<const std::string> sentence,
                                          const HolingConfig& cfg) {
  std::vector<WordFeature> out;
  const auto n = static_cast<std::ptrdiff_t>(sentence.size());
  const auto w = static_cast<std::ptrdiff_t>(cfg.window);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t d = -w; d <= w; ++d) {
      if (d == 0 || i + d < 0 || i + d >= n) continue;
      out.push_back({sentence[i],
                     context_feature(d, sentence[i + d], cfg.positional)});
    }
  }
  return out;
}

namespace {

void require_counts(std::uint64_t n_wf, std::uint64_t n_w, std::uint64_t n_f,
                    std::uint64_t n) {
  if (n_wf == 0 || n_w == 0 || n_f == 0 || n == 0) {
    throw ConfigError("significance: counts must be positive");
  }
}

}  // namespace

double lmi(std::uint64_t n_wf, std::uint64_t n_w, std::uint64_t n_f,
           std::uint64_t n) {
  require_counts(n_wf, n_w, n_f, n);
  const double wf = static_cast<double>(n_wf);
  return wf * std::log2((wf * static_cast<double>(n)) /
                        (static_cast<double>(n_w) * static_cast<double>(n_f)));
}

double pmi(std::uint64_t n_wf, std::uint64_t n_w, std::uint64_t n_f,
           std::uint64_t n) {
  require_counts(n_wf, n_w, n_f, n);
  const double wf = static_cast<double>(n_wf);
  return std::log2((wf * static_cast<double>(n)) /
                   (static_cast<double>(n_w) * static_cast<double>(n_f)));
}

double significance(Significance kind, std::uint64_t n_wf, std::uint64_t n_w,
                    std::uint64_t n_f, std::uint64_t n) {
  switch (kind) {
    case Significance::kLmi: return lmi(n_wf, n_w, n_f, n);
    case Significance::kPmi: return pmi(n_wf, n_w, n_f, n);
    case Significance::kFrequency:
      require_counts(n_wf, n_w, n_f, n);
      return static_cast<double>(n_wf);
  }
  return 0;
}

namespace {

std::uint64_t pair_key(std::uint32_t w, std::uint32_t f) {
  return (static_cast<std::uint64_t>(w) << 32) | f;
}

}  // namespace

CooccurrenceCounter::CooccurrenceCounter(HolingConfig cfg) : cfg_(cfg) {
  cfg_.validate();
}

std::uint32_t CooccurrenceCounter::intern_word(const std::string& w) {
  auto [it, inserted] =
      word_index_.emplace(w, static_cast<std::uint32_t>(words_.size()));
  if (inserted) {
    words_.push_back(w);
    word_marginal_.push_back(0);
  }
  return it->second;
}

std::uint32_t CooccurrenceCounter::intern_feature(const std::string& f) {
  auto [it, inserted] =
      feature_index_.emplace(f, static_cast<std::uint32_t>(features_.size()));
  if (inserted) {
    features_.push_back(f);
    feature_marginal_.push_back(0);
  }
  return it->second;
}

void CooccurrenceCounter::add_pair(std::uint32_t w, std::uint32_t f,
                                   std::uint64_t count) {
  pairs_[pair_key(w, f)] += count;
  word_marginal_[w] += count;
  feature_marginal_[f] += count;
  total_ += count;
}

void CooccurrenceCounter::add(std::span<const std::string> sentence) {
  ++sentences_;
  for (const auto& w : sentence) intern_word(w);
  for (auto& [word, feature] : extract_features(sentence, cfg_)) {
    add_pair(word_index_.at(word), intern_feature(feature), 1);
  }
}

void CooccurrenceCounter::merge(const CooccurrenceCounter& other) {
  if (other.cfg_.window != cfg_.window ||
      other.cfg_.positional != cfg_.positional) {
    throw ConfigError("cannot merge counters built with different holing");
  }
  for (const auto& w : other.words_) intern_word(w);
  for (const auto& [key, count] : other.pairs_) {
    const auto w = static_cast<std::uint32_t>(key >> 32);
    const auto f = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
    add_pair(intern_word(other.words_[w]), intern_feature(other.features_[f]),
             count);
  }
  sentences_ += other.sentences_;
}

std::uint64_t CooccurrenceCounter::pair_count(const std::string& word,
                                              const std::string& feature) const {
  auto w = word_index_.find(word);
  auto f = feature_index_.find(feature);
  if (w == word_index_.end() || f == feature_index_.end()) return 0;
  auto it = pairs_.find(pair_key(w->second, f->second));
  return it == pairs_.end() ? 0 : it->second;
}

std::uint64_t CooccurrenceCounter::word_count(const std::string& word) const {
  auto it = word_index_.find(word);
  return it == word_index_.end() ? 0 : word_marginal_[it->second];
}

std::uint64_t CooccurrenceCounter::feature_count(
    const std::string& feature) const {
  auto it = feature_index_.find(feature);
  return it == feature_index_.end() ? 0 : feature_marginal_[it->second];
}

// Turns counts into a ThesaurusModel. Ids are remapped to lexicographic
// order first so every tie-break below is independent of insertion order.
class ThesaurusBuilder {
 public:
  explicit ThesaurusBuilder(const CooccurrenceCounter& c) : c_(c) {}

  ThesaurusModel build() {
    const HolingConfig& cfg = c_.cfg_;
    if (c_.words_.empty()) throw DataError("cannot build a DT from an empty corpus");

    const std::size_t nw = c_.words_.size();
    const std::size_t nf = c_.features_.size();
    std::vector<std::uint32_t> word_rank = lexicographic_rank(c_.words_);
    std::vector<std::uint32_t> feature_rank = lexicographic_rank(c_.features_);

    // Pairs surviving the minimum count, per word (sorted ids).
    struct Pair {
      std::uint32_t feature;
      std::uint64_t count;
    };
    std::vector<std::vector<Pair>> kept(nw);
    std::vector<std::uint32_t> words_per_feature(nf, 0);
    for (const auto& [key, count] : c_.pairs_) {
      if (count < cfg.min_word_feature_count) continue;
      const auto w = static_cast<std::uint32_t>(key >> 32);
      const auto f = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
      kept[word_rank[w]].push_back({feature_rank[f], count});
      ++words_per_feature[feature_rank[f]];
    }

    std::vector<std::string> words(nw), features(nf);
    std::vector<std::uint64_t> n_w(nw), n_f(nf);
    for (std::size_t i = 0; i < nw; ++i) {
      words[word_rank[i]] = c_.words_[i];
      n_w[word_rank[i]] = c_.word_marginal_[i];
    }
    for (std::size_t i = 0; i < nf; ++i) {
      features[feature_rank[i]] = c_.features_[i];
      n_f[feature_rank[i]] = c_.feature_marginal_[i];
    }

    // Salient features per word.
    struct Scored {
      std::uint32_t feature;
      double score;
      std::uint64_t count;
    };
    std::vector<std::vector<Scored>> salient(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      auto& s = salient[w];
      for (const Pair& p : kept[w]) {
        if (words_per_feature[p.feature] > cfg.max_words_per_feature) continue;
        s.push_back({p.feature,
                     significance(cfg.significance, p.count, n_w[w],
                                  n_f[p.feature], c_.total_),
                     p.count});
      }
      std::sort(s.begin(), s.end(), [](const Scored& a, const Scored& b) {
        return a.score != b.score ? a.score > b.score : a.feature < b.feature;
      });
      if (s.size() > cfg.features_per_word) s.resize(cfg.features_per_word);
    }

    // Inverted index feature -> (word, score), then overlap per word.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> postings(nf);
    for (std::size_t w = 0; w < nw; ++w) {
      for (const Scored& s : salient[w]) {
        postings[s.feature].emplace_back(static_cast<std::uint32_t>(w), s.score);
      }
    }

    std::vector<ThesaurusModel::Entry> entries(nw);
    std::vector<std::uint64_t> overlap(nw, 0);
    std::vector<double> weight(nw, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t w = 0; w < nw; ++w) {
      touched.clear();
      for (const Scored& s : salient[w]) {
        for (const auto& [other, other_score] : postings[s.feature]) {
          if (other == w) continue;
          if (overlap[other]++ == 0) touched.push_back(other);
          weight[other] += std::min(s.score, other_score);
        }
      }
      auto& e = entries[w];
      e.word = words[w];
      e.salient.reserve(salient[w].size());
      for (const Scored& s : salient[w]) {
        e.salient.push_back({features[s.feature], s.score, s.count});
      }
      e.neighbors.reserve(touched.size());
      for (std::uint32_t o : touched) {
        e.neighbors.push_back(
            {words[o], overlap[o],
             cfg.weighted_overlap ? weight[o] : static_cast<double>(overlap[o])});
        overlap[o] = 0;
        weight[o] = 0;
      }
      std::sort(e.neighbors.begin(), e.neighbors.end(),
                [](const Neighbor& a, const Neighbor& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.word < b.word;
                });
      if (cfg.max_neighbors > 0 && e.neighbors.size() > cfg.max_neighbors) {
        e.neighbors.resize(cfg.max_neighbors);
      }
    }
    return ThesaurusModel(std::move(entries));
  }

 private:
  static std::vector<std::uint32_t> lexicographic_rank(
      const std::vector<std::string>& names) {
    std::vector<std::uint32_t> order(names.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
    std::vector<std::uint32_t> rank(names.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
  }

  const CooccurrenceCounter& c_;
};

ThesaurusModel::ThesaurusModel(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.word < b.word; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].word, i).second) {
      throw DataError("duplicate thesaurus entry '" + entries_[i].word + "'");
    }
  }
}

bool ThesaurusModel::contains(const std::string& word) const {
  return index_.contains(word);
}

const ThesaurusModel::Entry& ThesaurusModel::entry(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) {
    throw NotFoundError("word '" + word + "' is not in the thesaurus");
  }
  return entries_[it->second];
}

void ThesaurusModel::save_neighbors(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const Entry& e : entries_) {
    for (const Neighbor& n : e.neighbors) {
      out << e.word << '\t' << n.word << '\t' << n.overlap << '\n';
    }
  }
}

void ThesaurusModel::save_salient(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const Entry& e : entries_) {
    for (const SalientFeature& f : e.salient) {
      out << e.word << '\t' << f.feature << '\t' << format_real(f.score) << '\n';
    }
  }
}

ThesaurusModel ThesaurusModel::load(
    const std::filesystem::path& neighbors_path,
    const std::optional<std::filesystem::path>& salient_path) {
  std::map<std::string, Entry> by_word;
  auto entry_for = [&](std::string_view w) -> Entry& {
    auto [it, inserted] = by_word.try_emplace(std::string(w));
    if (inserted) it->second.word = it->first;
    return it->second;
  };

  auto read_tsv = [](const std::filesystem::path& p, auto&& on_row) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open " + p.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = chomp(line);
      if (view.empty()) continue;
      auto fields = split_fields(view, '\t');
      if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
        throw ParseError(p.filename().string() + ": expected 3 tab-separated fields",
                         line_no);
      }
      on_row(fields, line_no);
    }
  };

  read_tsv(neighbors_path, [&](const auto& f, std::size_t line_no) {
    auto overlap = parse_number<std::uint64_t>(f[2]);
    if (!overlap || *overlap == 0) throw ParseError("bad overlap count", line_no);
    entry_for(f[1]);
    entry_for(f[0]).neighbors.push_back(
        {std::string(f[1]), *overlap, static_cast<double>(*overlap)});
  });
  if (salient_path) {
    read_tsv(*salient_path, [&](const auto& f, std::size_t line_no) {
      auto score = parse_number<double>(f[2]);
      if (!score) throw ParseError("bad score", line_no);
      entry_for(f[0]).salient.push_back({std::string(f[1]), *score, 0});
    });
  }
  std::vector<Entry> entries;
  entries.reserve(by_word.size());
  for (auto& [w, e] : by_word) entries.push_back(std::move(e));
  return ThesaurusModel(std::move(entries));
}

ThesaurusModel build_dt(const CooccurrenceCounter& counts) {
  return ThesaurusBuilder(counts).build();
}

ThesaurusModel build_dt(std::span<const TokenizedSentence> corpus,
                        const HolingConfig& cfg) {
  CooccurrenceCounter counter(cfg);
  for (const auto& s : corpus) counter.add(s);
  return build_dt(counter);
}

std::vector<Neighbor> similar(const ThesaurusModel& model,
                              const std::string& word, std::size_t k) {
  if (k < 1) throw ConfigError("k must be >= 1");
  auto all = model.neighbors(word);
  const std::size_t n = std::min(k, all.size());
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace amsem
