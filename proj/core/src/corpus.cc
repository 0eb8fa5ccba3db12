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

#include "amsem/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "amsem/error.h"
#include "amsem/random.h"

namespace amsem {

Vocabulary Vocabulary::from_counts(
    std::vector<std::pair<std::string, std::uint64_t>> counts,
    std::uint64_t total_tokens) {
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary v;
  v.total_tokens_ = total_tokens;
  v.words_.reserve(counts.size());
  v.counts_.reserve(counts.size());
  for (auto& [word, count] : counts) {
    const auto id = static_cast<WordId>(v.words_.size());
    if (!v.index_.emplace(word, id).second) {
      throw DataError("duplicate vocabulary entry '" + word + "'");
    }
    v.words_.push_back(std::move(word));
    v.counts_.push_back(count);
  }
  return v;
}

Vocabulary Vocabulary::from_ordered(std::vector<std::string> words,
                                    std::vector<std::uint64_t> counts,
                                    std::uint64_t total_tokens) {
  if (words.size() != counts.size()) {
    throw ConfigError("vocabulary: words and counts differ in length");
  }
  Vocabulary v;
  v.total_tokens_ = total_tokens;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!v.index_.emplace(words[i], static_cast<WordId>(i)).second) {
      throw DataError("duplicate vocabulary entry '" + words[i] + "'");
    }
  }
  v.words_ = std::move(words);
  v.counts_ = std::move(counts);
  return v;
}

std::optional<WordId> Vocabulary::id(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << counts_[i] << '\n';
  }
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::uint64_t total = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError("expected word<TAB>count", line_no);
    }
    std::uint64_t c = 0;
    try {
      std::size_t used = 0;
      c = std::stoull(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1) throw std::invalid_argument("tail");
    } catch (const std::exception&) {
      throw ParseError("bad count", line_no);
    }
    counts.emplace_back(line.substr(0, tab), c);
    total += c;
  }
  return from_counts(std::move(counts), total);
}

void VocabCounter::add(std::span<const std::string> sentence) {
  for (const std::string& w : sentence) ++counts_[w];
  total_ += sentence.size();
}

void VocabCounter::merge(const VocabCounter& other) {
  for (const auto& [w, c] : other.counts_) counts_[w] += c;
  total_ += other.total_;
}

Vocabulary VocabCounter::build(std::uint64_t min_count) const {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [w, c] : counts_) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  return Vocabulary::from_counts(std::move(kept), total_);
}

Vocabulary build_vocab(std::span<const TokenizedSentence> corpus,
                       std::uint64_t min_count) {
  VocabCounter counter;
  for (const auto& s : corpus) counter.add(s);
  return counter.build(min_count);
}

CorpusStats corpus_stats(std::span<const TokenizedSentence> corpus) {
  CorpusStats stats;
  std::unordered_set<std::string_view> types;
  for (const auto& s : corpus) {
    ++stats.sentence_count;
    stats.token_count += s.size();
    for (const auto& w : s) types.insert(w);
  }
  stats.type_count = types.size();
  return stats;
}

void SplitSpec::validate() const {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0) || !std::isfinite(r)) {
      throw ConfigError("split ratios must be finite and non-negative");
    }
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1, got " + std::to_string(sum));
  }
}

std::array<std::size_t, 3> split_sizes(std::size_t n,
                                       const std::array<double, 3>& ratios) {
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    const double exact = ratios[p] * static_cast<double>(n);
    // Absorb representation error such as 0.7 * 10 = 7.000000000000001.
    const double whole = std::floor(exact + 1e-9);
    sizes[p] = static_cast<std::size_t>(whole);
    remainder[p] = std::max(0.0, exact - whole);
    assigned += sizes[p];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3, ++assigned) {
    ++sizes[order[k]];
  }
  return sizes;
}

std::array<std::vector<std::size_t>, 3> split_indices(std::size_t n,
                                                      const SplitSpec& spec) {
  spec.validate();
  if (n == 0) throw ConfigError("cannot split an empty dataset");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(spec.seed);
  rng.shuffle(std::span<std::size_t>(perm));
  const auto sizes = split_sizes(n, spec.ratios);
  std::array<std::vector<std::size_t>, 3> parts;
  auto it = perm.begin();
  for (std::size_t p = 0; p < 3; ++p) {
    parts[p].assign(it, it + static_cast<std::ptrdiff_t>(sizes[p]));
    it += static_cast<std::ptrdiff_t>(sizes[p]);
  }
  return parts;
}

TokenizedSentence split_tokens(std::string_view line) {
  TokenizedSentence out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == '\n')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '\n') {
      ++i;
    }
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

void for_each_sentence(const std::filesystem::path& path, CorpusMode mode,
                       const NormalizationTable* table,
                       const std::function<void(TokenizedSentence&&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (mode == CorpusMode::kTokenized) {
      TokenizedSentence s = split_tokens(line);
      if (!s.empty()) fn(std::move(s));
    } else {
      for (auto& s : split_sentences(line, table)) fn(std::move(s));
    }
  }
}

std::vector<TokenizedSentence> read_corpus(const std::filesystem::path& path,
                                           CorpusMode mode,
                                           const NormalizationTable* table) {
  std::vector<TokenizedSentence> out;
  for_each_sentence(path, mode, table,
                    [&](TokenizedSentence&& s) { out.push_back(std::move(s)); });
  return out;
}

void write_corpus(const std::filesystem::path& path,
                  std::span<const TokenizedSentence> corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out << ' ';
      out << s[i];
    }
    out << '\n';
  }
}

}  // namespace amsem
