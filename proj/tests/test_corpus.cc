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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "amsem/corpus.h"
#include "amsem/error.h"
#include "test_util.h"

namespace amsem {
namespace {

TEST(Vocabulary, OrderedByCountThenWord) {
  const std::vector<TokenizedSentence> corpus{{"b", "a", "c", "a"}, {"c", "d", "b", "a"}};
  const auto v = build_vocab(corpus, 1);
  EXPECT_EQ(v.words(), (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(v.counts(), (std::vector<std::uint64_t>{3, 2, 2, 1}));
  EXPECT_EQ(v.total_tokens(), 8u);
  EXPECT_EQ(v.id("c"), 2u);
  EXPECT_FALSE(v.id("zz").has_value());
}

TEST(Vocabulary, MinCountDropsRareWords) {
  const std::vector<TokenizedSentence> corpus{{"x", "x", "y"}};
  const auto v = build_vocab(corpus, 2);
  EXPECT_EQ(v.size(), 1u);
  EXPECT_EQ(v.total_tokens(), 3u);
  EXPECT_THROW(build_vocab(corpus, 0), ConfigError);
}

TEST(Vocabulary, CounterMergeEqualsSinglePass) {
  const std::vector<TokenizedSentence> corpus{{"a", "b"}, {"b", "c"}, {"c", "c"}};
  VocabCounter left, right;
  left.add(corpus[0]);
  right.add(corpus[1]);
  right.add(corpus[2]);
  left.merge(right);
  EXPECT_EQ(left.build(1), build_vocab(corpus, 1));
}

TEST(Vocabulary, SaveLoadRoundTrip) {
  test::TempDir dir;
  const std::vector<TokenizedSentence> corpus{{"ሰው", "ቤት", "ሰው"}};
  const auto v = build_vocab(corpus, 1);
  v.save(dir / "vocab.tsv");
  EXPECT_EQ(Vocabulary::load(dir / "vocab.tsv"), v);
}

TEST(CorpusStats, CountsSentencesTokensTypes) {
  const std::vector<TokenizedSentence> corpus{{"a", "b"}, {"a"}};
  EXPECT_EQ(corpus_stats(corpus), (CorpusStats{2, 3, 2}));
}

// Largest-remainder oracle written out with exact rationals over 1e6.
std::array<std::size_t, 3> reference_sizes(std::size_t n, std::array<double, 3> r) {
  std::array<std::size_t, 3> base{};
  std::array<double, 3> rem{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * static_cast<double>(n);
    base[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    rem[i] = exact - static_cast<double>(base[i]);
    assigned += base[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b] + 1e-12; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++base[order[k % 3]];
  return base;
}

TEST(Split, SizesFollowLargestRemainder) {
  EXPECT_EQ(split_sizes(30, {0.8, 0.1, 0.1}), (std::array<std::size_t, 3>{24, 3, 3}));
  EXPECT_EQ(split_sizes(10, {0.8, 0.1, 0.1}), (std::array<std::size_t, 3>{8, 1, 1}));
  EXPECT_EQ(split_sizes(7, {0.8, 0.1, 0.1}), (std::array<std::size_t, 3>{5, 1, 1}));
  EXPECT_EQ(split_sizes(1, {0.8, 0.1, 0.1}), (std::array<std::size_t, 3>{1, 0, 0}));
  for (std::size_t n = 1; n < 200; ++n) {
    for (const auto& r : {std::array<double, 3>{0.8, 0.1, 0.1}, std::array<double, 3>{0.5, 0.25, 0.25},
                          std::array<double, 3>{0.6, 0.2, 0.2}, std::array<double, 3>{1.0 / 3, 1.0 / 3, 1.0 / 3}}) {
      const auto s = split_sizes(n, r);
      EXPECT_EQ(s[0] + s[1] + s[2], n);
      EXPECT_EQ(s, reference_sizes(n, r)) << "n=" << n;
    }
  }
}

TEST(Split, PartitionIsDisjointAndSeeded) {
  SplitSpec spec;
  const auto a = split_indices(101, spec);
  const auto b = split_indices(101, spec);
  EXPECT_EQ(a, b);
  std::set<std::size_t> all;
  for (const auto& part : a) all.insert(part.begin(), part.end());
  EXPECT_EQ(all.size(), 101u);
  spec.seed = 43;
  EXPECT_NE(split_indices(101, spec), a);
}

TEST(Split, RejectsBadRatiosAndEmptyInput) {
  SplitSpec spec;
  spec.ratios = {0.8, 0.1, 0.2};
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.ratios = {1.1, -0.05, -0.05};
  EXPECT_THROW(spec.validate(), ConfigError);
  EXPECT_THROW(split_indices(0, SplitSpec{}), ConfigError);
}

TEST(Split, DatasetKeepsItems) {
  std::vector<int> items(20);
  std::iota(items.begin(), items.end(), 0);
  const auto parts = split_dataset<int>(items, SplitSpec{});
  EXPECT_EQ(parts.train.size(), 16u);
  EXPECT_EQ(parts.dev.size(), 2u);
  EXPECT_EQ(parts.test.size(), 2u);
}

TEST(CorpusIo, RawModeNormalizesAndSegments) {
  test::TempDir dir;
  test::write_file(dir / "raw.txt", "ሠው መጣ። ልጁ ሄደ!\n\nፀሐይ ወጣች\n");
  const auto corpus = read_corpus(dir / "raw.txt", CorpusMode::kRaw, &default_table());
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus[0], (TokenizedSentence{"ሰው", "መጣ", "።"}));
  EXPECT_EQ(corpus[2], (TokenizedSentence{"ጸሀይ", "ወጣች"}));
}

TEST(CorpusIo, TokenizedRoundTrip) {
  test::TempDir dir;
  const std::vector<TokenizedSentence> corpus{{"a", "b"}, {"ሰው"}};
  write_corpus(dir / "c.txt", corpus);
  EXPECT_EQ(read_corpus(dir / "c.txt", CorpusMode::kTokenized, nullptr), corpus);
  EXPECT_THROW(read_corpus(dir / "missing.txt", CorpusMode::kTokenized, nullptr), DataError);
}

}  // namespace
}  // namespace amsem
