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

#include <random>
#include <sstream>

#include "amsem/error.h"
#include "amsem/sequence_tagger.h"
#include "oracles.h"
#include "tagging_data.h"
#include "test_util.h"

namespace amsem {
namespace {

using Strings = std::vector<std::string>;

TEST(Features, HandcraftedExample) {
  const Strings tokens{"ሀገር"};
  EXPECT_EQ(handcrafted_features(tokens, 0),
            (Strings{"w=ሀገር", "BOS", "EOS", "p1=ሀ", "p2=ሀገ", "p3=ሀገር", "s1=ር", "s2=ገር",
                     "s3=ሀገር", "bias"}));
}

TEST(Features, ContextShortWordsAndNumbers) {
  const Strings tokens{"ሀ", "2020", "ቤት"};
  EXPECT_EQ(handcrafted_features(tokens, 0),
            (Strings{"w=ሀ", "BOS", "w+1=2020", "p1=ሀ", "s1=ሀ", "bias"}));
  const auto mid = handcrafted_features(tokens, 1);
  EXPECT_NE(std::find(mid.begin(), mid.end(), "isnum"), mid.end());
  EXPECT_EQ(mid[1], "w-1=ሀ");
  EXPECT_EQ(mid[2], "w+1=ቤት");
  EXPECT_EQ(handcrafted_features(tokens, 1), mid);
  EXPECT_THROW(handcrafted_features(tokens, 3), ConfigError);
  EXPECT_TRUE(is_numeric("፲፪"));
  EXPECT_FALSE(is_numeric("12ሀ"));
  EXPECT_FALSE(is_numeric(""));
}

TEST(Viterbi, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t tags = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 8;
    std::vector<double> e(n * tags), t((tags + 1) * (tags + 1));
    for (double& v : e) v = normal(rng);
    for (double& v : t) v = normal(rng);
    const auto path = viterbi_decode(e, n, tags, t);
    const auto [best, best_path] = oracle::enumerate_best_path(e, n, tags, t);
    EXPECT_NEAR(path_score(e, n, tags, t, path), best, 1e-9) << "trial " << trial;
    EXPECT_EQ(path, best_path);
  }
}

TEST(Viterbi, TransitionsCanForceAlternation) {
  // Emissions mildly prefer tag 0 everywhere; staying costs more than it gains.
  const std::size_t n = 5, tags = 2;
  std::vector<double> e(n * tags, 0.0), t(9, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * tags] = 0.5;
  t[0 * 3 + 0] = -2;
  t[1 * 3 + 1] = -2;
  const auto path = viterbi_decode(e, n, tags, t);
  EXPECT_EQ(path, (std::vector<std::size_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(path, oracle::enumerate_best_path(e, n, tags, t).second);
}

TEST(Viterbi, TiesPreferLowerTagAndEmptyInputFails) {
  std::vector<double> e(4, 0.0), t(9, 0.0);
  EXPECT_EQ(viterbi_decode(e, 2, 2, t), (std::vector<std::size_t>{0, 0}));
  EXPECT_THROW(viterbi_decode({}, 0, 2, t), ConfigError);
  TaggerModel m({"A"});
  EXPECT_THROW(viterbi(m, Strings{}, handcrafted_features), ConfigError);
}

TEST(Perceptron, AveragedWeightsAreMeanOfSnapshots) {
  const std::vector<TaggedSequence> data{
      {{"ሀ", "ለ"}, {"A", "B"}}, {{"ለ", "ሀ"}, {"B", "A"}}, {{"መ"}, {"B"}}};
  TaggerTrainConfig cfg;
  cfg.epochs = 1;
  std::vector<std::vector<double>> w_snaps, t_snaps;
  cfg.on_step = [&](const TaggerModel& m) {
    w_snaps.emplace_back(m.weights().begin(), m.weights().end());
    t_snaps.emplace_back(m.transitions().begin(), m.transitions().end());
  };
  const auto model = train_tagger(data, cfg, handcrafted_features);
  ASSERT_EQ(w_snaps.size(), 3u);
  EXPECT_TRUE(model.averaged);
  for (std::size_t i = 0; i < model.weights().size(); ++i) {
    const double mean = (w_snaps[0][i] + w_snaps[1][i] + w_snaps[2][i]) / 3;
    EXPECT_NEAR(model.weights()[i], mean, 1e-12);
  }
  for (std::size_t i = 0; i < model.transitions().size(); ++i) {
    const double mean = (t_snaps[0][i] + t_snaps[1][i] + t_snaps[2][i]) / 3;
    EXPECT_NEAR(model.transitions()[i], mean, 1e-12);
  }
  // The toy run must actually have changed the weights on each visit.
  EXPECT_NE(w_snaps[0], w_snaps[1]);
}

TEST(Perceptron, FitsSingleSequence) {
  const std::vector<TaggedSequence> data{{{"ሰው", "ወደ", "ቤት", "ሄደ"}, {"N", "P", "N", "V"}}};
  TaggerTrainConfig cfg;
  cfg.epochs = 5;
  const auto model = train_tagger(data, cfg, handcrafted_features);
  EXPECT_EQ(viterbi(model, data[0].tokens, handcrafted_features), data[0].labels);
}

TEST(Perceptron, DeterministicUnderSeed) {
  const auto data = test::suffix_corpus(50, 1);
  TaggerTrainConfig cfg;
  cfg.epochs = 3;
  EXPECT_EQ(train_tagger(data, cfg, handcrafted_features),
            train_tagger(data, cfg, handcrafted_features));
}

TEST(Perceptron, LearnsSuffixDeterminedTags) {
  const auto train = test::suffix_corpus(400, 2);
  const auto held_out = test::suffix_corpus(100, 3);
  TaggerTrainConfig cfg;
  const auto model = train_tagger(train, cfg, handcrafted_features);
  std::vector<TaggedSequence> pred;
  for (const auto& s : held_out) pred.push_back({s.tokens, viterbi(model, s.tokens, handcrafted_features)});
  const auto r = evaluate_tokens(std::span<const TaggedSequence>(pred),
                                 std::span<const TaggedSequence>(held_out));
  EXPECT_DOUBLE_EQ(r.macro.f1, 1.0);
}

TEST(Perceptron, RejectsUnknownTags) {
  const std::vector<TaggedSequence> data{{{"a", "b"}, {"X", "Q"}}};
  TaggerTrainConfig cfg;
  cfg.tagset = {"X", "Y"};
  try {
    train_tagger(data, cfg, handcrafted_features);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("Q"), std::string::npos);
  }
  cfg.tagset.clear();
  cfg.epochs = 0;
  EXPECT_THROW(train_tagger(data, cfg, handcrafted_features), ConfigError);
  EXPECT_THROW(train_tagger({}, TaggerTrainConfig{}, handcrafted_features), DataError);
}

TEST(TaggerModel, SaveLoadRoundTrip) {
  const auto data = test::suffix_corpus(30, 4);
  TaggerTrainConfig cfg;
  cfg.epochs = 2;
  auto model = train_tagger(data, cfg, handcrafted_features);
  model.metadata["features"] = "handcrafted";
  test::TempDir dir;
  model.save(dir / "m.txt");
  // Only nonzero weights are stored, so compare weights rather than feature lists.
  const auto loaded = TaggerModel::load(dir / "m.txt");
  EXPECT_EQ(loaded.tagset(), model.tagset());
  EXPECT_EQ(loaded.averaged, model.averaged);
  EXPECT_EQ(loaded.metadata, model.metadata);
  EXPECT_TRUE(std::equal(loaded.transitions().begin(), loaded.transitions().end(),
                         model.transitions().begin(), model.transitions().end()));
  for (std::uint32_t f = 0; f < model.num_features(); ++f) {
    for (const auto& tag : model.tagset()) {
      EXPECT_EQ(loaded.weight(model.feature_name(f), tag), model.weight(model.feature_name(f), tag));
    }
  }
  for (const auto& s : data) {
    EXPECT_EQ(viterbi(loaded, s.tokens, handcrafted_features),
              viterbi(model, s.tokens, handcrafted_features));
  }
  loaded.save(dir / "again.txt");
  EXPECT_EQ(test::read_file(dir / "again.txt"), test::read_file(dir / "m.txt"));
  test::write_file(dir / "bad.txt", "amsem-tagger\t1\ntags\tA\nfeat\tw=x\tZ\t1\n");
  EXPECT_THROW(TaggerModel::load(dir / "bad.txt"), ParseError);
}

TEST(Conll, ParseAndRoundTrip) {
  std::istringstream in("ሰው\tN\nሄደ\tV\n\n\nቤት\tN\n");
  const auto data = parse_conll(in);
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[0].labels, (Strings{"N", "V"}));
  test::TempDir dir;
  write_conll(dir / "x.conll", data);
  EXPECT_EQ(read_conll(dir / "x.conll"), data);
  std::istringstream bad("ok\tN\nlonely\n");
  try {
    parse_conll(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(TokenMetrics, HandCountedExample) {
  const auto r = evaluate_tokens(Strings{"A", "B", "B"}, Strings{"A", "A", "B"});
  EXPECT_DOUBLE_EQ(r.per_tag.at("A").precision, 1.0);
  EXPECT_DOUBLE_EQ(r.per_tag.at("A").recall, 0.5);
  EXPECT_DOUBLE_EQ(r.per_tag.at("B").precision, 0.5);
  EXPECT_DOUBLE_EQ(r.per_tag.at("B").recall, 1.0);
  EXPECT_NEAR(r.macro.f1, 2.0 / 3, 1e-12);
  EXPECT_NEAR(r.accuracy, 2.0 / 3, 1e-12);
  EXPECT_THROW(evaluate_tokens(Strings{"A"}, Strings{}), DataError);
}

TEST(TokenMetrics, PredictionOnlyTagsDoNotEnterMacro) {
  const auto r = evaluate_tokens(Strings{"A", "C"}, Strings{"A", "B"});
  EXPECT_NEAR(r.macro.recall, 0.5, 1e-12);
  EXPECT_EQ(r.per_tag.at("C").support, 0u);
}

TEST(Spans, DecodeAndRepair) {
  std::size_t repaired = 0;
  const auto spans = decode_bio(Strings{"B-PER", "I-PER", "O", "I-LOC", "B-ORG", "I-PER"}, &repaired);
  const std::vector<EntitySpan> want{{0, 2, "PER"}, {3, 4, "LOC"}, {4, 5, "ORG"}, {5, 6, "PER"}};
  EXPECT_EQ(spans, want);
  EXPECT_EQ(repaired, 2u);
  EXPECT_THROW(decode_bio(Strings{"PER"}), DataError);
}

TEST(Spans, BoundaryMismatchScoresZero) {
  const std::vector<Strings> gold{{"B-PER", "I-PER", "O"}};
  const std::vector<Strings> pred{{"B-PER", "O", "O"}};
  const auto r = evaluate_spans(pred, gold);
  EXPECT_EQ(r.micro.precision, 0.0);
  EXPECT_EQ(r.micro.recall, 0.0);
  EXPECT_EQ(r.micro.f1, 0.0);
}

TEST(Spans, PerfectAndEmpty) {
  const std::vector<Strings> gold{{"B-PER", "O", "B-LOC", "I-LOC"}};
  const auto r = evaluate_spans(gold, gold);
  EXPECT_EQ(r.micro.correct, 2u);
  EXPECT_DOUBLE_EQ(r.micro.f1, 1.0);
  const std::vector<Strings> none{{"O", "O"}};
  const auto e = evaluate_spans(none, none);
  EXPECT_TRUE(e.undefined);
  EXPECT_EQ(e.micro.f1, 0.0);
}

TEST(Spans, SwappingArgumentsSwapsPrecisionAndRecall) {
  std::mt19937_64 rng(5);
  const Strings labels{"O", "B-PER", "I-PER", "B-LOC", "I-LOC"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Strings> a(3), b(3);
    for (std::size_t s = 0; s < 3; ++s) {
      for (int i = 0; i < 6; ++i) {
        a[s].push_back(labels[rng() % labels.size()]);
        b[s].push_back(labels[rng() % labels.size()]);
      }
    }
    const auto ab = evaluate_spans(a, b);
    const auto ba = evaluate_spans(b, a);
    EXPECT_DOUBLE_EQ(ab.micro.precision, ba.micro.recall);
    EXPECT_DOUBLE_EQ(ab.micro.recall, ba.micro.precision);
    EXPECT_DOUBLE_EQ(ab.micro.f1, ba.micro.f1);
  }
}

TEST(Clusters, SeparatedBlobsGetDistinctClusters) {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> jitter(0.0f, 0.05f);
  Strings words;
  std::vector<float> rows;
  for (int i = 0; i < 20; ++i) {
    words.push_back("w" + std::to_string(i));
    const float center = i < 10 ? 5.0f : -5.0f;
    for (int d = 0; d < 4; ++d) rows.push_back(center + jitter(rng));
  }
  std::vector<std::uint64_t> counts(words.size(), 1);
  auto model = std::make_shared<const EmbeddingModel>(Vocabulary::from_ordered(words, counts, 20), 4, rows);
  const auto clusters = std::make_shared<const EmbeddingClusters>(EmbeddingClusters::fit(model, 2, 3));
  for (int i = 1; i < 20; ++i) {
    EXPECT_EQ(*clusters->cluster_of(words[i]) == *clusters->cluster_of(words[0]), i < 10) << i;
  }
  const Strings tokens{"w0", "unknown"};
  const auto f = embedding_features(tokens, 1, *clusters);
  EXPECT_EQ(f[0], "cl=UNK");
  EXPECT_EQ(f[2], "cl+1=EOS");
  const auto fn = make_feature_fn(clusters);
  EXPECT_EQ(fn(tokens, 0).size(), handcrafted_features(tokens, 0).size() + 3);
  EXPECT_THROW(EmbeddingClusters::fit(nullptr, 2, 1), ConfigError);
  EXPECT_THROW(EmbeddingClusters::fit(model, 21, 1), ConfigError);
}

}  // namespace
}  // namespace amsem
