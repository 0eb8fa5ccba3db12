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
#include <random>

#include "amsem/doc_classifier.h"
#include "amsem/error.h"
#include "checks.h"
#include "oracles.h"
#include "test_util.h"

namespace amsem {
namespace {

using Docs = std::vector<std::vector<std::string>>;
using Strings = std::vector<std::string>;

TEST(Tfidf, WorkedExample) {
  const Docs docs{{"a", "a", "b"}, {"a", "c"}};
  const auto m = TfidfModel::fit(docs);
  EXPECT_EQ(m.terms(), (Strings{"a", "b", "c"}));
  EXPECT_DOUBLE_EQ(m.idf("a"), 1.0);
  EXPECT_NEAR(m.idf("b"), std::log(1.5) + 1, 1e-15);
  EXPECT_NEAR(m.idf("b"), 1.405465, 1e-6);
  const auto v = m.transform(docs[0]);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(v[0].second, 0.8182, 5e-5);
  EXPECT_NEAR(v[1].second, 0.5750, 5e-5);
  EXPECT_NEAR(v[0].second, 2 / std::hypot(2.0, std::log(1.5) + 1), 1e-12);
}

TEST(Tfidf, DegenerateDocuments) {
  const auto m = TfidfModel::fit(Docs{{"x", "y"}});
  EXPECT_DOUBLE_EQ(m.idf("x"), 1.0);
  EXPECT_TRUE(m.transform(Strings{}).empty());
  EXPECT_TRUE(m.transform(Strings{"unseen"}).empty());
  EXPECT_THROW(TfidfModel::fit(Docs{}), DataError);
  EXPECT_THROW(TfidfModel::fit(Docs{{}, {}}), DataError);
}

TEST(Tfidf, MatchesBruteForceOnRandomCorpora) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto corpus = test::random_corpus(rng, 1 + rng() % 50, 2 + rng() % 15, 12);
    EXPECT_EQ(test::compare_tfidf(corpus, 1e-9), "") << "trial " << trial;
  }
}

TEST(Tfidf, UnitNormForInVocabularyDocs) {
  std::mt19937_64 rng(12);
  const auto corpus = test::random_corpus(rng, 30, 10, 10);
  const auto m = TfidfModel::fit(corpus);
  for (const auto& d : corpus) {
    double norm = 0;
    for (const auto& [c, v] : m.transform(d)) norm += v * v;
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  }
}

TEST(Tfidf, SaveLoadRoundTrip) {
  const auto m = TfidfModel::fit(Docs{{"ሰው", "ቤት"}, {"ሰው"}});
  test::TempDir dir;
  m.save(dir / "t.tsv");
  EXPECT_EQ(TfidfModel::load(dir / "t.tsv"), m);
}

std::vector<SparseVector> random_sparse(std::mt19937_64& rng, std::size_t n, std::uint32_t features) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SparseVector> x(n);
  for (auto& row : x) {
    for (std::uint32_t f = 0; f < features; ++f) {
      if (rng() % 2) row.emplace_back(f, normal(rng));
    }
  }
  return x;
}

TEST(LogReg, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal(0.0, 0.7);
  const std::size_t features = 4;
  int points = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t classes = 2 + trial % 2;
    const auto x = random_sparse(rng, 3, features);
    std::vector<std::size_t> y{0, 1, static_cast<std::size_t>(rng() % classes)};
    Strings names;
    for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
    LinearClassifier model(names, features);
    for (double& w : model.weights()) w = normal(rng);
    for (double& b : model.bias()) b = normal(rng);
    const double l2 = 0.1;
    std::vector<double> gw(model.weights().size()), gb(classes);
    logreg_objective(model, x, y, l2, gw, gb);
    // Parameter vector = [W, b].
    std::vector<double> params(model.weights().begin(), model.weights().end());
    params.insert(params.end(), model.bias().begin(), model.bias().end());
    auto f = [&](const std::vector<double>& p) {
      LinearClassifier m(names, features);
      std::copy(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(gw.size()), m.weights().begin());
      std::copy(p.begin() + static_cast<std::ptrdiff_t>(gw.size()), p.end(), m.bias().begin());
      return logreg_objective(m, x, y, l2);
    };
    std::vector<double> analytic = gw;
    analytic.insert(analytic.end(), gb.begin(), gb.end());
    for (std::size_t i = 0; i < params.size(); ++i, ++points) {
      EXPECT_LT(oracle::relative_error(analytic[i], oracle::central_difference(f, params, i)), 1e-4);
    }
  }
  EXPECT_GE(points, 100);
}

TEST(LogReg, SeparableBlobsReachPerfectTrainingAccuracy) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> jitter(0.0, 0.1);
  std::vector<SparseVector> x;
  Strings y;
  for (int i = 0; i < 60; ++i) {
    const bool pos = i % 2 == 0;
    x.push_back({{0, (pos ? 1.0 : -1.0) + jitter(rng)}, {1, jitter(rng)}});
    y.push_back(pos ? "pos" : "neg");
  }
  LogRegConfig cfg;
  cfg.epochs = 30;
  const auto model = train_logreg(x, y, 2, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(model.predict(x[i]), y[i]);
    const auto p = model.predict_proba(x[i]);
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-9);
  }
}

TEST(LogReg, FullBatchObjectiveIsNonIncreasing) {
  std::mt19937_64 rng(6);
  const auto x = random_sparse(rng, 40, 5);
  Strings y;
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back("c" + std::to_string(rng() % 3));
  LogRegConfig cfg;
  cfg.batch_size = 0;
  cfg.epochs = 40;
  cfg.lr = 0.2;
  cfg.l2 = 0.01;
  LogRegStats stats;
  train_logreg(x, y, 5, cfg, &stats);
  for (std::size_t e = 1; e < stats.epoch_objective.size(); ++e) {
    EXPECT_LE(stats.epoch_objective[e], stats.epoch_objective[e - 1] + 1e-12);
  }
}

TEST(LogReg, SingleClassIsAnError) {
  const std::vector<SparseVector> x{{{0, 1.0}}, {{0, 2.0}}};
  EXPECT_THROW(train_logreg(x, Strings{"a", "a"}, 1, LogRegConfig{}), DataError);
}

TEST(LogReg, SaveLoadRoundTrip) {
  std::mt19937_64 rng(8);
  const auto x = random_sparse(rng, 20, 3);
  Strings y;
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(i % 2 ? "a" : "b");
  const auto model = train_logreg(x, y, 3, LogRegConfig{});
  test::TempDir dir;
  model.save(dir / "m.txt");
  EXPECT_EQ(LinearClassifier::load(dir / "m.txt"), model);
}

Strings distribution_50_30_20() {
  Strings labels;
  labels.insert(labels.end(), 50, "neu");
  labels.insert(labels.end(), 30, "pos");
  labels.insert(labels.end(), 20, "neg");
  return labels;
}

TEST(Baselines, MostFrequentAnalyticScores) {
  const auto gold = distribution_50_30_20();
  const auto pred = baseline(BaselineStrategy::kMostFrequent, gold, gold.size(), 1);
  EXPECT_EQ(pred, Strings(gold.size(), "neu"));
  EXPECT_EQ(baseline(BaselineStrategy::kMostFrequent, gold, 10, 99), Strings(10, "neu"));
  const auto r = evaluate_classification(pred, gold, Averaging::kMacro);
  EXPECT_NEAR(r.precision, 1.0 / 6, 1e-12);
  EXPECT_NEAR(r.recall, 1.0 / 3, 1e-12);
  EXPECT_NEAR(r.f1, 2.0 / 9, 1e-12);
  EXPECT_EQ(r.per_class.at("pos").precision, 0.0);
}

TEST(Baselines, MostFrequentTiesAreLexicographic) {
  EXPECT_EQ(baseline(BaselineStrategy::kMostFrequent, Strings{"b", "a", "b", "a"}, 1, 0)[0], "a");
}

TEST(Baselines, UniformAndStratifiedFrequencies) {
  const auto train = distribution_50_30_20();
  const std::size_t draws = 300'000;
  const auto uniform = baseline(BaselineStrategy::kUniform, train, draws, 5);
  const auto stratified = baseline(BaselineStrategy::kStratified, train, draws, 5);
  for (const auto& [label, share] : std::vector<std::pair<std::string, double>>{
           {"neu", 0.5}, {"pos", 0.3}, {"neg", 0.2}}) {
    const double u = static_cast<double>(std::count(uniform.begin(), uniform.end(), label)) / draws;
    const double s = static_cast<double>(std::count(stratified.begin(), stratified.end(), label)) / draws;
    EXPECT_NEAR(u, 1.0 / 3, 0.005) << label;
    EXPECT_NEAR(s, share, 0.005) << label;
  }
  EXPECT_EQ(baseline(BaselineStrategy::kStratified, train, 50, 5),
            baseline(BaselineStrategy::kStratified, train, 50, 5));
  EXPECT_THROW(baseline(BaselineStrategy::kUniform, Strings{}, 3, 1), DataError);
}

TEST(Evaluate, PerfectAndWeighted) {
  const Strings gold{"a", "a", "a", "b"};
  const auto perfect = evaluate_classification(gold, gold);
  EXPECT_DOUBLE_EQ(perfect.f1, 1.0);
  const Strings pred{"a", "a", "b", "b"};
  const auto macro = evaluate_classification(pred, gold, Averaging::kMacro);
  const auto weighted = evaluate_classification(pred, gold, Averaging::kWeighted);
  // a: P=1 R=2/3; b: P=1/2 R=1.
  EXPECT_NEAR(macro.precision, 0.75, 1e-12);
  EXPECT_NEAR(weighted.precision, (3 * 1.0 + 1 * 0.5) / 4, 1e-12);
  EXPECT_NEAR(weighted.recall, (3 * (2.0 / 3) + 1) / 4, 1e-12);
  EXPECT_THROW(evaluate_classification(pred, Strings{"a"}), DataError);
}

TEST(Evaluate, InvariantUnderConsistentRelabeling) {
  std::mt19937_64 rng(3);
  const Strings names{"x", "y", "z"};
  const Strings renamed{"q", "b", "m"};
  for (int trial = 0; trial < 50; ++trial) {
    Strings pred, gold, pred2, gold2;
    for (int i = 0; i < 30; ++i) {
      const auto p = rng() % 3, g = rng() % 3;
      pred.push_back(names[p]);
      gold.push_back(names[g]);
      pred2.push_back(renamed[p]);
      gold2.push_back(renamed[g]);
    }
    const auto a = evaluate_classification(pred, gold);
    const auto b = evaluate_classification(pred2, gold2);
    EXPECT_NEAR(a.precision, b.precision, 1e-12);
    EXPECT_NEAR(a.recall, b.recall, 1e-12);
    EXPECT_NEAR(a.f1, b.f1, 1e-12);
  }
}

TEST(Dataset, ReadsLabelTabText) {
  test::TempDir dir;
  test::write_file(dir / "d.tsv", "pos\tሠው ደስ አለው።\nneg\t\n");
  const auto docs = read_labeled_tsv(dir / "d.tsv", true);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].tokens, (Strings{"ሰው", "ደስ", "አለው"}));
  EXPECT_TRUE(docs[1].tokens.empty());
  test::write_file(dir / "bad.tsv", "pos\tok\nno tab here\n");
  EXPECT_THROW(read_labeled_tsv(dir / "bad.tsv"), ParseError);
}

}  // namespace
}  // namespace amsem
