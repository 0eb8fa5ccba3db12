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

#include <random>
#include <string>
#include <vector>

#include "amsem/corpus.h"
#include "amsem/dense_embeddings.h"
#include "amsem/ethiopic_text.h"
#include "amsem/sequence_tagger.h"
#include "amsem/thesaurus.h"
#include "benchmark/benchmark.h"

namespace amsem {
namespace {

std::string ethiopic_text(std::size_t words, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    const std::size_t len = 1 + rng() % 5;
    for (std::size_t k = 0; k < len; ++k) {
      const char32_t cp = 0x1200 + static_cast<char32_t>(rng() % 0x158);
      text += static_cast<char>(0xE0 | (cp >> 12));
      text += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      text += static_cast<char>(0x80 | (cp & 0x3F));
    }
    text += i % 12 == 11 ? " ። " : " ";
  }
  return text;
}

std::vector<TokenizedSentence> zipf_corpus(std::size_t sentences, std::size_t vocab) {
  std::mt19937_64 rng(7);
  std::vector<double> weights;
  for (std::size_t r = 1; r <= vocab; ++r) weights.push_back(1.0 / static_cast<double>(r));
  std::discrete_distribution<std::size_t> word(weights.begin(), weights.end());
  std::vector<TokenizedSentence> corpus(sentences);
  for (auto& s : corpus) {
    for (int i = 0; i < 12; ++i) s.push_back("w" + std::to_string(word(rng)));
  }
  return corpus;
}

void BM_NormalizeTokenize(benchmark::State& state) {
  const std::string text = ethiopic_text(static_cast<std::size_t>(state.range(0)), 1);
  const auto& table = default_table();
  for (auto _ : state) {
    auto tokens = tokenize(normalize(text, table));
    benchmark::DoNotOptimize(tokens);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_NormalizeTokenize)->Arg(1 << 10)->Arg(1 << 14);

void BM_BuildThesaurus(benchmark::State& state) {
  const auto corpus = zipf_corpus(static_cast<std::size_t>(state.range(0)), 2000);
  HolingConfig cfg;
  for (auto _ : state) {
    auto model = build_dt(corpus, cfg);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_BuildThesaurus)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SkipGramEpoch(benchmark::State& state) {
  const auto corpus = zipf_corpus(2000, 2000);
  EmbedConfig cfg;
  cfg.dim = static_cast<std::size_t>(state.range(0));
  cfg.epochs = 1;
  cfg.min_count = 1;
  for (auto _ : state) {
    auto model = train(corpus, cfg);
    benchmark::DoNotOptimize(model);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 2000 * 12));
}
BENCHMARK(BM_SkipGramEpoch)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ViterbiDecode(benchmark::State& state) {
  const std::size_t tags = static_cast<std::size_t>(state.range(0)), n = 40;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> e(n * tags), t((tags + 1) * (tags + 1));
  for (double& v : e) v = normal(rng);
  for (double& v : t) v = normal(rng);
  for (auto _ : state) {
    auto path = viterbi_decode(e, n, tags, t);
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_ViterbiDecode)->Arg(4)->Arg(17)->Arg(40);

}  // namespace
}  // namespace amsem

BENCHMARK_MAIN();
