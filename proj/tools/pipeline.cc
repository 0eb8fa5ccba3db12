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

#include "pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "amsem/corpus.h"
#include "amsem/doc_classifier.h"
#include "amsem/ethiopic_text.h"
#include "amsem/graph_embeddings.h"
#include "amsem/random.h"
#include "amsem/sequence_tagger.h"
#include "amsem/thesaurus.h"

namespace amsem::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every accepted key with its default. Optional keys default to null.
Json default_config() {
  const HolingConfig holing;
  const WalkConfig walk;
  const LogRegConfig logreg;
  return Json{
      {"corpus", nullptr},
      {"out_dir", "pipeline_out"},
      {"raw", true},
      {"seed", 42},
      {"workers", 1},
      {"split_ratios", nullptr},
      {"vocab_min_count", 1},
      {"dt_window", holing.window},
      {"dt_positional", holing.positional},
      {"dt_min_count", holing.min_word_feature_count},
      {"dt_features_per_word", holing.features_per_word},
      {"dt_max_words_per_feature", holing.max_words_per_feature},
      {"dt_max_neighbors", holing.max_neighbors},
      {"dt_significance", to_string(holing.significance)},
      {"dt_weighted_overlap", holing.weighted_overlap},
      {"graph_top_k", 20},
      {"walks_per_node", walk.walks_per_node},
      {"walk_length", walk.walk_length},
      {"walk_window", walk.window},
      {"walk_dim", walk.dim},
      {"walk_epochs", walk.epochs},
      {"walk_negatives", walk.negatives},
      {"walk_lr", walk.initial_lr},
      {"walk_weighted", walk.weighted_transitions},
      {"tag_train", nullptr},
      {"tag_test", nullptr},
      {"tag_epochs", 10},
      {"classify_train", nullptr},
      {"classify_test", nullptr},
      {"classify_raw", false},
      {"classify_l2", logreg.l2},
      {"classify_epochs", logreg.epochs},
      {"classify_lr", logreg.lr},
      {"classify_batch", logreg.batch_size},
  };
}

Json resolve_config(const Json& user, const PipelineOverrides& ov) {
  if (!user.is_object()) throw ConfigError("pipeline config must be a JSON object");
  Json cfg = default_config();
  std::vector<std::string> unknown;
  for (const auto& [key, value] : user.items()) {
    if (!cfg.contains(key)) {
      unknown.push_back(key);
      continue;
    }
    const Json& def = cfg[key];
    const bool ok = value.is_null() || def.is_null() ||
                    (def.is_boolean() && value.is_boolean()) ||
                    (def.is_string() && value.is_string()) ||
                    (def.is_number_unsigned() && value.is_number_unsigned()) ||
                    (def.is_number_integer() && value.is_number_integer() &&
                     value.get<std::int64_t>() >= 0) ||
                    (def.is_number_float() && value.is_number());
    if (!ok) throw ConfigError("config key '" + key + "' has the wrong type");
    cfg[key] = value;
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config keys: " + list);
  }
  if (!cfg["corpus"].is_string()) throw ConfigError("config needs a 'corpus' path");
  for (const char* key : {"tag_train", "tag_test", "classify_train", "classify_test"}) {
    if (!cfg[key].is_null() && !cfg[key].is_string()) {
      throw ConfigError(std::string("config key '") + key + "' must be a path");
    }
  }
  if (!cfg["split_ratios"].is_null()) {
    const Json& r = cfg["split_ratios"];
    if (!r.is_array() || r.size() != 3 ||
        !std::all_of(r.begin(), r.end(), [](const Json& v) { return v.is_number(); })) {
      throw ConfigError("split_ratios must be an array of three numbers");
    }
  }
  if (ov.seed) cfg["seed"] = *ov.seed;
  if (ov.workers) cfg["workers"] = *ov.workers;
  return cfg;
}

class Runner {
 public:
  Runner(Json cfg, fs::path base, std::ostream& log)
      : cfg_(std::move(cfg)), base_(std::move(base)), log_(log) {
    out_dir_ = path("out_dir");
    seed_ = cfg_["seed"].get<std::uint64_t>();
    workers_ = cfg_["workers"].get<std::size_t>();
  }

  PipelineResult run();

 private:
  fs::path path(const char* key) const {
    fs::path p(cfg_[key].get<std::string>());
    return p.is_absolute() ? p : base_ / p;
  }
  template <class T>
  T get(const char* key) const {
    return cfg_[key].get<T>();
  }
  bool has(const char* key) const { return !cfg_[key].is_null(); }

  void stage(const std::string& name, const std::function<void()>& fn);
  void artifact(const std::string& relative);
  void record_input(const char* key);
  void write_json(const std::string& relative, const Json& j);

  void run_tagging();
  void run_classification();

  Json cfg_;
  fs::path base_;
  fs::path out_dir_;
  std::ostream& log_;
  std::uint64_t seed_ = 0;
  std::size_t workers_ = 1;
  PipelineResult result_;
  Json inputs_ = Json::array();
};

void Runner::stage(const std::string& name, const std::function<void()>& fn) {
  log_ << "pipeline: " << name << '\n';
  try {
    fn();
  } catch (const ConfigError& e) {
    throw ConfigError("pipeline stage '" + name + "' failed: " + e.what());
  } catch (const std::exception& e) {
    throw DataError("pipeline stage '" + name + "' failed: " + e.what());
  }
  result_.stages.push_back(name);
}

void Runner::artifact(const std::string& relative) {
  const fs::path p = out_dir_ / relative;
  result_.artifacts.push_back({relative, fs::file_size(p), file_checksum(p)});
}

void Runner::record_input(const char* key) {
  // Hash before building the Json: a throw inside its initializer list leaks.
  const std::string checksum = file_checksum(path(key));
  inputs_.push_back(Json{{"key", key},
                         {"path", cfg_[key].get<std::string>()},
                         {"checksum", checksum}});
}

void Runner::write_json(const std::string& relative, const Json& j) {
  std::ofstream out(out_dir_ / relative, std::ios::binary);
  if (!out) throw DataError("cannot write " + (out_dir_ / relative).string());
  out << j.dump(2) << '\n';
}

PipelineResult Runner::run() {
  fs::create_directories(out_dir_);
  std::vector<TokenizedSentence> sentences;
  const bool raw = get<bool>("raw");

  if (raw) {
    std::vector<std::string> lines;
    stage("normalize", [&] {
      record_input("corpus");
      std::ifstream in(path("corpus"), std::ios::binary);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(normalize(line, default_table()));
      }
    });
    stage("segment", [&] {
      for (const auto& line : lines) {
        for (auto& s : split_sentences(line, nullptr)) sentences.push_back(std::move(s));
      }
      write_corpus(out_dir_ / "sentences.txt", sentences);
      artifact("sentences.txt");
    });
  }

  if (has("split_ratios")) {
    stage("split", [&] {
      if (!raw) sentences = read_corpus(path("corpus"), CorpusMode::kTokenized, nullptr);
      const auto& r = cfg_["split_ratios"];
      SplitSpec spec;
      spec.ratios = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>()};
      spec.seed = seed_;
      spec.validate();
      const auto parts = split_dataset<TokenizedSentence>(sentences, spec);
      write_corpus(out_dir_ / "train.txt", parts.train);
      write_corpus(out_dir_ / "dev.txt", parts.dev);
      write_corpus(out_dir_ / "test.txt", parts.test);
      artifact("train.txt");
      artifact("dev.txt");
      artifact("test.txt");
    });
  }

  stage("vocab", [&] {
    if (!raw && sentences.empty()) {
      record_input("corpus");
      sentences = read_corpus(path("corpus"), CorpusMode::kTokenized, nullptr);
    }
    build_vocab(sentences, get<std::uint64_t>("vocab_min_count")).save(out_dir_ / "vocab.tsv");
    artifact("vocab.tsv");
  });

  ThesaurusModel dt;
  stage("dt", [&] {
    HolingConfig h;
    h.window = get<std::size_t>("dt_window");
    h.positional = get<bool>("dt_positional");
    h.min_word_feature_count = get<std::uint64_t>("dt_min_count");
    h.features_per_word = get<std::size_t>("dt_features_per_word");
    h.max_words_per_feature = get<std::size_t>("dt_max_words_per_feature");
    h.max_neighbors = get<std::size_t>("dt_max_neighbors");
    h.significance = parse_significance(get<std::string>("dt_significance"));
    h.weighted_overlap = get<bool>("dt_weighted_overlap");
    h.validate();
    dt = build_dt(sentences, h);
    dt.save_neighbors(out_dir_ / "dt.tsv");
    artifact("dt.tsv");
  });

  WeightedGraph graph;
  stage("graph", [&] {
    graph = dt_to_graph(dt, get<std::size_t>("graph_top_k"));
    graph.save(out_dir_ / "graph.tsv");
    artifact("graph.tsv");
  });

  WalkConfig walk;
  walk.walks_per_node = get<std::size_t>("walks_per_node");
  walk.walk_length = get<std::size_t>("walk_length");
  walk.window = get<std::size_t>("walk_window");
  walk.dim = get<std::size_t>("walk_dim");
  walk.epochs = get<std::size_t>("walk_epochs");
  walk.negatives = get<std::size_t>("walk_negatives");
  walk.initial_lr = get<double>("walk_lr");
  walk.weighted_transitions = get<bool>("walk_weighted");
  walk.seed = seed_;
  walk.workers = workers_;

  stage("deepwalk", [&] {
    walk.validate();
    save_text(deepwalk(graph, walk), out_dir_ / "deepwalk.vec");
    artifact("deepwalk.vec");
  });
  stage("role2vec", [&] {
    walk.validate();
    save_text(role2vec(graph, walk), out_dir_ / "role2vec.vec");
    artifact("role2vec.vec");
  });

  if (has("tag_train")) stage("tag", [&] { run_tagging(); });
  if (has("classify_train")) stage("classify", [&] { run_classification(); });

  std::ostringstream canonical;
  canonical << cfg_.dump();
  result_.config_hash = hex64(fnv1a64(canonical.str()));
  result_.seed = seed_;
  result_.out_dir = out_dir_;

  Json artifacts = Json::array();
  for (const auto& a : result_.artifacts) {
    artifacts.push_back(Json{{"path", a.path}, {"bytes", a.bytes}, {"checksum", a.checksum}});
  }
  const Json manifest{{"config_hash", result_.config_hash},
                      {"seed", seed_},
                      {"workers", workers_},
                      {"stages", result_.stages},
                      {"inputs", inputs_},
                      {"artifacts", artifacts}};
  write_json("manifest.json", manifest);
  return result_;
}

void Runner::run_tagging() {
  record_input("tag_train");
  const auto train = read_conll(path("tag_train"));
  TaggerTrainConfig tc;
  tc.epochs = get<std::size_t>("tag_epochs");
  tc.seed = seed_;
  auto model = train_tagger(train, tc, handcrafted_features);
  model.metadata = {{"features", "handcrafted"}};
  model.save(out_dir_ / "tagger.model");
  artifact("tagger.model");
  if (!has("tag_test")) return;
  record_input("tag_test");
  const auto gold = read_conll(path("tag_test"));
  std::vector<TaggedSequence> pred;
  for (const auto& s : gold) pred.push_back({s.tokens, viterbi(model, s.tokens, handcrafted_features)});
  const auto tok = evaluate_tokens(std::span<const TaggedSequence>(pred),
                                   std::span<const TaggedSequence>(gold));
  write_json("tag_report.json",
             Json{{"learner", "averaged structured perceptron"},
                  {"tokens", tok.tokens},
                  {"accuracy", tok.accuracy},
                  {"macro_f1", tok.macro.f1},
                  {"micro_f1", tok.micro.f1}});
  artifact("tag_report.json");
}

void Runner::run_classification() {
  record_input("classify_train");
  const bool raw = get<bool>("classify_raw");
  const auto docs = read_labeled_tsv(path("classify_train"), raw);
  if (docs.empty()) throw DataError("no training documents");
  std::vector<std::vector<std::string>> tokens;
  std::vector<std::string> labels;
  for (const auto& d : docs) {
    tokens.push_back(d.tokens);
    labels.push_back(d.label);
  }
  const auto tfidf = TfidfModel::fit(tokens);
  std::vector<SparseVector> x;
  for (const auto& t : tokens) x.push_back(tfidf.transform(t));
  LogRegConfig lc;
  lc.l2 = get<double>("classify_l2");
  lc.epochs = get<std::size_t>("classify_epochs");
  lc.lr = get<double>("classify_lr");
  lc.batch_size = get<std::size_t>("classify_batch");
  lc.seed = seed_;
  const auto model = train_logreg(x, labels, tfidf.size(), lc);
  tfidf.save(out_dir_ / "classifier.tfidf");
  model.save(out_dir_ / "classifier.logreg");
  artifact("classifier.tfidf");
  artifact("classifier.logreg");
  if (!has("classify_test")) return;
  record_input("classify_test");
  const auto test = read_labeled_tsv(path("classify_test"), raw);
  std::vector<std::string> pred, gold;
  for (const auto& d : test) {
    pred.push_back(model.predict(tfidf.transform(d.tokens)));
    gold.push_back(d.label);
  }
  Json report{{"learner", "tfidf+logreg"}};
  for (const Averaging a : {Averaging::kMacro, Averaging::kWeighted}) {
    const auto r = evaluate_classification(pred, gold, a);
    report[std::string(to_string(a))] =
        Json{{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
  }
  Json baselines = Json::object();
  for (const auto s : {BaselineStrategy::kStratified, BaselineStrategy::kUniform,
                       BaselineStrategy::kMostFrequent}) {
    const auto bp = baseline(s, labels, gold.size(), seed_);
    const auto r = evaluate_classification(bp, gold, Averaging::kMacro);
    baselines[std::string(to_string(s))] =
        Json{{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
  }
  report["baselines_macro"] = baselines;
  write_json("classify_report.json", report);
  artifact("classify_report.json");
}

}  // namespace

std::string file_checksum(const fs::path& path) { return hex64(fnv1a64(read_file(path))); }

PipelineResult run_pipeline(const fs::path& config_path, const PipelineOverrides& overrides,
                            std::ostream& log) {
  const std::string text = read_file(config_path);
  Json user;
  try {
    user = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid pipeline config " + config_path.string() + ": " + e.what());
  }
  Json cfg = resolve_config(user, overrides);
  Runner runner(std::move(cfg), config_path.parent_path(), log);
  return runner.run();
}

}  // namespace amsem::cli
