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

#include "cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "amsem/corpus.h"
#include "amsem/doc_classifier.h"
#include "amsem/error.h"
#include "amsem/ethiopic_text.h"
#include "amsem/graph_embeddings.h"
#include "amsem/sequence_tagger.h"
#include "amsem/text_io.h"
#include "amsem/thesaurus.h"
#include "pipeline.h"

namespace amsem::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  bool seed_set = false;
  bool workers_set = false;
};

// Destination for data output: a file when a path is given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw DataError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void for_each_line(const std::string& path, const std::function<void(std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) fn(chomp(line));
}

const NormalizationTable& load_table(const std::string& path,
                                     std::optional<NormalizationTable>& holder) {
  if (path.empty()) return default_table();
  holder = NormalizationTable::load(path);
  return *holder;
}

std::vector<TokenizedSentence> load_corpus(const std::string& path, bool raw) {
  return read_corpus(path, raw ? CorpusMode::kRaw : CorpusMode::kTokenized,
                     raw ? &default_table() : nullptr);
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json prf_json(double p, double r, double f) {
  return Json{{"precision", p}, {"recall", r}, {"f1", f}};
}

// --- text ------------------------------------------------------------------

void add_text_commands(CLI::App& app, std::function<void()>& action, std::ostream& out) {
  struct Opts {
    std::string in, out, table;
    bool normalize = false;
  };
  auto o = std::make_shared<Opts>();

  auto* norm = app.add_subcommand("normalize", "Fold homophone Fidel variants line by line");
  norm->add_option("--in", o->in, "Input text file")->required();
  norm->add_option("--out", o->out, "Output file (default: stdout)");
  norm->add_option("--table", o->table, "Normalization table TSV (default: built-in)");
  norm->callback([&action, &out, o] {
    action = [&out, o] {
      std::optional<NormalizationTable> holder;
      const auto& table = load_table(o->table, holder);
      Sink sink(o->out, out);
      for_each_line(o->in, [&](std::string_view line) {
        *sink << normalize(line, table) << '\n';
      });
    };
  });

  auto* tok = app.add_subcommand("tokenize", "Split each line into tokens");
  tok->add_option("--in", o->in, "Input text file")->required();
  tok->add_option("--out", o->out, "Output file (default: stdout)");
  tok->add_flag("--normalize", o->normalize, "Normalize before tokenizing");
  tok->add_option("--table", o->table, "Normalization table TSV (default: built-in)");
  tok->callback([&action, &out, o] {
    action = [&out, o] {
      std::optional<NormalizationTable> holder;
      const auto& table = load_table(o->table, holder);
      Sink sink(o->out, out);
      for_each_line(o->in, [&](std::string_view line) {
        const std::string text = o->normalize ? normalize(line, table) : std::string(line);
        bool first = true;
        for (const auto& t : tokenize(text)) {
          *sink << (first ? "" : " ") << t.surface;
          first = false;
        }
        *sink << '\n';
      });
    };
  });

  auto* seg = app.add_subcommand("segment", "Write one tokenized sentence per line");
  seg->add_option("--in", o->in, "Input text file")->required();
  seg->add_option("--out", o->out, "Output file (default: stdout)");
  seg->add_flag("--normalize", o->normalize, "Normalize before segmenting");
  seg->add_option("--table", o->table, "Normalization table TSV (default: built-in)");
  seg->callback([&action, &out, o] {
    action = [&out, o] {
      std::optional<NormalizationTable> holder;
      const NormalizationTable* table =
          o->normalize ? &load_table(o->table, holder) : nullptr;
      Sink sink(o->out, out);
      for_each_line(o->in, [&](std::string_view line) {
        for (const auto& s : split_sentences(line, table)) {
          for (std::size_t i = 0; i < s.size(); ++i) *sink << (i ? " " : "") << s[i];
          *sink << '\n';
        }
      });
    };
  });
}

// --- corpus ----------------------------------------------------------------

void add_corpus_commands(CLI::App& app, std::function<void()>& action, std::ostream& out,
                         const Globals& g) {
  struct Opts {
    std::string corpus, out_dir;
    bool raw = false;
    std::vector<double> ratios{0.8, 0.1, 0.1};
  };
  auto o = std::make_shared<Opts>();

  auto* stats = app.add_subcommand("stats", "Sentence, token and type counts");
  stats->add_option("--corpus", o->corpus, "Corpus file")->required();
  stats->add_flag("--raw", o->raw, "Corpus is raw text (normalize and segment)");
  stats->callback([&action, &out, o] {
    action = [&out, o] {
      const auto s = corpus_stats(load_corpus(o->corpus, o->raw));
      print_json(out, Json{{"sentences", s.sentence_count},
                           {"tokens", s.token_count},
                           {"types", s.type_count}});
    };
  });

  auto* split = app.add_subcommand("split", "Seeded train/dev/test split of a corpus");
  split->add_option("--corpus", o->corpus, "Corpus file")->required();
  split->add_option("--out-dir", o->out_dir, "Directory for train.txt, dev.txt, test.txt")
      ->required();
  split->add_option("--ratios", o->ratios, "Train, dev and test ratios")
      ->expected(3)
      ->delimiter(',');
  split->add_flag("--raw", o->raw, "Corpus is raw text (normalize and segment)");
  split->callback([&action, &out, &g, o] {
    action = [&out, &g, o] {
      const auto corpus = load_corpus(o->corpus, o->raw);
      SplitSpec spec;
      spec.ratios = {o->ratios[0], o->ratios[1], o->ratios[2]};
      spec.seed = g.seed;
      spec.validate();
      const auto parts = split_dataset<TokenizedSentence>(corpus, spec);
      fs::create_directories(o->out_dir);
      const fs::path dir(o->out_dir);
      write_corpus(dir / "train.txt", parts.train);
      write_corpus(dir / "dev.txt", parts.dev);
      write_corpus(dir / "test.txt", parts.test);
      print_json(out, Json{{"train", parts.train.size()},
                           {"dev", parts.dev.size()},
                           {"test", parts.test.size()}});
    };
  });
}

// --- thesaurus ---------------------------------------------------------------

void add_dt_commands(CLI::App& app, std::function<void()>& action, std::ostream& out) {
  struct Opts {
    std::string corpus, out, salient, model, word, significance = "lmi";
    bool raw = false;
    bool bag_of_words = false;
    HolingConfig cfg;
    std::size_t k = 10;
  };
  auto o = std::make_shared<Opts>();
  auto* dt = app.add_subcommand("dt", "Distributional thesaurus");
  dt->require_subcommand(1);

  auto* build = dt->add_subcommand("build", "Build a thesaurus from a corpus");
  build->add_option("--corpus", o->corpus, "Corpus file")->required();
  build->add_option("--out", o->out, "Neighbor TSV output")->required();
  build->add_option("--salient", o->salient, "Optional salient-feature TSV output");
  build->add_flag("--raw", o->raw, "Corpus is raw text (normalize and segment)");
  build->add_option("--window", o->cfg.window, "Context window");
  build->add_flag("--bag-of-words", o->bag_of_words, "Drop positions from context features");
  build->add_option("--min-count", o->cfg.min_word_feature_count,
                    "Minimum word-feature count");
  build->add_option("--features-per-word", o->cfg.features_per_word,
                    "Salient features kept per word");
  build->add_option("--max-words-per-feature", o->cfg.max_words_per_feature,
                    "Drop features shared by more words");
  build->add_option("--max-neighbors", o->cfg.max_neighbors,
                    "Neighbors stored per word (0 = all)");
  build->add_option("--significance", o->significance, "lmi, pmi or freq");
  build->add_flag("--weighted", o->cfg.weighted_overlap, "Rank by weighted overlap");
  build->callback([&action, &out, o] {
    action = [&out, o] {
      HolingConfig cfg = o->cfg;
      cfg.positional = !o->bag_of_words;
      cfg.significance = parse_significance(o->significance);
      cfg.validate();
      const auto model = build_dt(load_corpus(o->corpus, o->raw), cfg);
      model.save_neighbors(o->out);
      if (!o->salient.empty()) model.save_salient(o->salient);
      print_json(out, Json{{"words", model.size()}});
    };
  });

  auto* query = dt->add_subcommand("query", "Most similar words from a thesaurus");
  query->add_option("--model", o->model, "Neighbor TSV")->required();
  query->add_option("--word", o->word, "Query word")->required();
  query->add_option("--k", o->k, "Number of neighbors");
  query->callback([&action, &out, o] {
    action = [&out, o] {
      const auto model = ThesaurusModel::load(o->model);
      if (!model.contains(o->word)) throw NotFoundError("word not in thesaurus: " + o->word);
      for (const auto& n : similar(model, o->word, o->k)) {
        out << n.word << '\t' << n.overlap << '\n';
      }
    };
  });
}

// --- embeddings --------------------------------------------------------------

void add_embed_commands(CLI::App& app, std::function<void()>& action, std::ostream& out,
                        const Globals& g) {
  struct Opts {
    std::string corpus, out, preset = "word2vec", mode, model, word;
    bool raw = false;
    std::optional<std::size_t> dim, window, negatives, epochs, ngram_len;
    std::optional<std::uint64_t> min_count;
    std::optional<double> lr, subsample;
    std::optional<std::uint32_t> buckets;
    bool subword = false;
    bool no_subword = false;
    std::size_t k = 10;
  };
  auto o = std::make_shared<Opts>();
  auto* embed = app.add_subcommand("embed", "Dense word embeddings");
  embed->require_subcommand(1);

  auto* tr = embed->add_subcommand("train", "Train word vectors");
  tr->add_option("--corpus", o->corpus, "Corpus file")->required();
  tr->add_option("--out", o->out, "word2vec text output")->required();
  tr->add_option("--preset", o->preset, "word2vec or fasttext")
      ->check(CLI::IsMember({"word2vec", "fasttext"}));
  tr->add_flag("--raw", o->raw, "Corpus is raw text (normalize and segment)");
  tr->add_option("--mode", o->mode, "skipgram or cbow");
  tr->add_option("--dim", o->dim, "Vector size");
  tr->add_option("--window", o->window, "Context window");
  tr->add_option("--negatives", o->negatives, "Negative samples");
  tr->add_option("--epochs", o->epochs, "Training epochs");
  tr->add_option("--lr", o->lr, "Initial learning rate");
  tr->add_option("--min-count", o->min_count, "Minimum word count");
  tr->add_option("--subsample", o->subsample, "Subsampling threshold (0 disables)");
  tr->add_flag("--subword", o->subword, "Enable character n-gram buckets");
  tr->add_flag("--no-subword", o->no_subword, "Disable character n-gram buckets");
  tr->add_option("--ngram", o->ngram_len, "Character n-gram length");
  tr->add_option("--buckets", o->buckets, "Hash bucket count");
  tr->callback([&action, &out, &g, o] {
    action = [&out, &g, o] {
      EmbedConfig cfg = o->preset == "fasttext" ? EmbedConfig::fasttext()
                                                : EmbedConfig::word2vec();
      if (!o->mode.empty()) cfg.mode = parse_embed_mode(o->mode);
      if (o->dim) cfg.dim = *o->dim;
      if (o->window) cfg.window = *o->window;
      if (o->negatives) cfg.negatives = *o->negatives;
      if (o->epochs) cfg.epochs = *o->epochs;
      if (o->lr) cfg.initial_lr = *o->lr;
      if (o->min_count) cfg.min_count = *o->min_count;
      if (o->subsample) cfg.subsample_t = *o->subsample;
      if (o->subword && !cfg.subword) cfg.subword = SubwordConfig{};
      if (o->no_subword) cfg.subword.reset();
      if (cfg.subword && o->ngram_len) cfg.subword->ngram_len = *o->ngram_len;
      if (cfg.subword && o->buckets) cfg.subword->bucket_count = *o->buckets;
      cfg.seed = g.seed;
      cfg.workers = g.workers;
      cfg.validate();
      TrainStats stats;
      const auto model = train(load_corpus(o->corpus, o->raw), cfg, &stats);
      save_text(model, o->out);
      Json losses = Json::array();
      for (double l : stats.epoch_loss) losses.push_back(l);
      print_json(out, Json{{"words", model.size()}, {"dim", model.dim()},
                           {"epoch_loss", losses}});
    };
  });

  auto* nn = embed->add_subcommand("nearest", "Nearest words by cosine");
  nn->add_option("--model", o->model, "word2vec text vectors")->required();
  nn->add_option("--word", o->word, "Query word")->required();
  nn->add_option("--k", o->k, "Number of neighbors");
  nn->callback([&action, &out, o] {
    action = [&out, o] {
      const auto model = load_text(o->model);
      for (const auto& s : nearest(model, o->word, o->k)) {
        out << s.word << '\t' << format_real(s.score) << '\n';
      }
    };
  });
}

// --- graph -------------------------------------------------------------------

void add_graph_commands(CLI::App& app, std::function<void()>& action, std::ostream& out,
                        const Globals& g) {
  struct Opts {
    std::string dt, graph, out;
    std::size_t top_k = 20;
    WalkConfig walk;
  };
  auto o = std::make_shared<Opts>();
  auto* graph = app.add_subcommand("graph", "Graph embeddings over the thesaurus graph");
  graph->require_subcommand(1);

  auto* build = graph->add_subcommand("build", "Convert a thesaurus into a weighted graph");
  build->add_option("--dt", o->dt, "Neighbor TSV")->required();
  build->add_option("--top-k", o->top_k, "Neighbors linked per word");
  build->add_option("--out", o->out, "Edge-list TSV output")->required();
  build->callback([&action, &out, o] {
    action = [&out, o] {
      const auto graph = dt_to_graph(ThesaurusModel::load(o->dt), o->top_k);
      graph.save(o->out);
      print_json(out, Json{{"nodes", graph.size()}, {"edges", graph.num_edges()}});
    };
  });

  auto add_walk_options = [o](CLI::App* cmd) {
    cmd->add_option("--graph", o->graph, "Edge-list TSV")->required();
    cmd->add_option("--out", o->out, "word2vec text output")->required();
    cmd->add_option("--walks", o->walk.walks_per_node, "Walks per node");
    cmd->add_option("--length", o->walk.walk_length, "Walk length");
    cmd->add_option("--window", o->walk.window, "Skip-gram window");
    cmd->add_option("--dim", o->walk.dim, "Vector size");
    cmd->add_option("--epochs", o->walk.epochs, "Training epochs");
    cmd->add_option("--negatives", o->walk.negatives, "Negative samples");
    cmd->add_option("--lr", o->walk.initial_lr, "Initial learning rate");
    cmd->add_flag("--weighted", o->walk.weighted_transitions,
                  "Transition probability proportional to edge weight");
  };
  auto embed_graph = [&out, &g, o](bool roles) {
    WalkConfig cfg = o->walk;
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    cfg.validate();
    const auto graph = WeightedGraph::load(o->graph);
    const auto model = roles ? role2vec(graph, cfg) : deepwalk(graph, cfg);
    save_text(model, o->out);
    print_json(out, Json{{"nodes", model.size()}, {"dim", model.dim()}});
  };

  auto* dw = graph->add_subcommand("deepwalk", "Skip-gram over uniform random walks");
  add_walk_options(dw);
  dw->callback([&action, embed_graph] { action = [embed_graph] { embed_graph(false); }; });

  auto* rv = graph->add_subcommand("role2vec", "Skip-gram over structural-role walks");
  add_walk_options(rv);
  rv->callback([&action, embed_graph] { action = [embed_graph] { embed_graph(true); }; });
}

// --- tagging -----------------------------------------------------------------

FeatureFn tagger_features(const TaggerModel& model) {
  auto get = [&](const char* key) -> std::string {
    auto it = model.metadata.find(key);
    return it == model.metadata.end() ? std::string() : it->second;
  };
  const std::string embeddings = get("embeddings");
  if (embeddings.empty()) return handcrafted_features;
  const auto k = parse_number<std::size_t>(get("clusters"));
  const auto seed = parse_number<std::uint64_t>(get("cluster_seed"));
  if (!k || !seed) throw DataError("tagger model has incomplete embedding settings");
  auto vectors = std::make_shared<const EmbeddingModel>(load_text(embeddings));
  auto clusters = std::make_shared<const EmbeddingClusters>(
      EmbeddingClusters::fit(std::move(vectors), *k, *seed));
  return make_feature_fn(std::move(clusters));
}

void add_tag_commands(CLI::App& app, std::function<void()>& action, std::ostream& out,
                      const Globals& g) {
  struct Opts {
    std::string train, out, embeddings, model, test, pred;
    std::size_t epochs = 10;
    std::size_t clusters = 50;
    bool no_average = false;
    bool spans = false;
  };
  auto o = std::make_shared<Opts>();
  auto* tag = app.add_subcommand("tag", "Sequence tagging (POS, NER)");
  tag->require_subcommand(1);

  auto* tr = tag->add_subcommand("train", "Train an averaged structured perceptron");
  tr->add_option("--train", o->train, "CoNLL training data")->required();
  tr->add_option("--out", o->out, "Model output")->required();
  tr->add_option("--epochs", o->epochs, "Training epochs");
  tr->add_option("--embeddings", o->embeddings,
                 "word2vec text vectors for cluster features");
  tr->add_option("--clusters", o->clusters, "k-means clusters over the embeddings");
  tr->add_flag("--no-average", o->no_average, "Keep the final instead of averaged weights");
  tr->callback([&action, &out, &g, o] {
    action = [&out, &g, o] {
      const auto data = read_conll(o->train);
      TaggerTrainConfig cfg;
      cfg.epochs = o->epochs;
      cfg.seed = g.seed;
      cfg.average = !o->no_average;
      std::map<std::string, std::string> meta{{"features", "handcrafted"}};
      FeatureFn features = handcrafted_features;
      if (!o->embeddings.empty()) {
        meta = {{"features", "handcrafted+clusters"},
                {"embeddings", fs::absolute(o->embeddings).string()},
                {"clusters", std::to_string(o->clusters)},
                {"cluster_seed", std::to_string(g.seed)}};
        TaggerModel probe;
        probe.metadata = meta;
        features = tagger_features(probe);
      }
      auto model = train_tagger(data, cfg, features);
      model.metadata = meta;
      model.save(o->out);
      print_json(out, Json{{"sequences", data.size()},
                           {"tags", model.num_tags()},
                           {"features", model.num_features()}});
    };
  });

  auto* ev = tag->add_subcommand("eval", "Token and span metrics on CoNLL data");
  ev->add_option("--model", o->model, "Tagger model")->required();
  ev->add_option("--test", o->test, "CoNLL test data")->required();
  ev->add_option("--pred", o->pred, "Write predictions as CoNLL");
  ev->add_flag("--spans", o->spans, "Also report BIO span metrics");
  ev->callback([&action, &out, o] {
    action = [&out, o] {
      const auto model = TaggerModel::load(o->model);
      const auto features = tagger_features(model);
      const auto gold = read_conll(o->test);
      std::vector<TaggedSequence> pred;
      pred.reserve(gold.size());
      for (const auto& s : gold) pred.push_back({s.tokens, viterbi(model, s.tokens, features)});
      if (!o->pred.empty()) write_conll(o->pred, pred);
      const auto tok = evaluate_tokens(std::span<const TaggedSequence>(pred),
                                       std::span<const TaggedSequence>(gold));
      Json per_tag = Json::object();
      for (const auto& [t, m] : tok.per_tag) {
        per_tag[t] = prf_json(m.precision, m.recall, m.f1);
        per_tag[t]["support"] = m.support;
      }
      Json report{{"tokens", tok.tokens},
                  {"accuracy", tok.accuracy},
                  {"macro", prf_json(tok.macro.precision, tok.macro.recall, tok.macro.f1)},
                  {"micro", prf_json(tok.micro.precision, tok.micro.recall, tok.micro.f1)},
                  {"per_tag", per_tag}};
      if (o->spans) {
        const auto sp = evaluate_spans(std::span<const TaggedSequence>(pred),
                                       std::span<const TaggedSequence>(gold));
        Json per_class = Json::object();
        for (const auto& [c, m] : sp.per_class) per_class[c] = prf_json(m.precision, m.recall, m.f1);
        report["spans"] = Json{
            {"micro", prf_json(sp.micro.precision, sp.micro.recall, sp.micro.f1)},
            {"undefined", sp.undefined},
            {"repaired_predicted", sp.repaired_predicted},
            {"repaired_gold", sp.repaired_gold},
            {"per_class", per_class}};
      }
      auto it = model.metadata.find("features");
      report["model"] = Json{{"learner", "averaged structured perceptron"},
                             {"features", it == model.metadata.end() ? "handcrafted"
                                                                      : it->second}};
      print_json(out, report);
    };
  });
}

// --- classification ----------------------------------------------------------

Json report_json(const ClassificationReport& r, Averaging a) {
  Json per = Json::object();
  for (const auto& [c, m] : r.per_class) {
    per[c] = prf_json(m.precision, m.recall, m.f1);
    per[c]["support"] = m.support;
  }
  return Json{{"averaging", to_string(a)}, {"precision", r.precision},
              {"recall", r.recall},        {"f1", r.f1},
              {"accuracy", r.accuracy},    {"per_class", per}};
}

std::vector<std::string> labels_of(std::span<const LabeledDocument> docs) {
  std::vector<std::string> out;
  for (const auto& d : docs) out.push_back(d.label);
  return out;
}

void add_classify_commands(CLI::App& app, std::function<void()>& action, std::ostream& out,
                           const Globals& g) {
  struct Opts {
    std::string train, test, model, averaging = "macro", strategy = "most_frequent";
    bool raw = false;
    LogRegConfig cfg;
  };
  auto o = std::make_shared<Opts>();
  auto* cls = app.add_subcommand("classify", "TF-IDF document classification");
  cls->require_subcommand(1);

  auto* tr = cls->add_subcommand("train", "Fit TF-IDF and logistic regression");
  tr->add_option("--train", o->train, "label<TAB>text training data")->required();
  tr->add_option("--model", o->model,
                 "Output prefix; writes <prefix>.tfidf and <prefix>.logreg")
      ->required();
  tr->add_flag("--raw", o->raw, "Normalize and tokenize the text");
  tr->add_option("--l2", o->cfg.l2, "L2 penalty");
  tr->add_option("--epochs", o->cfg.epochs, "SGD epochs");
  tr->add_option("--lr", o->cfg.lr, "Learning rate");
  tr->add_option("--batch", o->cfg.batch_size, "Minibatch size (0 = full batch)");
  tr->callback([&action, &out, &g, o] {
    action = [&out, &g, o] {
      const auto docs = read_labeled_tsv(o->train, o->raw);
      if (docs.empty()) throw DataError("no training documents in " + o->train);
      std::vector<std::vector<std::string>> tokens;
      for (const auto& d : docs) tokens.push_back(d.tokens);
      const auto tfidf = TfidfModel::fit(tokens);
      std::vector<SparseVector> x;
      for (const auto& t : tokens) x.push_back(tfidf.transform(t));
      LogRegConfig cfg = o->cfg;
      cfg.seed = g.seed;
      LogRegStats stats;
      const auto model = train_logreg(x, labels_of(docs), tfidf.size(), cfg, &stats);
      tfidf.save(o->model + ".tfidf");
      model.save(o->model + ".logreg");
      print_json(out, Json{{"documents", docs.size()},
                           {"terms", tfidf.size()},
                           {"classes", model.classes()},
                           {"final_objective", stats.epoch_objective.back()}});
    };
  });

  auto* ev = cls->add_subcommand("eval", "Evaluate a trained classifier");
  ev->add_option("--model", o->model, "Model prefix")->required();
  ev->add_option("--test", o->test, "label<TAB>text test data")->required();
  ev->add_flag("--raw", o->raw, "Normalize and tokenize the text");
  ev->add_option("--averaging", o->averaging, "macro or weighted");
  ev->callback([&action, &out, o] {
    action = [&out, o] {
      const Averaging avg = parse_averaging(o->averaging);
      const auto tfidf = TfidfModel::load(o->model + ".tfidf");
      const auto model = LinearClassifier::load(o->model + ".logreg");
      const auto docs = read_labeled_tsv(o->test, o->raw);
      std::vector<std::string> pred;
      for (const auto& d : docs) pred.push_back(model.predict(tfidf.transform(d.tokens)));
      print_json(out, report_json(evaluate_classification(pred, labels_of(docs), avg), avg));
    };
  });

  auto* bl = cls->add_subcommand("baseline", "Dummy baselines");
  bl->add_option("--train", o->train, "label<TAB>text training data")->required();
  bl->add_option("--test", o->test, "label<TAB>text test data")->required();
  bl->add_option("--strategy", o->strategy, "most_frequent, stratified or uniform");
  bl->add_option("--averaging", o->averaging, "macro or weighted");
  bl->callback([&action, &out, &g, o] {
    action = [&out, &g, o] {
      const Averaging avg = parse_averaging(o->averaging);
      const BaselineStrategy strategy = parse_baseline(o->strategy);
      const auto train_labels = labels_of(read_labeled_tsv(o->train));
      const auto gold = labels_of(read_labeled_tsv(o->test));
      const auto pred = baseline(strategy, train_labels, gold.size(), g.seed);
      Json r = report_json(evaluate_classification(pred, gold, avg), avg);
      r["strategy"] = to_string(strategy);
      print_json(out, r);
    };
  });
}

void add_pipeline_command(CLI::App& app, std::function<void()>& action, std::ostream& out,
                          std::ostream& err, const Globals& g) {
  auto config = std::make_shared<std::string>();
  auto* p = app.add_subcommand("pipeline", "Run the end-to-end pipeline from a JSON config");
  p->add_option("--config", *config, "Pipeline JSON config")->required();
  p->callback([&action, &out, &err, &g, config] {
    action = [&out, &err, &g, config] {
      PipelineOverrides ov;
      if (g.seed_set) ov.seed = g.seed;
      if (g.workers_set) ov.workers = g.workers;
      const auto result = run_pipeline(*config, ov, err);
      out << (result.out_dir / "manifest.json").string() << '\n';
    };
  });
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributional semantics toolkit for Amharic text", "amsem"};
  app.fallthrough();
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for every stochastic step");
  app.add_option("--workers", g.workers, "Worker threads (1 = deterministic)")
      ->check(CLI::PositiveNumber);

  std::function<void()> action;
  add_text_commands(app, action, out);
  add_corpus_commands(app, action, out, g);
  add_dt_commands(app, action, out);
  add_embed_commands(app, action, out, g);
  add_graph_commands(app, action, out, g);
  add_tag_commands(app, action, out, g);
  add_classify_commands(app, action, out, g);
  add_pipeline_command(app, action, out, err, g);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    g.seed_set = app.count("--seed") > 0;
    g.workers_set = app.count("--workers") > 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    err << leaf->help();
    return 1;
  }

  try {
    if (action) action();
    return 0;
  } catch (const ConfigError& e) {
    err << "amsem: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "amsem: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace amsem::cli
