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

#include "amsem/graph_embeddings.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

#include "amsem/error.h"
#include "amsem/random.h"
#include "amsem/text_io.h"

namespace amsem {

WeightedGraph WeightedGraph::from_edges(std::vector<std::string> labels,
                                        std::span<const WeightedEdge> edges) {
  WeightedGraph g;
  g.labels_ = std::move(labels);
  for (std::size_t i = 0; i < g.labels_.size(); ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second) {
      throw ConfigError("duplicate node label '" + g.labels_[i] + "'");
    }
  }
  std::vector<std::map<NodeId, double>> adj(g.labels_.size());
  for (const WeightedEdge& e : edges) {
    if (e.a >= g.labels_.size() || e.b >= g.labels_.size()) {
      throw ConfigError("edge endpoint out of range");
    }
    if (e.a == e.b) throw ConfigError("self-loop on '" + g.labels_[e.a] + "'");
    if (!(e.weight > 0)) throw ConfigError("edge weights must be positive");
    for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
      auto [it, inserted] = adj[u].emplace(v, e.weight);
      if (!inserted) it->second = std::max(it->second, e.weight);
    }
  }
  g.adjacency_.resize(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const auto& [v, w] : adj[u]) g.adjacency_[u].push_back({v, w});
  }
  return g;
}

std::size_t WeightedGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& a : adjacency_) twice += a.size();
  return twice / 2;
}

std::optional<NodeId> WeightedGraph::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void WeightedGraph::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (NodeId u = 0; u < size(); ++u) {
    if (adjacency_[u].empty()) {
      out << labels_[u] << '\n';
      continue;
    }
    for (const Edge& e : adjacency_[u]) {
      if (e.node > u) {
        out << labels_[u] << '\t' << labels_[e.node] << '\t'
            << format_real(e.weight) << '\n';
      }
    }
  }
}

WeightedGraph WeightedGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::map<std::string, NodeId> ids;
  struct Raw {
    std::string a, b;
    double w;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = chomp(line);
    if (view.empty()) continue;
    const auto f = split_fields(view, '\t');
    if (f.size() == 1) {
      ids.emplace(std::string(f[0]), 0);
      continue;
    }
    if (f.size() != 3 || f[0].empty() || f[1].empty()) {
      throw ParseError("expected node<TAB>node<TAB>weight", line_no);
    }
    auto w = parse_number<double>(f[2]);
    if (!w || !(*w > 0)) throw ParseError("bad edge weight", line_no);
    if (f[0] == f[1]) throw ParseError("self-loop", line_no);
    ids.emplace(std::string(f[0]), 0);
    ids.emplace(std::string(f[1]), 0);
    raw.push_back({std::string(f[0]), std::string(f[1]), *w});
  }
  std::vector<std::string> labels;
  for (auto& [label, id] : ids) {
    id = static_cast<NodeId>(labels.size());
    labels.push_back(label);
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(raw.size());
  for (const Raw& r : raw) edges.push_back({ids.at(r.a), ids.at(r.b), r.w});
  return from_edges(std::move(labels), edges);
}

WeightedGraph dt_to_graph(const ThesaurusModel& model, std::size_t top_k) {
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
  if (model.empty()) throw DataError("cannot build a graph from an empty thesaurus");
  std::vector<std::string> labels;
  labels.reserve(model.size());
  for (const auto& e : model.entries()) labels.push_back(e.word);
  std::unordered_map<std::string, NodeId> id;
  for (std::size_t i = 0; i < labels.size(); ++i) id.emplace(labels[i], static_cast<NodeId>(i));

  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& neighbors = model.entries()[i].neighbors;
    const std::size_t n = std::min(top_k, neighbors.size());
    for (std::size_t k = 0; k < n; ++k) {
      auto it = id.find(neighbors[k].word);
      if (it == id.end() || it->second == i) continue;
      edges.push_back({static_cast<NodeId>(i), it->second,
                       static_cast<double>(neighbors[k].overlap)});
    }
  }
  return WeightedGraph::from_edges(std::move(labels), edges);
}

void WalkConfig::validate() const {
  if (walks_per_node < 1) throw ConfigError("walks_per_node must be >= 1");
  if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
  embed_config().validate();
}

EmbedConfig WalkConfig::embed_config() const {
  EmbedConfig cfg;
  cfg.dim = dim;
  cfg.window = window;
  cfg.negatives = negatives;
  cfg.epochs = epochs;
  cfg.initial_lr = initial_lr;
  cfg.min_count = 1;
  cfg.mode = EmbedMode::kSkipGram;
  cfg.subword.reset();
  cfg.subsample_t = 0;
  cfg.seed = seed;
  cfg.workers = workers;
  return cfg;
}

namespace {

constexpr std::uint64_t kRoundOrderTag = 0x6f72646572ULL;

class Walker {
 public:
  Walker(const WeightedGraph& g, const WalkConfig& cfg) : g_(g), cfg_(cfg) {
    if (!cfg.weighted_transitions) return;
    cumulative_.resize(g.size());
    for (NodeId u = 0; u < g.size(); ++u) {
      double acc = 0;
      for (const Edge& e : g.neighbors(u)) {
        acc += e.weight;
        cumulative_[u].push_back(acc);
      }
    }
  }

  Walk walk(NodeId start, std::uint64_t round) const {
    Rng rng(derive_seed(cfg_.seed, start, round));
    Walk w;
    w.reserve(cfg_.walk_length);
    w.push_back(start);
    while (w.size() < cfg_.walk_length) {
      const auto nbrs = g_.neighbors(w.back());
      if (nbrs.empty()) break;
      w.push_back(nbrs[next_index(w.back(), nbrs.size(), rng)].node);
    }
    return w;
  }

 private:
  std::size_t next_index(NodeId u, std::size_t degree, Rng& rng) const {
    if (!cfg_.weighted_transitions) return static_cast<std::size_t>(rng.below(degree));
    const auto& cum = cumulative_[u];
    const double x = rng.uniform() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), degree - 1);
  }

  const WeightedGraph& g_;
  const WalkConfig& cfg_;
  std::vector<std::vector<double>> cumulative_;
};

}  // namespace

std::vector<Walk> random_walks(const WeightedGraph& graph, const WalkConfig& cfg) {
  cfg.validate();
  if (graph.empty()) throw DataError("cannot walk an empty graph");
  const std::size_t n = graph.size();
  const Walker walker(graph, cfg);
  std::vector<Walk> walks(n * cfg.walks_per_node);
  std::vector<NodeId> order(n);
  for (std::size_t round = 0; round < cfg.walks_per_node; ++round) {
    std::iota(order.begin(), order.end(), NodeId{0});
    Rng shuffler(derive_seed(cfg.seed, kRoundOrderTag, round));
    shuffler.shuffle(std::span<NodeId>(order));
    auto fill = [&](std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        walks[round * n + p] = walker.walk(order[p], round);
      }
    };
    const std::size_t workers = std::min(cfg.workers, n);
    if (workers <= 1) {
      fill(0, n);
    } else {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back(fill, n * w / workers, n * (w + 1) / workers);
      }
    }
  }
  return walks;
}

std::vector<TokenizedSentence> walks_to_corpus(const WeightedGraph& graph,
                                               std::span<const Walk> walks) {
  std::vector<TokenizedSentence> out;
  out.reserve(walks.size());
  for (const Walk& w : walks) {
    TokenizedSentence s;
    s.reserve(w.size());
    for (NodeId v : w) s.push_back(graph.label(v));
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Skip-gram over `corpus` without the two-token precondition of train():
// a graph without edges still yields one row per node.
EmbeddingModel train_walk_corpus(std::span<const TokenizedSentence> corpus,
                                 const EmbedConfig& cfg) {
  EmbeddingModel model(build_vocab(corpus, 1), cfg.dim, std::nullopt, cfg.seed);
  train_epochs(model, corpus, cfg);
  model.drop_output();
  return model;
}

}  // namespace

EmbeddingModel deepwalk(const WeightedGraph& graph, const WalkConfig& cfg) {
  const auto walks = random_walks(graph, cfg);
  return train_walk_corpus(walks_to_corpus(graph, walks), cfg.embed_config());
}

std::string_view to_string(RoleAttribute a) {
  switch (a) {
    case RoleAttribute::kLog2DegreeBin: return "log2_degree_bin";
  }
  return "log2_degree_bin";
}

RoleAttribute parse_role_attribute(std::string_view name) {
  if (name == "log2_degree_bin") return RoleAttribute::kLog2DegreeBin;
  throw ConfigError("unknown role attribute '" + std::string(name) + "'");
}

std::uint32_t log2_degree_bin(std::size_t degree) {
  return static_cast<std::uint32_t>(std::bit_width(degree + 1) - 1);
}

std::vector<std::uint32_t> node_roles(const WeightedGraph& graph,
                                      const RoleConfig& cfg) {
  std::vector<std::uint32_t> roles(graph.size());
  for (NodeId v = 0; v < graph.size(); ++v) {
    switch (cfg.attribute) {
      case RoleAttribute::kLog2DegreeBin:
        roles[v] = log2_degree_bin(graph.degree(v));
        break;
    }
  }
  return roles;
}

std::string role_token(std::uint32_t role) { return "role:" + std::to_string(role); }

EmbeddingModel role2vec(const WeightedGraph& graph, const WalkConfig& walk_cfg,
                        const RoleConfig& role_cfg) {
  const auto walks = random_walks(graph, walk_cfg);
  const auto roles = node_roles(graph, role_cfg);

  std::vector<TokenizedSentence> role_corpus;
  role_corpus.reserve(walks.size());
  for (const Walk& w : walks) {
    TokenizedSentence s;
    s.reserve(w.size());
    for (NodeId v : w) s.push_back(role_token(roles[v]));
    role_corpus.push_back(std::move(s));
  }
  const EmbeddingModel role_model =
      train_walk_corpus(role_corpus, walk_cfg.embed_config());

  Vocabulary nodes = build_vocab(walks_to_corpus(graph, walks), 1);
  const std::size_t dim = walk_cfg.dim;
  std::vector<float> input(nodes.size() * dim);
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const NodeId v = *graph.find(nodes.word(static_cast<WordId>(r)));
    const auto role_id = *role_model.vocab().id(role_token(roles[v]));
    const auto row = role_model.word_row(role_id);
    std::copy(row.begin(), row.end(), input.begin() + static_cast<std::ptrdiff_t>(r * dim));
  }
  return EmbeddingModel(std::move(nodes), dim, std::move(input));
}

}  // namespace amsem
