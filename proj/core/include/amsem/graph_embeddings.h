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

#ifndef AMSEM_GRAPH_EMBEDDINGS_H_
#define AMSEM_GRAPH_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amsem/dense_embeddings.h"
#include "amsem/thesaurus.h"

namespace amsem {

using NodeId = std::uint32_t;

struct Edge {
  NodeId node;
  double weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct WeightedEdge {
  NodeId a;
  NodeId b;
  double weight;
};

// Undirected graph without self-loops; adjacency lists sorted by node id.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Duplicate edges keep the larger weight. Throws ConfigError on
  // self-loops, non-positive weights or out-of-range ids.
  static WeightedGraph from_edges(std::vector<std::string> labels,
                                  std::span<const WeightedEdge> edges);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_edges() const;
  const std::string& label(NodeId id) const { return labels_[id]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find(const std::string& label) const;
  std::span<const Edge> neighbors(NodeId id) const { return adjacency_[id]; }
  std::size_t degree(NodeId id) const { return adjacency_[id].size(); }

  // Edge list TSV `node<TAB>node<TAB>weight`, each edge once. Degree-0
  // nodes are written as a line holding only the node label.
  void save(const std::filesystem::path& path) const;
  static WeightedGraph load(const std::filesystem::path& path);

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.labels_ == b.labels_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<Edge>> adjacency_;
};

// Nodes are the thesaurus words; each word links to its top_k neighbors
// with weight = overlap, symmetrized by max.
WeightedGraph dt_to_graph(const ThesaurusModel& model, std::size_t top_k = 20);

struct WalkConfig {
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 80;
  std::size_t window = 5;
  std::size_t dim = 128;
  std::size_t epochs = 5;
  std::size_t negatives = 5;
  double initial_lr = 0.025;
  std::uint64_t seed = 42;
  bool weighted_transitions = false;
  std::size_t workers = 1;

  void validate() const;
  // Skip-gram settings used to embed walk corpora.
  EmbedConfig embed_config() const;
};

using Walk = std::vector<NodeId>;

// walks_per_node rounds; each round visits every node once in a seeded
// order. Walk (round r, node v) uses its own generator seeded from
// (seed, v, r), so the result does not depend on cfg.workers. Output is
// ordered by round, then by the round's visiting order.
std::vector<Walk> random_walks(const WeightedGraph& graph, const WalkConfig& cfg);

std::vector<TokenizedSentence> walks_to_corpus(const WeightedGraph& graph,
                                               std::span<const Walk> walks);

EmbeddingModel deepwalk(const WeightedGraph& graph, const WalkConfig& cfg);

enum class RoleAttribute {
  kLog2DegreeBin,  // floor(log2(degree + 1))
};

struct RoleConfig {
  RoleAttribute attribute = RoleAttribute::kLog2DegreeBin;
};

std::string_view to_string(RoleAttribute a);
RoleAttribute parse_role_attribute(std::string_view name);

std::uint32_t log2_degree_bin(std::size_t degree);
std::vector<std::uint32_t> node_roles(const WeightedGraph& graph,
                                      const RoleConfig& cfg);
std::string role_token(std::uint32_t role);

// Attributed random walks: walks are rewritten into role tokens, skip-gram
// is trained over them, and each node receives its role's vector.
EmbeddingModel role2vec(const WeightedGraph& graph, const WalkConfig& walk_cfg,
                        const RoleConfig& role_cfg = {});

}  // namespace amsem

#endif  // AMSEM_GRAPH_EMBEDDINGS_H_
