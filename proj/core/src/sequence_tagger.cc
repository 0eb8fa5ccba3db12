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

#include "amsem/sequence_tagger.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "amsem/corpus.h"
#include "amsem/error.h"
#include "amsem/random.h"
#include "amsem/text_io.h"
#include "amsem/utf8.h"

namespace amsem {

// --- CoNLL ----------------------------------------------------------------

std::vector<TaggedSequence> parse_conll(std::istream& in) {
  std::vector<TaggedSequence> out;
  TaggedSequence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) out.push_back(std::move(current));
    current = TaggedSequence{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = chomp(line);
    if (view.find_first_not_of(" \t") == std::string_view::npos) {
      flush();
      continue;
    }
    std::string token, tag;
    const std::size_t tab = view.find('\t');
    if (tab != std::string_view::npos) {
      token = view.substr(0, tab);
      tag = view.substr(view.rfind('\t') + 1);
    } else {
      const auto fields = split_tokens(view);
      if (fields.size() >= 2) {
        token = fields.front();
        tag = fields.back();
      }
    }
    if (token.empty() || tag.empty()) {
      throw ParseError("expected token<TAB>tag", line_no);
    }
    current.tokens.push_back(std::move(token));
    current.labels.push_back(std::move(tag));
  }
  flush();
  return out;
}

std::vector<TaggedSequence> read_conll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_conll(in);
}

void write_conll(const std::filesystem::path& path,
                 std::span<const TaggedSequence> data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& s : data) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out << s.tokens[i] << '\t' << s.labels[i] << '\n';
    }
    out << '\n';
  }
}

// --- features -------------------------------------------------------------

bool is_numeric(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t i = 0; i < token.size();) {
    const auto s = utf8::decode_at(token, i);
    if (!utf8::is_digit(s.value)) return false;
    i += s.length;
  }
  return true;
}

std::vector<std::string> handcrafted_features(std::span<const std::string> tokens,
                                              std::size_t i) {
  if (i >= tokens.size()) {
    throw ConfigError("feature index " + std::to_string(i) + " out of range");
  }
  const std::string& w = tokens[i];
  std::vector<std::string> f;
  f.reserve(11);
  f.push_back("w=" + w);
  f.push_back(i == 0 ? std::string("BOS") : "w-1=" + tokens[i - 1]);
  f.push_back(i + 1 == tokens.size() ? std::string("EOS") : "w+1=" + tokens[i + 1]);
  const std::size_t len = utf8::scalar_count(w);
  for (std::size_t n = 1; n <= 3 && n <= len; ++n) {
    f.push_back("p" + std::to_string(n) + "=" + utf8::prefix(w, n));
  }
  for (std::size_t n = 1; n <= 3 && n <= len; ++n) {
    f.push_back("s" + std::to_string(n) + "=" + utf8::suffix(w, n));
  }
  if (is_numeric(w)) f.push_back("isnum");
  f.push_back("bias");
  return f;
}

EmbeddingClusters EmbeddingClusters::fit(std::shared_ptr<const EmbeddingModel> model,
                                         std::size_t k, std::uint64_t seed,
                                         std::size_t max_iterations) {
  if (!model) throw ConfigError("embedding features need an embedding model");
  const std::size_t v = model->size();
  if (k == 0 || k > v) {
    throw ConfigError("cluster count must be in [1, " + std::to_string(v) + "]");
  }
  EmbeddingClusters out;
  out.model_ = std::move(model);
  const std::size_t dim = out.model_->dim();
  out.dim_ = dim;
  const std::vector<float> data = out.model_->composed_matrix();

  std::vector<std::size_t> perm(v);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(perm));
  out.centroids_.resize(k * dim);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < dim; ++d) {
      out.centroids_[c * dim + d] = data[perm[c] * dim + d];
    }
  }

  out.vocab_cluster_.assign(v, 0);
  std::vector<double> sums(k * dim);
  std::vector<std::size_t> sizes(k);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = iter == 0;
    for (std::size_t r = 0; r < v; ++r) {
      const auto c = static_cast<std::uint32_t>(out.assign({data.data() + r * dim, dim}));
      if (c != out.vocab_cluster_[r]) changed = true;
      out.vocab_cluster_[r] = c;
    }
    out.iterations_ = iter + 1;
    if (!changed) break;
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t r = 0; r < v; ++r) {
      const std::size_t c = out.vocab_cluster_[r];
      ++sizes[c];
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += data[r * dim + d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t d = 0; d < dim; ++d) {
        out.centroids_[c * dim + d] = sums[c * dim + d] / static_cast<double>(sizes[c]);
      }
    }
  }
  return out;
}

std::size_t EmbeddingClusters::assign(std::span<const float> v) const {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < size(); ++c) {
    double d2 = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double diff = static_cast<double>(v[d]) - centroids_[c * dim_ + d];
      d2 += diff * diff;
    }
    if (d2 < best_dist) {
      best_dist = d2;
      best = c;
    }
  }
  return best;
}

std::optional<std::size_t> EmbeddingClusters::cluster_of(const std::string& word) const {
  if (auto id = model_->vocab().id(word)) return vocab_cluster_[*id];
  if (auto v = model_->try_vector(word)) return assign(*v);
  return std::nullopt;
}

std::vector<std::string> embedding_features(std::span<const std::string> tokens,
                                            std::size_t i,
                                            const EmbeddingClusters& clusters) {
  if (i >= tokens.size()) {
    throw ConfigError("feature index " + std::to_string(i) + " out of range");
  }
  auto id = [&](std::size_t j) {
    auto c = clusters.cluster_of(tokens[j]);
    return c ? std::to_string(*c) : std::string("UNK");
  };
  return {"cl=" + id(i), "cl-1=" + (i == 0 ? std::string("BOS") : id(i - 1)),
          "cl+1=" + (i + 1 == tokens.size() ? std::string("EOS") : id(i + 1))};
}

FeatureFn make_feature_fn(std::shared_ptr<const EmbeddingClusters> clusters) {
  if (!clusters) return handcrafted_features;
  return [clusters](std::span<const std::string> tokens, std::size_t i) {
    auto f = handcrafted_features(tokens, i);
    auto e = embedding_features(tokens, i, *clusters);
    f.insert(f.end(), std::make_move_iterator(e.begin()),
             std::make_move_iterator(e.end()));
    return f;
  };
}

// --- model ----------------------------------------------------------------

TaggerModel::TaggerModel(std::vector<std::string> tagset) : tags_(std::move(tagset)) {
  if (tags_.empty()) throw ConfigError("tagset must not be empty");
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (!tag_index_.emplace(tags_[i], i).second) {
      throw ConfigError("duplicate tag '" + tags_[i] + "'");
    }
  }
  transitions_.assign((tags_.size() + 1) * (tags_.size() + 1), 0.0);
}

std::optional<std::size_t> TaggerModel::tag_index(const std::string& tag) const {
  auto it = tag_index_.find(tag);
  if (it == tag_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> TaggerModel::feature_index(const std::string& feature) const {
  auto it = feature_index_.find(feature);
  if (it == feature_index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t TaggerModel::intern_feature(const std::string& feature) {
  auto [it, inserted] =
      feature_index_.emplace(feature, static_cast<std::uint32_t>(features_.size()));
  if (inserted) {
    features_.push_back(feature);
    weights_.resize(weights_.size() + tags_.size(), 0.0);
  }
  return it->second;
}

double TaggerModel::weight(const std::string& feature, const std::string& tag) const {
  auto f = feature_index(feature);
  auto t = tag_index(tag);
  return f && t ? weight(*f, *t) : 0.0;
}

std::vector<double> TaggerModel::emissions(std::span<const std::string> tokens,
                                           const FeatureFn& features) const {
  const std::size_t t = tags_.size();
  std::vector<double> e(tokens.size() * t, 0.0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& name : features(tokens, i)) {
      auto f = feature_index(name);
      if (!f) continue;
      for (std::size_t k = 0; k < t; ++k) e[i * t + k] += weight(*f, k);
    }
  }
  return e;
}

namespace {

constexpr std::string_view kBoundaryName = "<S>";

std::string tag_or_boundary(const TaggerModel& m, std::size_t idx) {
  return idx == m.num_tags() ? std::string(kBoundaryName) : m.tagset()[idx];
}

}  // namespace

void TaggerModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "amsem-tagger\t1\n";
  out << "averaged\t" << (averaged ? 1 : 0) << '\n';
  out << "tags";
  for (const auto& t : tags_) out << '\t' << t;
  out << '\n';
  for (const auto& [k, v] : metadata) out << "meta\t" << k << '\t' << v << '\n';
  for (std::size_t p = 0; p <= tags_.size(); ++p) {
    for (std::size_t c = 0; c <= tags_.size(); ++c) {
      const double w = transition(p, c);
      if (w != 0) {
        out << "trans\t" << tag_or_boundary(*this, p) << '\t'
            << tag_or_boundary(*this, c) << '\t' << format_real(w) << '\n';
      }
    }
  }
  for (std::uint32_t f = 0; f < features_.size(); ++f) {
    for (std::size_t t = 0; t < tags_.size(); ++t) {
      const double w = weight(f, t);
      if (w != 0) {
        out << "feat\t" << features_[f] << '\t' << tags_[t] << '\t'
            << format_real(w) << '\n';
      }
    }
  }
}

TaggerModel TaggerModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  TaggerModel m;
  bool have_tags = false;
  auto tag_ref = [&](std::string_view name, std::size_t ln) -> std::size_t {
    if (name == kBoundaryName) return m.num_tags();
    auto t = m.tag_index(std::string(name));
    if (!t) throw ParseError("unknown tag '" + std::string(name) + "'", ln);
    return *t;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = chomp(line);
    if (view.empty()) continue;
    const auto f = split_fields(view, '\t');
    if (line_no == 1) {
      if (f.size() != 2 || f[0] != "amsem-tagger" || f[1] != "1") {
        throw ParseError("not an amsem tagger model", line_no);
      }
      continue;
    }
    if (f[0] == "tags") {
      std::vector<std::string> tags(f.begin() + 1, f.end());
      try {
        TaggerModel fresh(std::move(tags));
        fresh.averaged = m.averaged;
        fresh.metadata = std::move(m.metadata);
        m = std::move(fresh);
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no);
      }
      have_tags = true;
    } else if (f[0] == "averaged" && f.size() == 2) {
      m.averaged = f[1] == "1";
    } else if (f[0] == "meta" && f.size() == 3) {
      m.metadata[std::string(f[1])] = std::string(f[2]);
    } else if (f[0] == "trans" && f.size() == 4 && have_tags) {
      auto w = parse_number<double>(f[3]);
      if (!w) throw ParseError("bad weight", line_no);
      m.transition(tag_ref(f[1], line_no), tag_ref(f[2], line_no)) = *w;
    } else if (f[0] == "feat" && f.size() == 4 && have_tags) {
      auto w = parse_number<double>(f[3]);
      if (!w) throw ParseError("bad weight", line_no);
      const std::size_t t = tag_ref(f[2], line_no);
      if (t == m.num_tags()) throw ParseError("boundary tag on a feature", line_no);
      m.weight(m.intern_feature(std::string(f[1])), t) = *w;
    } else {
      throw ParseError("unrecognized record '" + std::string(f[0]) + "'", line_no);
    }
  }
  if (!have_tags) throw ParseError("model has no tagset", line_no);
  return m;
}

// --- decoding -------------------------------------------------------------

std::vector<std::size_t> viterbi_decode(std::span<const double> emissions,
                                        std::size_t n, std::size_t num_tags,
                                        std::span<const double> transitions) {
  if (n == 0) throw ConfigError("cannot decode an empty sequence");
  if (num_tags == 0) throw ConfigError("cannot decode with an empty tagset");
  const std::size_t t = num_tags;
  const std::size_t stride = t + 1;
  const std::size_t bos = t;
  std::vector<double> delta(n * t);
  std::vector<std::size_t> back(n * t, 0);
  for (std::size_t k = 0; k < t; ++k) {
    delta[k] = transitions[bos * stride + k] + emissions[k];
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < t; ++k) {
      std::size_t arg = 0;
      double best = delta[(i - 1) * t] + transitions[k];
      for (std::size_t p = 1; p < t; ++p) {
        const double s = delta[(i - 1) * t + p] + transitions[p * stride + k];
        if (s > best) {
          best = s;
          arg = p;
        }
      }
      delta[i * t + k] = best + emissions[i * t + k];
      back[i * t + k] = arg;
    }
  }
  std::size_t last = 0;
  double best = delta[(n - 1) * t] + transitions[bos];
  for (std::size_t k = 1; k < t; ++k) {
    const double s = delta[(n - 1) * t + k] + transitions[k * stride + bos];
    if (s > best) {
      best = s;
      last = k;
    }
  }
  std::vector<std::size_t> path(n);
  path[n - 1] = last;
  for (std::size_t i = n - 1; i > 0; --i) path[i - 1] = back[i * t + path[i]];
  return path;
}

double path_score(std::span<const double> emissions, std::size_t n,
                  std::size_t num_tags, std::span<const double> transitions,
                  std::span<const std::size_t> path) {
  const std::size_t stride = num_tags + 1;
  std::size_t prev = num_tags;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s += transitions[prev * stride + path[i]] + emissions[i * num_tags + path[i]];
    prev = path[i];
  }
  return s + transitions[prev * stride + num_tags];
}

std::vector<std::string> viterbi(const TaggerModel& model,
                                 std::span<const std::string> tokens,
                                 const FeatureFn& features) {
  if (tokens.empty()) throw ConfigError("cannot tag an empty token sequence");
  const auto e = model.emissions(tokens, features);
  const auto path =
      viterbi_decode(e, tokens.size(), model.num_tags(), model.transitions());
  std::vector<std::string> out;
  out.reserve(path.size());
  for (std::size_t k : path) out.push_back(model.tagset()[k]);
  return out;
}

// --- training -------------------------------------------------------------

TaggerModel train_tagger(std::span<const TaggedSequence> data,
                         const TaggerTrainConfig& cfg, const FeatureFn& features) {
  if (data.empty()) throw DataError("no training sequences");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  for (const auto& s : data) {
    if (s.tokens.empty() || s.tokens.size() != s.labels.size()) {
      throw DataError("each training sequence needs matching, non-empty tokens and labels");
    }
  }

  std::vector<std::string> tagset = cfg.tagset;
  if (tagset.empty()) {
    std::set<std::string> seen;
    for (const auto& s : data) seen.insert(s.labels.begin(), s.labels.end());
    tagset.assign(seen.begin(), seen.end());
  }
  TaggerModel model(tagset);
  {
    std::set<std::string> unknown;
    for (const auto& s : data) {
      for (const auto& l : s.labels) {
        if (!model.tag_index(l)) unknown.insert(l);
      }
    }
    if (!unknown.empty()) {
      std::string list;
      for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
      throw DataError("labels outside the tagset: " + list);
    }
  }

  const std::size_t nt = model.num_tags();
  const std::size_t bos = model.boundary();
  // Feature ids per sequence position, interned up front.
  std::vector<std::vector<std::vector<std::uint32_t>>> feats(data.size());
  std::vector<std::vector<std::size_t>> gold(data.size());
  for (std::size_t s = 0; s < data.size(); ++s) {
    const auto& seq = data[s];
    feats[s].resize(seq.tokens.size());
    for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
      for (const auto& name : features(seq.tokens, i)) {
        feats[s][i].push_back(model.intern_feature(name));
      }
      gold[s].push_back(*model.tag_index(seq.labels[i]));
    }
  }

  std::vector<double> acc_w(model.weights().size(), 0.0);
  std::vector<double> acc_t(model.transitions().size(), 0.0);
  auto w = model.weights();
  auto tr = model.transitions();
  double step = 1;  // index of the current visit, starting at 1

  auto bump_emission = [&](std::uint32_t f, std::size_t tag, double delta) {
    const std::size_t idx = static_cast<std::size_t>(f) * nt + tag;
    w[idx] += delta;
    acc_w[idx] += step * delta;
  };
  auto bump_transition = [&](std::size_t p, std::size_t c, double delta) {
    const std::size_t idx = p * (nt + 1) + c;
    tr[idx] += delta;
    acc_t[idx] += step * delta;
  };

  std::vector<std::size_t> order(data.size());
  std::vector<double> emissions;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, epoch));
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t s : order) {
      const std::size_t n = gold[s].size();
      emissions.assign(n * nt, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t f : feats[s][i]) {
          for (std::size_t k = 0; k < nt; ++k) emissions[i * nt + k] += w[f * nt + k];
        }
      }
      const auto pred = viterbi_decode(emissions, n, nt, tr);
      if (pred != gold[s]) {
        for (std::size_t i = 0; i <= n; ++i) {
          const std::size_t gp = i == 0 ? bos : gold[s][i - 1];
          const std::size_t gc = i == n ? bos : gold[s][i];
          const std::size_t pp = i == 0 ? bos : pred[i - 1];
          const std::size_t pc = i == n ? bos : pred[i];
          if (gp != pp || gc != pc) {
            bump_transition(gp, gc, 1.0);
            bump_transition(pp, pc, -1.0);
          }
          if (i < n && gold[s][i] != pred[i]) {
            for (std::uint32_t f : feats[s][i]) {
              bump_emission(f, gold[s][i], 1.0);
              bump_emission(f, pred[i], -1.0);
            }
          }
        }
      }
      if (cfg.on_step) cfg.on_step(model);
      step += 1;
    }
  }

  if (cfg.average) {
    // Mean of the post-visit snapshots w_1..w_T: ((T + 1) w - sum_s s d_s) / T.
    const double visits = step - 1;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (step * w[i] - acc_w[i]) / visits;
    for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = (step * tr[i] - acc_t[i]) / visits;
    model.averaged = true;
  }
  return model;
}

// --- evaluation -----------------------------------------------------------

double f1_score(double precision, double recall) {
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TokenReport evaluate_tokens(std::span<const std::string> pred,
                            std::span<const std::string> gold) {
  if (pred.size() != gold.size()) {
    throw DataError("prediction has " + std::to_string(pred.size()) +
                    " labels but gold has " + std::to_string(gold.size()));
  }
  struct Counts {
    std::size_t tp = 0, predicted = 0, gold = 0;
  };
  std::map<std::string, Counts> counts;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++counts[pred[i]].predicted;
    ++counts[gold[i]].gold;
    if (pred[i] == gold[i]) {
      ++counts[gold[i]].tp;
      ++correct;
    }
  }
  TokenReport r;
  r.tokens = pred.size();
  std::size_t gold_tags = 0;
  for (const auto& [tag, c] : counts) {
    PRF m;
    m.precision = ratio(c.tp, c.predicted);
    m.recall = ratio(c.tp, c.gold);
    m.f1 = f1_score(m.precision, m.recall);
    m.support = c.gold;
    r.per_tag[tag] = m;
    if (c.gold > 0) {
      ++gold_tags;
      r.macro.precision += m.precision;
      r.macro.recall += m.recall;
      r.macro.f1 += m.f1;
      r.macro.support += c.gold;
    }
  }
  if (gold_tags > 0) {
    r.macro.precision /= static_cast<double>(gold_tags);
    r.macro.recall /= static_cast<double>(gold_tags);
    r.macro.f1 /= static_cast<double>(gold_tags);
  }
  r.accuracy = ratio(correct, pred.size());
  r.micro = {r.accuracy, r.accuracy, r.accuracy, pred.size()};
  return r;
}

TokenReport evaluate_tokens(std::span<const TaggedSequence> pred,
                            std::span<const TaggedSequence> gold) {
  if (pred.size() != gold.size()) throw DataError("sequence counts differ");
  std::vector<std::string> p, g;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    if (pred[s].labels.size() != gold[s].labels.size()) {
      throw DataError("sequence " + std::to_string(s) + " lengths differ");
    }
    p.insert(p.end(), pred[s].labels.begin(), pred[s].labels.end());
    g.insert(g.end(), gold[s].labels.begin(), gold[s].labels.end());
  }
  return evaluate_tokens(p, g);
}

std::vector<EntitySpan> decode_bio(std::span<const std::string> labels,
                                   std::size_t* repaired) {
  std::vector<EntitySpan> spans;
  std::optional<EntitySpan> open;
  auto close = [&](std::size_t end) {
    if (open) {
      open->end = end;
      spans.push_back(std::move(*open));
      open.reset();
    }
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string& l = labels[i];
    if (l == "O") {
      close(i);
      continue;
    }
    if (l.size() < 3 || (l[0] != 'B' && l[0] != 'I') || l[1] != '-') {
      throw DataError("label '" + l + "' is not in BIO form");
    }
    const std::string cls = l.substr(2);
    if (l[0] == 'I' && open && open->label == cls) continue;
    if (l[0] == 'I' && repaired) ++*repaired;
    close(i);
    open = EntitySpan{i, i, cls};
  }
  close(labels.size());
  return spans;
}

SpanReport evaluate_spans(std::span<const std::vector<std::string>> pred,
                          std::span<const std::vector<std::string>> gold) {
  if (pred.size() != gold.size()) throw DataError("sequence counts differ");
  SpanReport r;
  std::map<std::string, SpanMetric> per;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    if (pred[s].size() != gold[s].size()) {
      throw DataError("sequence " + std::to_string(s) + " lengths differ");
    }
    const auto ps = decode_bio(pred[s], &r.repaired_predicted);
    const auto gs = decode_bio(gold[s], &r.repaired_gold);
    const std::set<EntitySpan> gold_set(gs.begin(), gs.end());
    for (const auto& sp : ps) {
      ++per[sp.label].predicted;
      if (gold_set.contains(sp)) ++per[sp.label].correct;
    }
    for (const auto& sp : gs) ++per[sp.label].gold;
  }
  for (auto& [cls, m] : per) {
    m.precision = ratio(m.correct, m.predicted);
    m.recall = ratio(m.correct, m.gold);
    m.f1 = f1_score(m.precision, m.recall);
    r.micro.correct += m.correct;
    r.micro.predicted += m.predicted;
    r.micro.gold += m.gold;
  }
  r.micro.precision = ratio(r.micro.correct, r.micro.predicted);
  r.micro.recall = ratio(r.micro.correct, r.micro.gold);
  r.micro.f1 = f1_score(r.micro.precision, r.micro.recall);
  r.undefined = r.micro.predicted == 0 && r.micro.gold == 0;
  r.per_class = std::move(per);
  return r;
}

SpanReport evaluate_spans(std::span<const TaggedSequence> pred,
                          std::span<const TaggedSequence> gold) {
  std::vector<std::vector<std::string>> p, g;
  for (const auto& s : pred) p.push_back(s.labels);
  for (const auto& s : gold) g.push_back(s.labels);
  return evaluate_spans(p, g);
}

}  // namespace amsem
