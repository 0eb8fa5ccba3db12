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

#include "amsem/doc_classifier.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "amsem/corpus.h"
#include "amsem/error.h"
#include "amsem/random.h"
#include "amsem/text_io.h"

namespace amsem {

std::vector<LabeledDocument> read_labeled_tsv(const std::filesystem::path& path, bool raw,
                                              const NormalizationTable* table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const NormalizationTable& norm = table ? *table : default_table();
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = chomp(line);
    if (view.empty()) continue;
    const std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ParseError("expected label<TAB>text", line_no);
    }
    LabeledDocument doc;
    doc.label = std::string(view.substr(0, tab));
    const std::string_view text = view.substr(tab + 1);
    if (raw) {
      for (auto& tok : tokenize(normalize(text, norm))) {
        if (tok.kind != TokenKind::kPunctuation) doc.tokens.push_back(std::move(tok.surface));
      }
    } else {
      doc.tokens = split_tokens(text);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

// --- TF-IDF ---------------------------------------------------------------

TfidfModel TfidfModel::fit(std::span<const std::vector<std::string>> docs) {
  if (docs.empty()) throw DataError("TF-IDF needs at least one document");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    const std::set<std::string> unique(doc.begin(), doc.end());
    for (const auto& t : unique) ++df[t];
  }
  if (df.empty()) throw DataError("all documents are empty");
  TfidfModel m;
  m.doc_count_ = docs.size();
  const double n = static_cast<double>(docs.size());
  for (const auto& [term, count] : df) {
    m.column_.emplace(term, static_cast<std::uint32_t>(m.terms_.size()));
    m.terms_.push_back(term);
    m.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return m;
}

std::optional<std::uint32_t> TfidfModel::column(const std::string& term) const {
  auto it = column_.find(term);
  if (it == column_.end()) return std::nullopt;
  return it->second;
}

double TfidfModel::idf(const std::string& term) const {
  auto c = column(term);
  return c ? idf_[*c] : 0.0;
}

SparseVector TfidfModel::transform(std::span<const std::string> doc) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : doc) {
    if (auto c = column(t)) counts[*c] += 1.0;
  }
  SparseVector v;
  v.reserve(counts.size());
  double norm2 = 0;
  for (const auto& [c, n] : counts) {
    const double x = n * idf_[c];
    v.emplace_back(c, x);
    norm2 += x * x;
  }
  if (norm2 > 0) {
    const double norm = std::sqrt(norm2);
    for (auto& [c, x] : v) x /= norm;
  }
  return v;
}

void TfidfModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "amsem-tfidf\t1\n";
  out << "docs\t" << doc_count_ << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out << terms_[i] << '\t' << format_real(idf_[i]) << '\n';
  }
}

TfidfModel TfidfModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  TfidfModel m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = chomp(line);
    const auto f = split_fields(view, '\t');
    if (line_no == 1) {
      if (f.size() != 2 || f[0] != "amsem-tfidf" || f[1] != "1") {
        throw ParseError("not an amsem TF-IDF model", line_no);
      }
      continue;
    }
    if (f.size() != 2) throw ParseError("expected 2 fields", line_no);
    if (line_no == 2) {
      auto n = parse_number<std::size_t>(f[1]);
      if (f[0] != "docs" || !n) throw ParseError("expected docs<TAB>N", line_no);
      m.doc_count_ = *n;
      continue;
    }
    auto idf = parse_number<double>(f[1]);
    if (!idf || *idf <= 0) throw ParseError("bad idf value", line_no);
    const std::string term(f[0]);
    if (!m.terms_.empty() && !(m.terms_.back() < term)) {
      throw ParseError("terms must be unique and sorted", line_no);
    }
    m.column_.emplace(term, static_cast<std::uint32_t>(m.terms_.size()));
    m.terms_.push_back(term);
    m.idf_.push_back(*idf);
  }
  if (line_no < 2) throw ParseError("truncated TF-IDF model", line_no);
  return m;
}

// --- logistic regression --------------------------------------------------

LinearClassifier::LinearClassifier(std::vector<std::string> classes,
                                   std::size_t num_features)
    : classes_(std::move(classes)),
      num_features_(num_features),
      weights_(classes_.size() * num_features, 0.0),
      bias_(classes_.size(), 0.0) {}

std::vector<double> LinearClassifier::scores(const SparseVector& x) const {
  std::vector<double> s(bias_);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (const auto& [f, v] : x) {
      if (f < num_features_) s[c] += weight(c, f) * v;
    }
  }
  return s;
}

namespace {

// Softmax in place; returns log-sum-exp of the input.
double softmax(std::vector<double>& s) {
  const double mx = *std::max_element(s.begin(), s.end());
  double z = 0;
  for (double& v : s) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double& v : s) v /= z;
  return mx + std::log(z);
}

}  // namespace

std::vector<double> LinearClassifier::predict_proba(const SparseVector& x) const {
  auto s = scores(x);
  softmax(s);
  return s;
}

std::size_t LinearClassifier::predict_index(const SparseVector& x) const {
  const auto s = scores(x);
  return static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
}

const std::string& LinearClassifier::predict(const SparseVector& x) const {
  return classes_[predict_index(x)];
}

void LinearClassifier::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "amsem-logreg\t1\n";
  out << "classes";
  for (const auto& c : classes_) out << '\t' << c;
  out << "\nfeatures\t" << num_features_ << '\n';
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    out << "bias\t" << c << '\t' << format_real(bias_[c]) << '\n';
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (std::size_t f = 0; f < num_features_; ++f) {
      if (weight(c, f) != 0) {
        out << "w\t" << c << '\t' << f << '\t' << format_real(weight(c, f)) << '\n';
      }
    }
  }
}

LinearClassifier LinearClassifier::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> classes;
  std::optional<LinearClassifier> m;
  auto index = [&](std::string_view text, std::size_t limit) {
    auto v = parse_number<std::size_t>(text);
    if (!v || *v >= limit) throw ParseError("index out of range", line_no);
    return *v;
  };
  auto value = [&](std::string_view text) {
    auto v = parse_number<double>(text);
    if (!v || !std::isfinite(*v)) throw ParseError("bad weight", line_no);
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_fields(chomp(line), '\t');
    if (line_no == 1) {
      if (f.size() != 2 || f[0] != "amsem-logreg" || f[1] != "1") {
        throw ParseError("not an amsem logistic regression model", line_no);
      }
    } else if (f[0] == "classes" && !m) {
      classes.assign(f.begin() + 1, f.end());
    } else if (f[0] == "features" && f.size() == 2 && !m) {
      auto n = parse_number<std::size_t>(f[1]);
      if (!n || classes.size() < 2) throw ParseError("bad features record", line_no);
      m.emplace(classes, *n);
    } else if (f[0] == "bias" && f.size() == 3 && m) {
      m->bias_[index(f[1], m->num_classes())] = value(f[2]);
    } else if (f[0] == "w" && f.size() == 4 && m) {
      const std::size_t c = index(f[1], m->num_classes());
      m->weight(c, index(f[2], m->num_features())) = value(f[3]);
    } else {
      throw ParseError("unrecognized record", line_no);
    }
  }
  if (!m) throw ParseError("truncated logistic regression model", line_no);
  return std::move(*m);
}

double logreg_objective(const LinearClassifier& model, std::span<const SparseVector> x,
                        std::span<const std::size_t> y, double l2,
                        std::span<double> grad_w, std::span<double> grad_b) {
  if (x.size() != y.size() || x.empty()) {
    throw DataError("logistic regression needs aligned, non-empty data");
  }
  const bool want_grad = !grad_w.empty();
  const std::size_t k = model.num_classes();
  const std::size_t nf = model.num_features();
  if (want_grad) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
  }
  const double inv_n = 1.0 / static_cast<double>(x.size());
  double loss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto p = model.scores(x[i]);
    const double true_score = p[y[i]];
    loss += softmax(p) - true_score;
    if (!want_grad) continue;
    for (std::size_t c = 0; c < k; ++c) {
      const double g = (p[c] - (c == y[i] ? 1.0 : 0.0)) * inv_n;
      grad_b[c] += g;
      for (const auto& [f, v] : x[i]) {
        if (f < nf) grad_w[c * nf + f] += g * v;
      }
    }
  }
  loss *= inv_n;
  double sq = 0;
  const auto w = model.weights();
  for (std::size_t j = 0; j < w.size(); ++j) {
    sq += w[j] * w[j];
    if (want_grad) grad_w[j] += l2 * w[j];
  }
  return loss + 0.5 * l2 * sq;
}

void LogRegConfig::validate() const {
  if (l2 < 0 || !std::isfinite(l2)) throw ConfigError("l2 must be a finite value >= 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(lr > 0) || !std::isfinite(lr)) throw ConfigError("lr must be > 0");
}

LinearClassifier train_logreg(std::span<const SparseVector> x,
                              std::span<const std::string> labels, std::size_t num_features,
                              const LogRegConfig& cfg, LogRegStats* stats) {
  cfg.validate();
  if (x.size() != labels.size()) throw DataError("features and labels differ in length");
  const std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    throw DataError("logistic regression needs at least two classes, found " +
                    std::to_string(distinct.size()));
  }
  LinearClassifier model(std::vector<std::string>(distinct.begin(), distinct.end()),
                         num_features);
  std::map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < model.num_classes(); ++c) class_index[model.classes()[c]] = c;
  std::vector<std::size_t> y;
  y.reserve(labels.size());
  for (const auto& l : labels) y.push_back(class_index.at(l));

  const std::size_t n = x.size();
  const std::size_t batch = cfg.batch_size == 0 ? n : std::min(cfg.batch_size, n);
  std::vector<double> grad_w(model.weights().size());
  std::vector<double> grad_b(model.num_classes());
  std::vector<std::size_t> order(n);
  std::vector<SparseVector> bx;
  std::vector<std::size_t> by;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, epoch));
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      bx.clear();
      by.clear();
      for (std::size_t i = start; i < end; ++i) {
        bx.push_back(x[order[i]]);
        by.push_back(y[order[i]]);
      }
      logreg_objective(model, bx, by, cfg.l2, grad_w, grad_b);
      auto w = model.weights();
      auto b = model.bias();
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= cfg.lr * grad_w[j];
      for (std::size_t c = 0; c < b.size(); ++c) b[c] -= cfg.lr * grad_b[c];
    }
    if (stats) stats->epoch_objective.push_back(logreg_objective(model, x, y, cfg.l2));
  }
  return model;
}

// --- baselines ------------------------------------------------------------

std::string_view to_string(BaselineStrategy s) {
  switch (s) {
    case BaselineStrategy::kMostFrequent: return "most_frequent";
    case BaselineStrategy::kStratified: return "stratified";
    case BaselineStrategy::kUniform: return "uniform";
  }
  return "?";
}

BaselineStrategy parse_baseline(std::string_view name) {
  if (name == "most_frequent") return BaselineStrategy::kMostFrequent;
  if (name == "stratified") return BaselineStrategy::kStratified;
  if (name == "uniform") return BaselineStrategy::kUniform;
  throw ConfigError("unknown baseline strategy '" + std::string(name) +
                    "' (expected most_frequent, stratified or uniform)");
}

std::vector<std::string> baseline(BaselineStrategy strategy,
                                  std::span<const std::string> train_labels,
                                  std::size_t test_size, std::uint64_t seed) {
  if (train_labels.empty()) throw DataError("baseline needs training labels");
  std::map<std::string, std::size_t> counts;
  for (const auto& l : train_labels) ++counts[l];
  std::vector<std::string> out;
  out.reserve(test_size);
  switch (strategy) {
    case BaselineStrategy::kMostFrequent: {
      // map order makes the first maximum the lexicographically smallest.
      auto best = counts.begin();
      for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      out.assign(test_size, best->first);
      break;
    }
    case BaselineStrategy::kStratified: {
      Rng rng(seed);
      std::vector<std::pair<std::size_t, const std::string*>> cumulative;
      std::size_t total = 0;
      for (const auto& [label, c] : counts) {
        total += c;
        cumulative.emplace_back(total, &label);
      }
      for (std::size_t i = 0; i < test_size; ++i) {
        const std::size_t r = rng.below(total);
        auto it = std::upper_bound(
            cumulative.begin(), cumulative.end(), r,
            [](std::size_t v, const auto& entry) { return v < entry.first; });
        out.push_back(*it->second);
      }
      break;
    }
    case BaselineStrategy::kUniform: {
      Rng rng(seed);
      std::vector<const std::string*> labels;
      for (const auto& [label, c] : counts) labels.push_back(&label);
      for (std::size_t i = 0; i < test_size; ++i) {
        out.push_back(*labels[rng.below(labels.size())]);
      }
      break;
    }
  }
  return out;
}

// --- evaluation -----------------------------------------------------------

std::string_view to_string(Averaging a) {
  return a == Averaging::kMacro ? "macro" : "weighted";
}

Averaging parse_averaging(std::string_view name) {
  if (name == "macro") return Averaging::kMacro;
  if (name == "weighted") return Averaging::kWeighted;
  throw ConfigError("unknown averaging '" + std::string(name) +
                    "' (expected macro or weighted)");
}

ClassificationReport evaluate_classification(std::span<const std::string> pred,
                                             std::span<const std::string> gold,
                                             Averaging averaging) {
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
  ClassificationReport r;
  double weight_total = 0;
  for (const auto& [label, c] : counts) {
    ClassMetric m;
    m.precision = c.predicted ? static_cast<double>(c.tp) / c.predicted : 0.0;
    m.recall = c.gold ? static_cast<double>(c.tp) / c.gold : 0.0;
    m.f1 = m.precision + m.recall > 0
               ? 2 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    m.support = c.gold;
    r.per_class[label] = m;
    if (c.gold == 0) continue;
    const double w = averaging == Averaging::kMacro ? 1.0 : static_cast<double>(c.gold);
    r.precision += w * m.precision;
    r.recall += w * m.recall;
    r.f1 += w * m.f1;
    weight_total += w;
  }
  if (weight_total > 0) {
    r.precision /= weight_total;
    r.recall /= weight_total;
    r.f1 /= weight_total;
  }
  r.accuracy = pred.empty() ? 0.0 : static_cast<double>(correct) / pred.size();
  return r;
}

}  // namespace amsem
