//  Copyright 2026 The kglight Authors. All Rights Reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "kglight/eval.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "kglight/error.hpp"
#include "kglight/gzip_stream.hpp"
#include "kglight/knowledge_graph.hpp"
#include "kglight/random.hpp"
#include "kglight/walker.hpp"

namespace kglight {

namespace {

std::string strip_brackets(std::string s) {
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') return s.substr(1, s.size() - 2);
  return s;
}

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(trim_copy(line.substr(start, tab - start)));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

bool skip_line(const std::string& trimmed) { return trimmed.empty() || trimmed.front() == '#'; }

double parse_double(const std::string& s, const std::string& where) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::kParse, where + ": not a finite number: '" + s + "'");
  }
  return v;
}

}  // namespace

LabeledEntitySet read_labeled_entities(const std::string& path) {
  InputFile file(path);
  LabeledEntitySet out;
  std::set<std::string> seen;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(file.stream(), line)) {
    ++line_no;
    if (skip_line(trim_copy(line))) continue;
    auto fields = split_tabs(line);
    if (fields.size() < 2 || fields[0].empty()) {
      throw Error(ErrorKind::kParse, path + ": line " + std::to_string(line_no) +
                                         ": expected entity<TAB>label");
    }
    std::string entity = strip_brackets(fields[0]);
    if (!seen.insert(entity).second) {
      throw Error(ErrorKind::kParse,
                  path + ": line " + std::to_string(line_no) + ": duplicate entity " + entity);
    }
    out.push_back({std::move(entity), fields[1]});
  }
  return out;
}

std::vector<RegressionExample> to_regression(const LabeledEntitySet& data) {
  std::vector<RegressionExample> out;
  out.reserve(data.size());
  for (const auto& e : data) out.push_back({e.entity, parse_double(e.label, e.entity)});
  return out;
}

EntityRelatednessGold read_entity_relatedness_gold(const std::string& path) {
  InputFile file(path);
  EntityRelatednessGold out;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(file.stream(), line)) {
    ++line_no;
    const std::string t = trim_copy(line);
    if (skip_line(t)) continue;
    const bool indented = line.front() == ' ' || line.front() == '\t';
    if (!indented) {
      out.push_back({strip_brackets(t), {}});
    } else {
      if (out.empty()) {
        throw Error(ErrorKind::kParse, path + ": line " + std::to_string(line_no) +
                                           ": candidate before any seed");
      }
      out.back().candidates.push_back(strip_brackets(t));
    }
  }
  return out;
}

DocumentRelatednessGold read_document_relatedness_gold(const std::string& path) {
  InputFile file(path);
  DocumentRelatednessGold out;
  std::set<std::string> ids;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(file.stream(), line)) {
    ++line_no;
    if (skip_line(trim_copy(line))) continue;
    const auto fields = split_tabs(line);
    const std::string where = path + ": line " + std::to_string(line_no);
    if (fields[0] == "doc" && fields.size() >= 2) {
      if (!ids.insert(fields[1]).second) throw Error(ErrorKind::kParse, where + ": duplicate document");
      std::vector<std::string> entities;
      for (std::size_t i = 2; i < fields.size(); ++i) {
        if (!fields[i].empty()) entities.push_back(strip_brackets(fields[i]));
      }
      out.documents.emplace_back(fields[1], std::move(entities));
    } else if (fields[0] == "pair" && fields.size() == 4) {
      out.pairs.push_back({fields[1], fields[2], parse_double(fields[3], where)});
    } else {
      throw Error(ErrorKind::kParse, where + ": expected a 'doc' or 'pair' record");
    }
  }
  for (const auto& pair : out.pairs) {
    for (const auto& id : {pair.first, pair.second}) {
      if (!ids.count(id)) throw Error(ErrorKind::kParse, path + ": pair refers to unknown document " + id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Folds

std::vector<std::size_t> stratified_folds(std::span<const std::string> labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorKind::kInvalidArgument, "folds must be >= 2");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::vector<std::size_t> fold_of(labels.size(), 0);
  std::size_t next = 0;
  std::uint64_t class_no = 0;
  for (auto& [label, members] : by_class) {
    Rng rng = derive_rng(seed, 0xF01D, class_no++);
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[uniform_index(rng, i)]);
    }
    for (std::size_t idx : members) {
      fold_of[idx] = next;
      next = (next + 1) % folds;
    }
  }
  return fold_of;
}

std::vector<std::size_t> shuffled_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorKind::kInvalidArgument, "folds must be >= 2");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = derive_rng(seed, 0xF01D);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = i % folds;
  return fold_of;
}

// ---------------------------------------------------------------------------
// k-NN classification

ClassificationResult knn_classification_cv(const EmbeddingModel& model,
                                           const LabeledEntitySet& data,
                                           const KnnOptions& options) {
  if (options.k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  ClassificationResult result;
  std::vector<std::span<const float>> vectors;
  std::vector<std::string> labels;
  for (const auto& e : data) {
    auto idx = model.find(e.entity);
    if (!idx) {
      result.dropped.push_back(e.entity);
      continue;
    }
    vectors.push_back(model.vector(*idx));
    labels.push_back(e.label);
    result.evaluated.push_back(e.entity);
  }
  const std::set<std::string> classes(labels.begin(), labels.end());
  if (classes.size() < 2) {
    throw Error(ErrorKind::kInsufficientExamples,
                "classification needs at least two classes, got " + std::to_string(classes.size()));
  }
  if (labels.size() < options.folds) {
    throw Error(ErrorKind::kInsufficientExamples,
                std::to_string(labels.size()) + " examples cannot fill " +
                    std::to_string(options.folds) + " folds");
  }

  const auto fold_of = stratified_folds(labels, options.folds, options.seed);
  result.predictions.assign(labels.size(), {});
  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::size_t tested = 0;
    std::size_t correct = 0;
    for (std::size_t t = 0; t < labels.size(); ++t) {
      if (fold_of[t] != fold) continue;
      std::vector<std::pair<double, std::size_t>> dist;
      for (std::size_t r = 0; r < labels.size(); ++r) {
        if (fold_of[r] == fold) continue;
        dist.emplace_back(1.0 - cosine(vectors[t], vectors[r]), r);
      }
      const std::size_t k = std::min(options.k, dist.size());
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
      // label -> (votes, rank of its nearest neighbor)
      std::map<std::string, std::pair<std::size_t, std::size_t>> votes;
      for (std::size_t i = 0; i < k; ++i) {
        auto [it, inserted] = votes.try_emplace(labels[dist[i].second], 0, i);
        ++it->second.first;
      }
      const auto best = std::max_element(votes.begin(), votes.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first) return a.second.first < b.second.first;
        return a.second.second > b.second.second;
      });
      result.predictions[t] = best->first;
      ++tested;
      if (best->first == labels[t]) ++correct;
    }
    if (tested == 0) throw Error(ErrorKind::kInsufficientExamples, "empty fold");
    result.fold_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(tested));
  }
  result.accuracy = std::accumulate(result.fold_accuracy.begin(), result.fold_accuracy.end(), 0.0) /
                    static_cast<double>(result.fold_accuracy.size());
  return result;
}

// ---------------------------------------------------------------------------
// Ridge regression

RegressionResult linear_regression_cv(const EmbeddingModel& model,
                                      const std::vector<RegressionExample>& data,
                                      const RidgeOptions& options) {
  if (!(options.lambda >= 0)) throw Error(ErrorKind::kInvalidArgument, "lambda must be >= 0");
  RegressionResult result;
  const std::size_t dim = model.dimension();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.contains(data[i].entity)) {
      rows.push_back(i);
      result.evaluated.push_back(data[i].entity);
    } else {
      result.dropped.push_back(data[i].entity);
    }
  }
  const std::size_t n = rows.size();
  if (n < options.folds) {
    throw Error(ErrorKind::kInsufficientExamples, std::to_string(n) + " examples cannot fill " +
                                                      std::to_string(options.folds) + " folds");
  }

  Eigen::MatrixXd x(n, dim);
  Eigen::VectorXd y(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto v = model.vector(data[rows[r]].entity);
    for (std::size_t d = 0; d < dim; ++d) x(r, d) = v[d];
    y(r) = data[rows[r]].target;
  }

  result.fold_of = shuffled_folds(n, options.folds, options.seed);
  result.predictions.assign(n, 0.0);
  double sse = 0;
  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
    for (std::size_t r = 0; r < n; ++r) {
      (result.fold_of[r] == fold ? test : train).push_back(static_cast<Eigen::Index>(r));
    }
    const auto nt = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd xt = x(train, Eigen::all);
    Eigen::VectorXd yt = y(train);
    const Eigen::RowVectorXd mean = xt.colwise().mean();
    Eigen::RowVectorXd scale =
        ((xt.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(nt)).sqrt();
    for (Eigen::Index d = 0; d < scale.size(); ++d) {
      if (scale(d) == 0) scale(d) = 1;
    }
    const Eigen::MatrixXd z = (xt.rowwise() - mean).array().rowwise() / scale.array();
    const double y_mean = yt.mean();

    if (options.lambda == 0) {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
      if (qr.rank() < z.cols()) {
        throw Error(ErrorKind::kRankDeficient,
                    "training design has rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(z.cols()) + "; use a non-zero ridge lambda");
      }
    }
    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += options.lambda;
    const Eigen::VectorXd rhs = z.transpose() * (yt.array() - y_mean).matrix();
    const Eigen::VectorXd w = gram.ldlt().solve(rhs);

    for (Eigen::Index r : test) {
      const Eigen::RowVectorXd zr = (x.row(r) - mean).array() / scale.array();
      const double pred = y_mean + zr.dot(w);
      result.predictions[static_cast<std::size_t>(r)] = pred;
      sse += (pred - y(r)) * (pred - y(r));
    }
  }
  result.rmse = std::sqrt(sse / static_cast<double>(n));
  return result;
}

// ---------------------------------------------------------------------------
// Relatedness

EntityRelatednessResult entity_relatedness_eval(const EmbeddingModel& model,
                                                const EntityRelatednessGold& gold) {
  EntityRelatednessResult result;
  for (const auto& entry : gold) {
    if (!model.contains(entry.seed)) {
      result.missing.push_back(entry.seed);
      result.skipped.push_back(entry.seed);
      continue;
    }
    const auto seed_vec = model.vector(entry.seed);
    std::vector<double> cos;
    std::vector<double> relevance;
    std::size_t missing = 0;
    for (std::size_t rank = 0; rank < entry.candidates.size(); ++rank) {
      const auto& c = entry.candidates[rank];
      if (!model.contains(c)) {
        ++missing;
        result.missing.push_back(c);
        continue;
      }
      cos.push_back(cosine(seed_vec, model.vector(c)));
      relevance.push_back(-static_cast<double>(rank));
    }
    if (2 * missing > entry.candidates.size() || cos.size() < 2) {
      result.skipped.push_back(entry.seed);
      continue;
    }
    try {
      result.per_seed.push_back({entry.seed, spearman(cos, relevance), cos.size()});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateVariance) throw;
      result.skipped.push_back(entry.seed);
    }
  }
  if (!result.per_seed.empty()) {
    double sum = 0;
    for (const auto& s : result.per_seed) sum += s.spearman;
    result.mean = sum / static_cast<double>(result.per_seed.size());
  }
  return result;
}

DocumentRelatednessResult document_relatedness_eval(const EmbeddingModel& model,
                                                    const DocumentRelatednessGold& gold) {
  const std::size_t dim = model.dimension();
  std::unordered_map<std::string, std::vector<double>> centroids;
  for (const auto& [id, entities] : gold.documents) {
    std::vector<double> c(dim, 0.0);
    std::size_t used = 0;
    for (const auto& e : entities) {
      auto idx = model.find(e);
      if (!idx) continue;
      const auto v = model.vector(*idx);
      for (std::size_t d = 0; d < dim; ++d) c[d] += v[d];
      ++used;
    }
    if (used == 0) continue;
    for (double& x : c) x /= static_cast<double>(used);
    centroids.emplace(id, std::move(c));
  }

  DocumentRelatednessResult result;
  for (const auto& pair : gold.pairs) {
    auto a = centroids.find(pair.first);
    auto b = centroids.find(pair.second);
    if (a == centroids.end() || b == centroids.end()) {
      result.excluded.push_back(pair.first + "/" + pair.second);
      continue;
    }
    result.predicted.push_back(cosine(std::span<const double>(a->second),
                                      std::span<const double>(b->second)));
    result.gold.push_back(pair.score);
  }
  result.pearson = pearson(result.predicted, result.gold);
  result.spearman = spearman(result.predicted, result.gold);
  result.combined = harmonic_mean(result.pearson, result.spearman);
  return result;
}

// ---------------------------------------------------------------------------
// Density

DensityReport walk_density(const Sentences& walks, std::span<const std::string> anchors) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::set<std::tuple<std::uint32_t, std::string, std::uint32_t>> labeled;
  bool any = false;
  auto id_of = [&](const std::string& s) {
    return ids.try_emplace(s, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  for (const auto& walk : walks) {
    if (walk.empty()) continue;
    any = true;
    std::uint32_t prev = id_of(walk[0]);
    for (std::size_t i = 2; i < walk.size(); i += 2) {
      const std::uint32_t cur = id_of(walk[i]);
      labeled.emplace(prev, walk[i - 1], cur);
      if (cur != prev) pairs.emplace(prev, cur);
      prev = cur;
    }
  }
  if (!any) throw Error(ErrorKind::kEmptyCorpus, "density of an empty corpus");

  DensityReport report;
  report.nodes = ids.size();
  report.edges = pairs.size();
  report.labeled_edges = labeled.size();
  if (report.nodes >= 2) {
    report.density = static_cast<double>(report.edges) /
                     (static_cast<double>(report.nodes) * static_cast<double>(report.nodes - 1));
  }
  if (!anchors.empty()) {
    std::vector<std::size_t> degree(ids.size(), 0);
    for (const auto& [u, v] : pairs) {
      ++degree[u];
      ++degree[v];
    }
    std::set<std::string> unique(anchors.begin(), anchors.end());
    double total = 0;
    for (const auto& a : unique) {
      auto it = ids.find(a);
      if (it != ids.end()) total += static_cast<double>(degree[it->second]);
    }
    report.mean_anchor_degree = total / static_cast<double>(unique.size());
  }
  return report;
}

DensityReport walk_density(const KnowledgeGraph& graph, const WalkCorpus& corpus) {
  std::vector<std::string> anchors;
  anchors.reserve(corpus.entities.size());
  for (NodeId v : corpus.entities) anchors.push_back(graph.node_name(v));
  return walk_density(corpus_sentences(graph, corpus), anchors);
}

// ---------------------------------------------------------------------------
// Reporting

std::string strategy_tag(std::string_view walk_mode, std::size_t walks, std::size_t depth,
                         TrainMode training, std::size_t dimension) {
  std::string mode(walk_mode);
  if (!mode.empty()) {
    mode[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(mode[0])));
    for (std::size_t i = 1; i < mode.size(); ++i) {
      mode[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(mode[i])));
    }
  }
  return mode + "_" + std::to_string(walks) + "_" + std::to_string(depth) + "_" +
         std::string(train_mode_name(training)) + "_" + std::to_string(dimension);
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "strategy,task,metric,value\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.4f", r.value);
    out << r.strategy << ',' << r.task << ',' << r.metric << ',' << buf << '\n';
  }
}

double out_of_vocabulary_fraction(const EmbeddingModel& model,
                                  std::span<const std::string> entities) {
  if (entities.empty()) return 0.0;
  std::size_t missing = 0;
  for (const auto& e : entities) {
    if (!model.contains(e)) ++missing;
  }
  return static_cast<double>(missing) / static_cast<double>(entities.size());
}

}  // namespace kglight
