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

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kglight/trainer.hpp"
#include "kglight/vector_ops.hpp"

namespace kglight {

class KnowledgeGraph;
struct WalkCorpus;

// ---------------------------------------------------------------------------
// Gold data

struct LabeledEntity {
  std::string entity;
  /// Class name, or the numeric target for regression.
  std::string label;
};

using LabeledEntitySet = std::vector<LabeledEntity>;

/// Tab-separated `entity<TAB>label` lines; `#` comments and blank lines are
/// ignored, IRIs may be written with or without angle brackets.
LabeledEntitySet read_labeled_entities(const std::string& path);

struct RegressionExample {
  std::string entity;
  double target = 0;
};

/// Parses labels as finite numbers; throws kParse otherwise.
std::vector<RegressionExample> to_regression(const LabeledEntitySet& data);

/// Entity relatedness: a seed and its candidates, most related first.
struct RankedCandidates {
  std::string seed;
  std::vector<std::string> candidates;
};

using EntityRelatednessGold = std::vector<RankedCandidates>;

/// Seed lines start at column 0; candidate lines below a seed are indented
/// (tab or spaces) and listed from most to least related.
EntityRelatednessGold read_entity_relatedness_gold(const std::string& path);

struct DocumentPair {
  std::string first;
  std::string second;
  double score = 0;
};

struct DocumentRelatednessGold {
  /// (document id, entities), in file order.
  std::vector<std::pair<std::string, std::vector<std::string>>> documents;
  std::vector<DocumentPair> pairs;
};

/// Tab-separated records:
///   doc<TAB><id><TAB><entity>[<TAB><entity>...]
///   pair<TAB><id><TAB><id><TAB><gold score>
DocumentRelatednessGold read_document_relatedness_gold(const std::string& path);

// ---------------------------------------------------------------------------
// Cross-validation

/// Stratified fold index per example: each class is shuffled with `seed`
/// and dealt round-robin, continuing where the previous class stopped.
std::vector<std::size_t> stratified_folds(std::span<const std::string> labels, std::size_t folds,
                                          std::uint64_t seed);

/// Fold index per example for unstratified data.
std::vector<std::size_t> shuffled_folds(std::size_t n, std::size_t folds, std::uint64_t seed);

struct KnnOptions {
  std::size_t k = 3;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
};

struct ClassificationResult {
  /// Mean of the per-fold accuracies.
  double accuracy = 0;
  std::vector<double> fold_accuracy;
  /// Predicted label per evaluated example, in input order.
  std::vector<std::string> predictions;
  std::vector<std::string> evaluated;
  /// Entities missing from the model vocabulary.
  std::vector<std::string> dropped;
};

/// k-NN with distance 1 - cosine and majority vote; vote ties go to the label
/// of the nearest tied neighbor. Throws kInsufficientExamples when fewer than
/// two classes remain or a fold would be empty.
ClassificationResult knn_classification_cv(const EmbeddingModel& model,
                                           const LabeledEntitySet& data,
                                           const KnnOptions& options = {});

struct RidgeOptions {
  std::size_t folds = 10;
  /// Ridge damping on the standardized features; the intercept is not damped.
  double lambda = 1e-3;
  std::uint64_t seed = 1;
};

struct RegressionResult {
  /// Root-mean-squared error pooled over all held-out predictions.
  double rmse = 0;
  std::vector<double> predictions;
  std::vector<std::size_t> fold_of;
  std::vector<std::string> evaluated;
  std::vector<std::string> dropped;
};

/// Ridge regression on the entity vectors. Features are standardized with
/// training-fold statistics. Throws kRankDeficient when lambda is 0 and the
/// training design is singular.
RegressionResult linear_regression_cv(const EmbeddingModel& model,
                                      const std::vector<RegressionExample>& data,
                                      const RidgeOptions& options = {});

// ---------------------------------------------------------------------------
// Relatedness

struct SeedScore {
  std::string seed;
  double spearman = 0;
  std::size_t candidates_used = 0;
};

struct EntityRelatednessResult {
  std::vector<SeedScore> per_seed;
  double mean = 0;
  /// Seeds not scored (missing seed, > half the candidates missing, or < 2 left).
  std::vector<std::string> skipped;
  std::vector<std::string> missing;
};

/// Ranks each seed's candidates by cosine to the seed and correlates that
/// ranking with the gold order.
EntityRelatednessResult entity_relatedness_eval(const EmbeddingModel& model,
                                                const EntityRelatednessGold& gold);

struct DocumentRelatednessResult {
  double pearson = 0;
  double spearman = 0;
  HarmonicMean combined;
  std::vector<double> predicted;
  std::vector<double> gold;
  /// Pairs excluded because a document has no in-vocabulary entity.
  std::vector<std::string> excluded;
};

/// Document vector = centroid of its in-vocabulary entity vectors; pair score
/// = cosine of centroids.
DocumentRelatednessResult document_relatedness_eval(const EmbeddingModel& model,
                                                    const DocumentRelatednessGold& gold);

// ---------------------------------------------------------------------------
// Walk-subgraph density

struct DensityReport {
  std::size_t nodes = 0;
  /// Distinct ordered node pairs (u, v), u != v, adjacent in some walk.
  std::size_t edges = 0;
  /// Distinct (u, predicate, v) transitions.
  std::size_t labeled_edges = 0;
  /// edges / (nodes * (nodes - 1)); 0 when nodes < 2.
  double density = 0;
  /// Mean in+out degree of the anchors in the assembled graph.
  double mean_anchor_degree = 0;
  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

/// Throws kEmptyCorpus.
DensityReport walk_density(const Sentences& walks, std::span<const std::string> anchors);
DensityReport walk_density(const KnowledgeGraph& graph, const WalkCorpus& corpus);

// ---------------------------------------------------------------------------
// Reporting

/// `<Mode>_<walks>_<depth>_<TRAINING>_<dim>`, e.g. Light_500_4_SG_100.
std::string strategy_tag(std::string_view walk_mode, std::size_t walks, std::size_t depth,
                         TrainMode training, std::size_t dimension);

struct ResultRow {
  std::string strategy;
  std::string task;
  std::string metric;
  double value = 0;
};

/// CSV with header `strategy,task,metric,value`; values use 4 decimals.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Fraction of `entities` absent from the model vocabulary.
double out_of_vocabulary_fraction(const EmbeddingModel& model,
                                  std::span<const std::string> entities);

}  // namespace kglight
