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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kglight/random.hpp"

namespace kglight {

using Sentences = std::vector<std::vector<std::string>>;

enum class TrainMode { kCbow, kSkipGram };

std::string_view train_mode_name(TrainMode mode);

struct TrainConfig {
  TrainMode mode = TrainMode::kSkipGram;
  std::size_t dimension = 100;
  /// Context radius in tokens.
  std::size_t window = 5;
  std::size_t negatives = 25;
  std::size_t epochs = 5;
  /// 0 selects the mode default (0.025 for skip-gram, 0.05 for CBOW).
  double initial_learning_rate = 0.0;
  std::size_t min_count = 1;
  std::uint64_t seed = 1;
  /// > 1 runs lock-free parallel SGD; results are then not bit-reproducible.
  unsigned workers = 1;

  double learning_rate() const;
};

void validate(const TrainConfig& cfg);

/// Token <-> index table sorted by descending frequency (ties: first seen),
/// with an alias table over count^0.75 for negative sampling.
class Vocabulary {
 public:
  static constexpr double kSamplingPower = 0.75;

  Vocabulary() = default;
  Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(std::size_t index) const { return tokens_.at(index); }
  std::uint64_t count(std::size_t index) const { return counts_.at(index); }
  std::optional<std::size_t> find(std::string_view token) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// Probability that `sample_negative` returns `index`.
  double sampling_probability(std::size_t index) const;
  std::size_t sample_negative(Rng& rng) const;

 private:
  void build_alias_table();

  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> probability_;
  std::vector<double> alias_cut_;
  std::vector<std::size_t> alias_;
};

/// Throws kEmptyCorpus when `corpus` has no tokens; the result may be empty
/// when min_count filters everything out.
Vocabulary build_vocabulary(const Sentences& corpus, std::size_t min_count);

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(Vocabulary vocab, std::size_t dimension, std::vector<float> input,
                 std::vector<float> output, TrainConfig config);

  /// Model over the given vectors (row-major, tokens.size() x dimension),
  /// with unit counts and no output table.
  static EmbeddingModel from_vectors(std::vector<std::string> tokens, std::size_t dimension,
                                     std::vector<float> values);

  std::size_t size() const { return vocab_.size(); }
  std::size_t dimension() const { return dimension_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const TrainConfig& config() const { return config_; }

  std::optional<std::size_t> find(std::string_view token) const { return vocab_.find(token); }
  bool contains(std::string_view token) const { return vocab_.find(token).has_value(); }

  /// Published (input-table) vector of a token.
  std::span<const float> vector(std::size_t index) const;
  /// Throws kUnknownToken.
  std::span<const float> vector(std::string_view token) const;
  std::span<const float> context_vector(std::size_t index) const;

  const std::vector<float>& input_table() const { return input_; }

  /// Uniformly scaled copy (used for invariance checks).
  EmbeddingModel scaled(float factor) const;

 private:
  Vocabulary vocab_;
  std::size_t dimension_ = 0;
  std::vector<float> input_;
  std::vector<float> output_;
  TrainConfig config_;
};

struct EpochProgress {
  std::size_t epoch = 0;
  double mean_loss = 0;
  double tokens_per_second = 0;
  double learning_rate = 0;
};

struct TrainReport {
  std::vector<double> epoch_loss;
  std::uint64_t tokens_per_epoch = 0;
};

using ProgressCallback = std::function<void(const EpochProgress&)>;

/// Negative-sampling SGD over `corpus`. Throws kEmptyVocabulary and
/// kNonFiniteLoss.
EmbeddingModel train(const Sentences& corpus, const TrainConfig& cfg,
                     TrainReport* report = nullptr, const ProgressCallback& progress = {});

/// Text format: header "<count> <dimension>", then "<token> <v1> ... <vd>"
/// per line. Floats use the shortest round-trip representation.
void save_model(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_model(const std::string& path);

/// FNV-1a digest of tokens and vector bits, as 16 hex digits.
std::string model_digest(const EmbeddingModel& model);

}  // namespace kglight
