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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kglight {

class EmbeddingModel;

/// u.v / (|u| |v|), accumulated in double. Throws kZeroNorm and
/// kDimensionMismatch.
double cosine(std::span<const float> u, std::span<const float> v);
double cosine(std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::string token;
  double score = 0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// The min(k, |V| - 1) tokens most cosine-similar to `token`, excluding it;
/// ties go to the lower vocabulary index. Exhaustive scan.
std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, std::string_view token,
                                        std::size_t k);

/// Cosine similarity of two vocabulary tokens. Throws kUnknownToken.
double similarity(const EmbeddingModel& model, std::string_view left, std::string_view right);

/// Sample Pearson correlation. Throws kDegenerateVariance.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> xs);

/// Pearson correlation of the average-rank sequences.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Harmonic mean of two correlations. Defined only when both are positive;
/// otherwise `value` is empty and the raw inputs are carried through.
struct HarmonicMean {
  std::optional<double> value;
  double first = 0;
  double second = 0;

  bool non_positive() const { return !value.has_value(); }
  std::string_view status() const { return value ? "ok" : "non-positive-correlation"; }
};

HarmonicMean harmonic_mean(double a, double b);

}  // namespace kglight
