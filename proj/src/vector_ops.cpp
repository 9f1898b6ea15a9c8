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

#include "kglight/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kglight/error.hpp"
#include "kglight/trainer.hpp"

namespace kglight {

namespace {

template <typename T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
  double uv = 0;
  double uu = 0;
  double vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i];
    const double b = v[i];
    uv += a * b;
    uu += a * a;
    vv += b * b;
  }
  if (uu == 0 || vv == 0) throw Error(ErrorKind::kZeroNorm, "cosine of a zero vector");
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace

double cosine(std::span<const float> u, std::span<const float> v) { return cosine_impl(u, v); }
double cosine(std::span<const double> u, std::span<const double> v) { return cosine_impl(u, v); }

double similarity(const EmbeddingModel& model, std::string_view left, std::string_view right) {
  return cosine(model.vector(left), model.vector(right));
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, std::string_view token,
                                        std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  auto query_index = model.find(token);
  if (!query_index) throw Error(ErrorKind::kUnknownToken, std::string(token));
  const auto query = model.vector(*query_index);

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (i == *query_index) continue;
    scored.emplace_back(cosine(query, model.vector(i)), i);
  }
  const std::size_t n = std::min(k, scored.size());
  auto better = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n),
                    scored.end(), better);
  std::vector<Neighbor> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({model.vocabulary().token(scored[i].second), scored[i].first});
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "correlation inputs differ in length");
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::kInsufficientExamples, "correlation needs at least 2 points");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw Error(ErrorKind::kDegenerateVariance, "an input sequence is constant");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "correlation inputs differ in length");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

HarmonicMean harmonic_mean(double a, double b) {
  HarmonicMean out;
  out.first = a;
  out.second = b;
  if (a > 0 && b > 0) out.value = 2.0 * a * b / (a + b);
  return out;
}

}  // namespace kglight
