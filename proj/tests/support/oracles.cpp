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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace kglight::testing {

namespace {

std::vector<double> as_double(std::span<const float> v) { return {v.begin(), v.end()}; }

}  // namespace

double pearson_direct(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

double spearman_rank_formula(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = brute_average_ranks(x);
  const auto ry = brute_average_ranks(y);
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double n = static_cast<double>(x.size());
  return 1 - 6 * d2 / (n * (n * n - 1));
}

std::vector<double> brute_average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto less = std::count_if(v.begin(), v.end(), [&](double w) { return w < v[i]; });
    const auto same = std::count(v.begin(), v.end(), v[i]);
    r[i] = static_cast<double>(less) + static_cast<double>(same + 1) / 2;
  }
  return r;
}

double cosine_direct(const std::vector<double>& u, const std::vector<double>& v) {
  long double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<long double>(u[i]) * v[i];
    nu += static_cast<long double>(u[i]) * u[i];
    nv += static_cast<long double>(v[i]) * v[i];
  }
  return static_cast<double>(dot / std::sqrt(nu * nv));
}

std::vector<double> gaussian_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<double> ridge_normal_equations(const EmbeddingModel& model,
                                           const std::vector<RegressionExample>& data,
                                           const std::vector<std::size_t>& fold_of,
                                           std::size_t folds, double lambda) {
  const std::size_t dim = model.dimension();
  std::vector<std::vector<double>> x;
  for (const auto& e : data) x.push_back(as_double(model.vector(e.entity)));
  std::vector<double> predictions(data.size());
  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] != fold) train.push_back(i);
    }
    const double nt = static_cast<double>(train.size());
    std::vector<double> mean(dim, 0), sd(dim, 0);
    for (std::size_t i : train) {
      for (std::size_t d = 0; d < dim; ++d) mean[d] += x[i][d] / nt;
    }
    for (std::size_t i : train) {
      for (std::size_t d = 0; d < dim; ++d) sd[d] += (x[i][d] - mean[d]) * (x[i][d] - mean[d]) / nt;
    }
    for (auto& s : sd) s = s > 0 ? std::sqrt(s) : 1.0;
    auto features = [&](std::size_t i) {
      std::vector<double> f = {1.0};
      for (std::size_t d = 0; d < dim; ++d) f.push_back((x[i][d] - mean[d]) / sd[d]);
      return f;
    };
    std::vector<std::vector<double>> ata(dim + 1, std::vector<double>(dim + 1, 0));
    std::vector<double> aty(dim + 1, 0);
    for (std::size_t i : train) {
      const auto f = features(i);
      for (std::size_t r = 0; r <= dim; ++r) {
        aty[r] += f[r] * data[i].target;
        for (std::size_t c = 0; c <= dim; ++c) ata[r][c] += f[r] * f[c];
      }
    }
    for (std::size_t d = 1; d <= dim; ++d) ata[d][d] += lambda;
    const auto beta = gaussian_solve(ata, aty);
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] != fold) continue;
      const auto f = features(i);
      double p = 0;
      for (std::size_t r = 0; r <= dim; ++r) p += beta[r] * f[r];
      predictions[i] = p;
    }
  }
  return predictions;
}

std::vector<std::string> knn_brute_force(const EmbeddingModel& model, const LabeledEntitySet& data,
                                         const std::vector<std::size_t>& fold_of, std::size_t k) {
  std::vector<std::vector<double>> x;
  for (const auto& e : data) x.push_back(as_double(model.vector(e.entity)));
  std::vector<std::string> out;
  for (std::size_t t = 0; t < data.size(); ++t) {
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (fold_of[j] != fold_of[t]) ranked.emplace_back(1 - cosine_direct(x[t], x[j]), j);
    }
    std::sort(ranked.begin(), ranked.end());
    std::map<std::string, std::pair<std::size_t, std::size_t>> votes;  // label -> (count, first rank)
    for (std::size_t r = 0; r < std::min(k, ranked.size()); ++r) {
      auto& v = votes.try_emplace(data[ranked[r].second].label, 0, r).first->second;
      ++v.first;
    }
    std::string best;
    std::pair<std::size_t, std::size_t> best_vote{0, 0};
    for (const auto& [label, v] : votes) {
      if (best.empty() || v.first > best_vote.first ||
          (v.first == best_vote.first && v.second < best_vote.second)) {
        best = label;
        best_vote = v;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace kglight::testing
