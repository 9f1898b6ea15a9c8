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


// Brute-force and closed-form references for the metric primitives. None of
// these call into the library code they are compared against.

#pragma once

#include <string>
#include <vector>

#include "kglight/eval.hpp"
#include "kglight/trainer.hpp"

namespace kglight::testing {

/// Single-pass textbook formula in long double.
double pearson_direct(const std::vector<double>& x, const std::vector<double>& y);

/// 1 - 6 sum(d^2) / (n (n^2 - 1)); valid only without ties.
double spearman_rank_formula(const std::vector<double>& x, const std::vector<double>& y);

/// Average ranks by counting: less + (equal + 1) / 2.
std::vector<double> brute_average_ranks(const std::vector<double>& v);

double cosine_direct(const std::vector<double>& u, const std::vector<double>& v);

/// Dense Gaussian elimination with partial pivoting.
std::vector<double> gaussian_solve(std::vector<std::vector<double>> a, std::vector<double> b);

/// Held-out ridge predictions from the augmented normal equations
/// ([1 Z]^T [1 Z] + diag(0, l, ..., l)) b = [1 Z]^T y, with Z standardized by
/// training-fold mean and population deviation.
std::vector<double> ridge_normal_equations(const EmbeddingModel& model,
                                           const std::vector<RegressionExample>& data,
                                           const std::vector<std::size_t>& fold_of,
                                           std::size_t folds, double lambda);

/// Held-out k-NN predictions by full sort over 1 - cosine; vote ties go to the
/// label whose first neighbor ranks closest.
std::vector<std::string> knn_brute_force(const EmbeddingModel& model, const LabeledEntitySet& data,
                                         const std::vector<std::size_t>& fold_of, std::size_t k);

}  // namespace kglight::testing
