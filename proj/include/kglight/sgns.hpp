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

// Skip-gram negative-sampling objective for one (input, positive, negatives)
// example:
//
//   loss = -log s(u_pos . v) - sum_k log s(-u_neg_k . v),   s = logistic
//
// v is the input ("center") vector, u are output ("context") vectors. The
// trainer runs the same kernel in float; tests instantiate it in double.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "kglight/error.hpp"

namespace kglight {

template <typename Real>
Real logistic(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

/// log s(x), stable for large |x|.
template <typename Real>
Real log_logistic(Real x) {
  return x >= Real(0) ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename Real>
Real dot(std::span<const Real> a, std::span<const Real> b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// One logistic term with `label` in {0, 1}. Moves `output` by lr * grad and
/// accumulates the matching step for the input vector into `input_step`
/// (applied by the caller once all terms of the example are done). Returns
/// the term's loss at the pre-update point.
template <typename Real>
Real sgns_term(std::span<const Real> input, std::span<Real> output, Real label, Real lr,
               std::span<Real> input_step) {
  const std::size_t n = input.size();
  Real f = 0;
  for (std::size_t i = 0; i < n; ++i) f += input[i] * output[i];
  const Real g = lr * (label - logistic(f));
  for (std::size_t i = 0; i < n; ++i) input_step[i] += g * output[i];
  for (std::size_t i = 0; i < n; ++i) output[i] += g * input[i];
  return label > Real(0.5) ? -log_logistic(f) : -log_logistic(-f);
}

template <typename Real>
void check_dimensions(std::size_t dim, std::span<const Real> other) {
  if (other.size() != dim) {
    throw Error(ErrorKind::kDimensionMismatch, "expected dimension " + std::to_string(dim) +
                                                   ", got " + std::to_string(other.size()));
  }
}

template <typename Real>
Real sgns_loss(std::span<const Real> center, std::span<const Real> context,
               const std::vector<std::span<const Real>>& negatives) {
  check_dimensions(center.size(), context);
  Real loss = -log_logistic(dot(context, center));
  for (const auto& neg : negatives) {
    check_dimensions(center.size(), neg);
    loss -= log_logistic(-dot(neg, center));
  }
  return loss;
}

template <typename Real>
struct SgnsGradient {
  std::vector<Real> center;
  std::vector<Real> context;
  std::vector<std::vector<Real>> negatives;
};

/// Analytic gradient of sgns_loss with respect to every participating vector.
template <typename Real>
SgnsGradient<Real> sgns_gradient(std::span<const Real> center, std::span<const Real> context,
                                 const std::vector<std::span<const Real>>& negatives) {
  const std::size_t dim = center.size();
  check_dimensions(dim, context);
  SgnsGradient<Real> g;
  g.center.assign(dim, Real(0));
  const Real pos = logistic(dot(context, center)) - Real(1);
  g.context.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g.context[i] = pos * center[i];
    g.center[i] += pos * context[i];
  }
  for (const auto& neg : negatives) {
    check_dimensions(dim, neg);
    const Real s = logistic(dot(neg, center));
    std::vector<Real> gn(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      gn[i] = s * center[i];
      g.center[i] += s * neg[i];
    }
    g.negatives.push_back(std::move(gn));
  }
  return g;
}

/// In-place gradient-descent step on the SGNS loss, using the same kernel as
/// the trainer. Returns the loss before the step.
template <typename Real>
Real sgns_step(std::span<Real> center, std::span<Real> context,
               const std::vector<std::span<Real>>& negatives, Real lr) {
  const std::size_t dim = center.size();
  check_dimensions<Real>(dim, context);
  for (const auto& neg : negatives) check_dimensions<Real>(dim, neg);
  std::vector<Real> step(dim, Real(0));
  std::span<const Real> in(center.data(), dim);
  Real loss = sgns_term<Real>(in, context, Real(1), lr, step);
  for (const auto& neg : negatives) loss += sgns_term<Real>(in, neg, Real(0), lr, step);
  for (std::size_t i = 0; i < dim; ++i) center[i] += step[i];
  return loss;
}

}  // namespace kglight
