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

#include "kglight/error.hpp"

namespace kglight {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io-error";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kUnsupportedConstruct: return "unsupported-construct";
    case ErrorKind::kUnknownNode: return "unknown-node";
    case ErrorKind::kUnknownToken: return "unknown-token";
    case ErrorKind::kMissingEntity: return "missing-entity";
    case ErrorKind::kEmptyCorpus: return "empty-corpus";
    case ErrorKind::kEmptyVocabulary: return "empty-vocabulary";
    case ErrorKind::kEmptyEntitySet: return "empty-entity-set";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kZeroNorm: return "zero-norm";
    case ErrorKind::kDegenerateVariance: return "degenerate-variance";
    case ErrorKind::kNonFiniteLoss: return "non-finite-loss";
    case ErrorKind::kInsufficientExamples: return "insufficient-examples";
    case ErrorKind::kRankDeficient: return "rank-deficient";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kMalformedModel: return "malformed-model";
  }
  return "unknown";
}

}  // namespace kglight
