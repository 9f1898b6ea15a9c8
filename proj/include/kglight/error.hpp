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

#include <stdexcept>
#include <string>
#include <string_view>

namespace kglight {

/// Machine-readable failure categories. Each maps to a stable kebab-case name
/// that appears in CLI diagnostics and service error bodies.
enum class ErrorKind {
  kIo,
  kParse,
  kUnsupportedConstruct,
  kUnknownNode,
  kUnknownToken,
  kMissingEntity,
  kEmptyCorpus,
  kEmptyVocabulary,
  kEmptyEntitySet,
  kDimensionMismatch,
  kZeroNorm,
  kDegenerateVariance,
  kNonFiniteLoss,
  kInsufficientExamples,
  kRankDeficient,
  kInvalidArgument,
  kMalformedModel,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kglight
