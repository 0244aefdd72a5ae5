/*
 * Copyright 2026 The tsxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsxai {

enum class ErrorCode {
  // Input validation.
  kParse,
  kMissingPeriod,
  kNonNumericCell,
  kDuplicatePeriod,
  kUnknownTarget,
  kUnknownColumn,
  kEmptyInput,
  kUndefinedMean,
  kLagTooLarge,
  kEmptySplit,
  kDimensionMismatch,
  kTooFewRows,
  kTooFewSamples,
  kInvalidArgument,
  kZeroTruth,
  kTooManyFeatures,
  kEmptyBackground,
  kEmptyTable,
  kInvalidSummary,
  kInvalidDf,
  kZeroVariance,
  kConstantInput,
  // Numeric failures.
  kNonFinite,
  kNoConvergence,
  kSingularFit,
};

std::string_view to_string(ErrorCode code);

// True for failures of a numerical procedure as opposed to bad input.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tsxai
