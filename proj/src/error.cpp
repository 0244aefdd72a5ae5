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

#include "tsxai/error.hpp"

namespace tsxai {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kMissingPeriod: return "MissingPeriod";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kDuplicatePeriod: return "DuplicatePeriod";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUndefinedMean: return "UndefinedMean";
    case ErrorCode::kLagTooLarge: return "LagTooLarge";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroTruth: return "ZeroTruth";
    case ErrorCode::kTooManyFeatures: return "TooManyFeatures";
    case ErrorCode::kEmptyBackground: return "EmptyBackground";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kInvalidSummary: return "InvalidSummary";
    case ErrorCode::kInvalidDf: return "InvalidDf";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingularFit: return "SingularFit";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) {
  return code == ErrorCode::kNonFinite || code == ErrorCode::kNoConvergence ||
         code == ErrorCode::kSingularFit;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace tsxai
