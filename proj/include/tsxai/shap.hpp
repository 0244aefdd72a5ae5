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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsxai/explanation.hpp"
#include "tsxai/matrix.hpp"

namespace tsxai {

struct ShapConfig {
  std::size_t n_iterations = 2000;
  Matrix background;
  std::size_t top_k = 5;
  std::uint64_t seed = 0;
};

struct ShapResult {
  std::vector<double> phi;
  double baseline = 0.0;  // mean prediction over the background rows
  double prediction = 0.0;
};

inline constexpr std::size_t kMaxExactShapFeatures = 20;

// Enumerates all 2^d coalitions. Absent features take background values and
// the coalition value is averaged over background rows.
ShapResult exact_shapley(const PredictFn& predict_fn, std::span<const double> instance,
                         const Matrix& background);

// Permutation sampling: every iteration draws a feature order and one
// background row, then walks the order switching features from the
// background row to the instance; each step's change in prediction is that
// feature's marginal contribution. Iterations come in antithetic pairs (an
// order and its reverse share a row) and rows are drawn without replacement
// in reshuffled passes over the background.
ShapResult sampled_shapley(const PredictFn& predict_fn, std::span<const double> instance,
                           const ShapConfig& cfg);

// Whole matrix when it has at most max_rows rows, else max_rows evenly
// spaced rows.
Matrix default_background(const Matrix& train, std::size_t max_rows = 100);

Explanation summarize_instance(const ShapResult& result,
                               const std::vector<std::string>& feature_names,
                               std::size_t top_k);

}  // namespace tsxai
