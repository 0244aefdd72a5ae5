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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsxai/explanation.hpp"
#include "tsxai/matrix.hpp"
#include "tsxai/timeseries.hpp"

namespace tsxai {

struct LimeConfig {
  std::size_t n_samples = 5000;
  std::optional<double> kernel_width;  // nullopt = auto, 0.75 * sqrt(d)
  std::size_t top_k = 5;
  double ridge_penalty = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Per-feature training statistics: population std, quartiles by linear
// interpolation between order statistics.
struct TrainStats {
  std::vector<std::string> feature_names;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> q1, q2, q3;

  std::size_t n_features() const { return mean.size(); }
};

TrainStats compute_train_stats(const SupervisedDataset& train);
TrainStats compute_train_stats(const Matrix& X, std::vector<std::string> feature_names);

// Row 0 is the instance; the remaining n_samples - 1 rows add N(0, std_j^2)
// noise per feature.
Matrix perturb_samples(std::span<const double> instance, const TrainStats& stats,
                       std::size_t n_samples, std::uint64_t seed);

// exp(-||instance - sample||^2 / kernel_width^2) for every sample row.
std::vector<double> proximity_weights(std::span<const double> instance, const Matrix& samples,
                                      double kernel_width);

// Quartile bracket of `value` for display, e.g. "0.25 < name <= 0.50".
std::string quartile_condition(const std::string& name, double value, double q1, double q2,
                               double q3);

Explanation explain_lime(const PredictFn& predict_fn, std::span<const double> instance,
                         const TrainStats& stats, const LimeConfig& cfg);

}  // namespace tsxai
