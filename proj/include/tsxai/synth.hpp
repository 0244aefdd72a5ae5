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
#include <string>
#include <vector>

#include "tsxai/explanation.hpp"
#include "tsxai/period.hpp"
#include "tsxai/timeseries.hpp"

namespace tsxai {

enum class SynthKind {
  kSales,  // seasonal activity streams driving a sparse lagged target
  kAr1,    // target is AR(1) in itself; other columns are white noise
};

// One additive term of the target's generating function.
struct SynthTerm {
  std::string column;
  int lag = 0;
  double coef = 0.0;
  bool saturating = false;  // coef * tanh((x - center) / scale) instead of coef * x
  double center = 0.0;
  double scale = 1.0;

  friend bool operator==(const SynthTerm&, const SynthTerm&) = default;
};

// Ground truth written next to the synthetic CSV.
struct SynthSpec {
  SynthKind kind = SynthKind::kSales;
  std::uint64_t seed = 0;
  int months = 0;
  int n_features = 0;
  YearMonth start{2015, 1};
  std::string target = "deals";
  double intercept = 0.0;
  double noise_sd = 0.0;
  std::vector<SynthTerm> terms;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

struct SynthOutput {
  TimeSeriesFrame frame;
  SynthSpec spec;
};

// Columns feature1..featureN then the target. Throws kInvalidArgument for
// months < 24 or n_features < 1.
SynthOutput generate_synthetic(std::uint64_t seed, int months, int n_features,
                               SynthKind kind = SynthKind::kSales);

// Noise-free generating function evaluated on a supervised feature row laid
// out as `feature_names` (the dataset lag must cover every term's lag).
PredictFn synthetic_predict_fn(const SynthSpec& spec, const std::vector<std::string>& feature_names);

}  // namespace tsxai
