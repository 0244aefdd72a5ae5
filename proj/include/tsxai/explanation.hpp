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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tsxai {

// Black-box regressor being explained.
using PredictFn = std::function<double(std::span<const double>)>;

enum class ExplainMethod { kLime, kShap };

std::string method_name(ExplainMethod m);
ExplainMethod parse_method(std::string_view name);

struct FeatureAttribution {
  std::string feature;
  double weight = 0.0;
  std::string condition;  // empty for Shapley attributions

  friend bool operator==(const FeatureAttribution&, const FeatureAttribution&) = default;
};

struct Explanation {
  ExplainMethod method = ExplainMethod::kLime;
  std::string period;
  double prediction = 0.0;
  double baseline = 0.0;  // surrogate intercept (lime) or background mean (shap)
  std::vector<FeatureAttribution> attributions;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

// Orders by |weight| descending, then by feature name, and keeps the first
// top_k entries.
void rank_attributions(std::vector<FeatureAttribution>& attributions, std::size_t top_k);

}  // namespace tsxai
