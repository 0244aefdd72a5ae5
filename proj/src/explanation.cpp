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

#include "tsxai/explanation.hpp"

#include <algorithm>
#include <cmath>

#include "tsxai/error.hpp"

namespace tsxai {

std::string method_name(ExplainMethod m) { return m == ExplainMethod::kLime ? "lime" : "shap"; }

ExplainMethod parse_method(std::string_view name) {
  if (name == "lime") return ExplainMethod::kLime;
  if (name == "shap") return ExplainMethod::kShap;
  throw Error(ErrorCode::kParse, "unknown explanation method '" + std::string(name) + "'");
}

void rank_attributions(std::vector<FeatureAttribution>& attributions, std::size_t top_k) {
  std::sort(attributions.begin(), attributions.end(),
            [](const FeatureAttribution& a, const FeatureAttribution& b) {
              const double wa = std::abs(a.weight), wb = std::abs(b.weight);
              if (wa != wb) return wa > wb;
              return a.feature < b.feature;
            });
  if (attributions.size() > top_k) attributions.resize(top_k);
}

}  // namespace tsxai
