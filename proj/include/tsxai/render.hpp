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

#include <string>
#include <vector>

#include "tsxai/evalstats.hpp"
#include "tsxai/explanation.hpp"
#include "tsxai/model_selection.hpp"

namespace tsxai::render {

// Lag | MAPE | best hyperparameters, one row per lag.
std::string lag_sweep_table(const LagSweepReport& report);

// Sum / Mean / Median of yes and no answers, one column per group.
std::string summary_table(const std::vector<ResponseSummary>& summaries);

// Mean, Standard Deviation, Variance, Observations, t Stat, P two-tail.
std::string welch_table(const WelchResult& r, const std::string& label_a,
                        const std::string& label_b);

std::string spearman_table(const SpearmanResult& r, const std::string& x, const std::string& y);

std::string explanation_table(const Explanation& ex);

// Horizontal signed bars, green for positive and red for negative weights.
std::string lime_svg(const Explanation& ex);
// One dot per feature at its attribution, on a shared zero axis.
std::string shap_svg(const Explanation& ex);
// Dispatches on ex.method.
std::string explanation_svg(const Explanation& ex);

// Stacks standalone SVG documents vertically into one document.
std::string stack_svg(const std::vector<std::string>& charts);

}  // namespace tsxai::render
