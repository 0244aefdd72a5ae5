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

#include "json.hpp"
#include "tsxai/evalstats.hpp"
#include "tsxai/explanation.hpp"
#include "tsxai/model_selection.hpp"
#include "tsxai/svr.hpp"
#include "tsxai/synth.hpp"
#include "tsxai/timeseries.hpp"

// JSON schemas of every artifact the CLI reads or writes. Each *_from_json
// is also the schema validator: it throws Error(kParse) naming the offending
// field.
namespace tsxai::io {

using nlohmann::json;

json model_to_json(const SvrModel& model);
SvrModel model_from_json(const json& j);

json scaler_to_json(const ScalerParams& params);
ScalerParams scaler_from_json(const json& j);

json grid_to_json(const ParamGrid& grid);
ParamGrid grid_from_json(const json& j);

json hyperparams_to_json(const SvrHyperParams& hp);
SvrHyperParams hyperparams_from_json(const json& j);

json lag_sweep_to_json(const LagSweepReport& report);
LagSweepReport lag_sweep_from_json(const json& j);

json explanation_to_json(const Explanation& ex);
Explanation explanation_from_json(const json& j);

json synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const json& j);

json welch_to_json(const WelchResult& r, const std::string& label_a, const std::string& label_b);
WelchResult welch_from_json(const json& j);

json spearman_to_json(const SpearmanResult& r, const std::string& x, const std::string& y);
SpearmanResult spearman_from_json(const json& j);

json summary_to_json(const ResponseSummary& s);
ResponseSummary summary_from_json(const json& j);

// Serialized text with a trailing newline.
std::string dump(const json& j);
// Throws Error(kParse) on malformed JSON.
json parse(const std::string& text);

}  // namespace tsxai::io
