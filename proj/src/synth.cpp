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

#include "tsxai/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tsxai/error.hpp"

namespace tsxai {
namespace {

constexpr int kBurnIn = 12;

double term_value(const SynthTerm& term, double x) {
  return term.saturating ? term.coef * std::tanh((x - term.center) / term.scale) : term.coef * x;
}

}  // namespace

SynthOutput generate_synthetic(std::uint64_t seed, int months, int n_features, SynthKind kind) {
  if (months < 24) throw Error(ErrorCode::kInvalidArgument, "months must be >= 24");
  if (n_features < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one activity feature");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unif(rng); };

  SynthSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  spec.months = months;
  spec.n_features = n_features;
  const int total = months + kBurnIn;

  std::vector<Column> columns;
  for (int k = 1; k <= n_features; ++k) {
    Column col{"feature" + std::to_string(k), std::vector<double>(static_cast<std::size_t>(total))};
    if (kind == SynthKind::kSales) {
      // Seasonal level plus AR(1) noise, kept positive.
      const double base = uniform(20.0, 60.0);
      const double amp = uniform(2.0, 10.0);
      const double phase = uniform(0.0, 12.0);
      const double sd = uniform(1.0, 4.0);
      double noise = 0.0;
      for (int t = 0; t < total; ++t) {
        noise = 0.5 * noise + sd * normal(rng);
        const double season = amp * std::sin(2.0 * std::numbers::pi * (t + phase) / 12.0);
        col.values[static_cast<std::size_t>(t)] = std::max(0.5, base + season + noise);
      }
    } else {
      for (int t = 0; t < total; ++t) {
        col.values[static_cast<std::size_t>(t)] = 50.0 + 5.0 * normal(rng);
      }
    }
    columns.push_back(std::move(col));
  }

  if (kind == SynthKind::kSales) {
    spec.intercept = 5.0;
    spec.noise_sd = 0.5;
    const auto mean_of = [&](int k) {
      const auto& v = columns[static_cast<std::size_t>(k - 1)].values;
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    spec.terms.push_back({"feature1", 1, uniform(0.3, 0.6)});
    if (n_features >= 2) spec.terms.push_back({"feature2", 3, uniform(0.2, 0.5)});
    if (n_features >= 3) spec.terms.push_back({"feature3", 0, -uniform(0.1, 0.3)});
    spec.terms.push_back({"feature1", 2, uniform(2.0, 4.0), true, mean_of(1), 5.0});
    spec.terms.push_back({spec.target, 1, 0.2});
  } else {
    spec.intercept = 10.0;
    spec.noise_sd = 1.0;
    spec.terms.push_back({spec.target, 1, 0.8});
  }

  // Target recursion; burn-in months start from the stationary level.
  Column target{spec.target, std::vector<double>(static_cast<std::size_t>(total))};
  const double level = kind == SynthKind::kAr1 ? spec.intercept / (1.0 - 0.8) : 30.0;
  for (int t = 0; t < total; ++t) {
    double y = spec.intercept;
    bool complete = true;
    for (const auto& term : spec.terms) {
      if (t - term.lag < 0) {
        complete = false;
        break;
      }
      const auto& src = term.column == spec.target
                            ? target.values
                            : columns[static_cast<std::size_t>(std::stoi(term.column.substr(7)) - 1)].values;
      y += term_value(term, src[static_cast<std::size_t>(t - term.lag)]);
    }
    if (!complete) y = level;
    y += spec.noise_sd * normal(rng);
    target.values[static_cast<std::size_t>(t)] = std::max(0.5, y);
  }
  columns.push_back(std::move(target));

  for (auto& c : columns) c.values.erase(c.values.begin(), c.values.begin() + kBurnIn);
  return {TimeSeriesFrame(spec.start, std::move(columns), spec.target), spec};
}

PredictFn synthetic_predict_fn(const SynthSpec& spec, const std::vector<std::string>& feature_names) {
  struct Bound {
    SynthTerm term;
    std::size_t index;
  };
  std::vector<Bound> bound;
  for (const auto& term : spec.terms) {
    const std::string name = lagged_feature_name(term.column, term.lag);
    const auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) {
      throw Error(ErrorCode::kUnknownColumn, "feature '" + name + "' not in dataset layout");
    }
    bound.push_back({term, static_cast<std::size_t>(it - feature_names.begin())});
  }
  const std::size_t width = feature_names.size();
  const double intercept = spec.intercept;
  return [bound, width, intercept](std::span<const double> x) {
    if (x.size() != width) throw Error(ErrorCode::kDimensionMismatch, "synthetic predict input");
    double y = intercept;
    for (const auto& b : bound) y += term_value(b.term, x[b.index]);
    return y;
  };
}

}  // namespace tsxai
