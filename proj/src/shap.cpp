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

#include "tsxai/shap.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "tsxai/error.hpp"

namespace tsxai {
namespace {

void check_inputs(std::span<const double> instance, const Matrix& background) {
  if (background.rows() == 0) throw Error(ErrorCode::kEmptyBackground, "background has no rows");
  if (background.cols() != instance.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "background width " +
                                                   std::to_string(background.cols()) +
                                                   " != instance length " +
                                                   std::to_string(instance.size()));
  }
}

double background_mean(const PredictFn& f, const Matrix& background) {
  double acc = 0.0;
  for (std::size_t r = 0; r < background.rows(); ++r) acc += f(background.row(r));
  return acc / static_cast<double>(background.rows());
}

}  // namespace

ShapResult exact_shapley(const PredictFn& predict_fn, std::span<const double> instance,
                         const Matrix& background) {
  check_inputs(instance, background);
  const std::size_t d = instance.size();
  if (d > kMaxExactShapFeatures) {
    throw Error(ErrorCode::kTooManyFeatures, std::to_string(d) + " features exceeds " +
                                                 std::to_string(kMaxExactShapFeatures));
  }
  const std::size_t n_coalitions = std::size_t{1} << d;

  // v[S] = E_b f(x_S, b_{not S}).
  std::vector<double> value(n_coalitions, 0.0);
  std::vector<double> z(d);
  for (std::size_t mask = 0; mask < n_coalitions; ++mask) {
    double acc = 0.0;
    for (std::size_t r = 0; r < background.rows(); ++r) {
      const auto b = background.row(r);
      for (std::size_t j = 0; j < d; ++j) z[j] = (mask >> j) & 1U ? instance[j] : b[j];
      acc += predict_fn(z);
    }
    value[mask] = acc / static_cast<double>(background.rows());
  }

  // |S|! (d - |S| - 1)! / d! = 1 / (d * C(d - 1, |S|)).
  std::vector<double> weight(d, 0.0);
  double binom = 1.0;
  for (std::size_t s = 0; s < d; ++s) {
    weight[s] = 1.0 / (static_cast<double>(d) * binom);
    binom = binom * static_cast<double>(d - 1 - s) / static_cast<double>(s + 1);
  }

  ShapResult res;
  res.phi.assign(d, 0.0);
  for (std::size_t mask = 0; mask < n_coalitions; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < d; ++j) {
      if ((mask >> j) & 1U) continue;
      res.phi[j] += weight[size] * (value[mask | (std::size_t{1} << j)] - value[mask]);
    }
  }
  res.baseline = value[0];
  res.prediction = predict_fn(instance);
  return res;
}

ShapResult sampled_shapley(const PredictFn& predict_fn, std::span<const double> instance,
                           const ShapConfig& cfg) {
  check_inputs(instance, cfg.background);
  if (cfg.n_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "n_iterations must be >= 1");
  const std::size_t d = instance.size();
  std::mt19937_64 rng(cfg.seed);

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  // Background rows are visited in reshuffled passes so each is used equally.
  std::vector<std::size_t> rows(cfg.background.rows());
  std::iota(rows.begin(), rows.end(), 0);
  std::size_t cursor = rows.size();
  std::vector<double> z(d);
  std::vector<double> sum(d, 0.0);
  auto walk = [&](std::size_t r) {
    const auto b = cfg.background.row(r);
    std::copy(b.begin(), b.end(), z.begin());
    // Prefix of `order` comes from the instance; x_{-j} then x_{+j}.
    double without = predict_fn(z);
    for (std::size_t j : order) {
      z[j] = instance[j];
      const double with = predict_fn(z);
      sum[j] += with - without;
      without = with;
    }
  };
  for (std::size_t m = 0; m < cfg.n_iterations;) {
    std::shuffle(order.begin(), order.end(), rng);
    if (cursor == rows.size()) {
      std::shuffle(rows.begin(), rows.end(), rng);
      cursor = 0;
    }
    const std::size_t r = rows[cursor++];
    walk(r);
    ++m;
    if (m < cfg.n_iterations) {  // antithetic partner: reversed order, same row
      std::reverse(order.begin(), order.end());
      walk(r);
      ++m;
    }
  }

  ShapResult res;
  res.phi.resize(d);
  for (std::size_t j = 0; j < d; ++j) res.phi[j] = sum[j] / static_cast<double>(cfg.n_iterations);
  res.baseline = background_mean(predict_fn, cfg.background);
  res.prediction = predict_fn(instance);
  return res;
}

Matrix default_background(const Matrix& train, std::size_t max_rows) {
  if (train.rows() <= max_rows) return train;
  Matrix out(0, train.cols());
  for (std::size_t i = 0; i < max_rows; ++i) out.append_row(train.row(i * train.rows() / max_rows));
  return out;
}

Explanation summarize_instance(const ShapResult& result,
                               const std::vector<std::string>& feature_names,
                               std::size_t top_k) {
  if (feature_names.size() != result.phi.size()) {
    throw Error(ErrorCode::kDimensionMismatch, std::to_string(feature_names.size()) +
                                                   " names for " +
                                                   std::to_string(result.phi.size()) +
                                                   " attributions");
  }
  Explanation ex;
  ex.method = ExplainMethod::kShap;
  ex.prediction = result.prediction;
  ex.baseline = result.baseline;
  for (std::size_t j = 0; j < result.phi.size(); ++j) {
    ex.attributions.push_back({feature_names[j], result.phi[j], ""});
  }
  rank_attributions(ex.attributions, top_k);
  return ex;
}

}  // namespace tsxai
