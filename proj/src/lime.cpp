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

#include "tsxai/lime.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "csv.hpp"
#include "tsxai/error.hpp"

namespace tsxai {
namespace {

// numpy's default ("linear") percentile on sorted data.
double percentile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct RidgeFit {
  double intercept = 0.0;
  Eigen::VectorXd coef;
};

// Weighted ridge regression with an unpenalized intercept, on the columns
// listed in `cols`.
RidgeFit weighted_ridge(const Matrix& samples, const std::vector<std::size_t>& cols,
                        const Eigen::VectorXd& target, const Eigen::VectorXd& weights,
                        double penalty) {
  const auto n = static_cast<Eigen::Index>(samples.rows());
  const auto k = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd Z(n, k);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      Z(r, c) = samples(static_cast<std::size_t>(r), cols[static_cast<std::size_t>(c)]);
    }
  }
  const double wsum = weights.sum();
  const Eigen::RowVectorXd zbar = (weights.transpose() * Z) / wsum;
  const double ybar = weights.dot(target) / wsum;
  const Eigen::MatrixXd Zc = Z.rowwise() - zbar;
  const Eigen::VectorXd yc = target.array() - ybar;

  const Eigen::MatrixXd gram = Zc.transpose() * weights.asDiagonal() * Zc;
  const Eigen::VectorXd rhs = Zc.transpose() * (weights.array() * yc.array()).matrix();

  double lambda = penalty;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::MatrixXd A = gram;
    A.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success && llt.rcond() > 1e-12) {
      RidgeFit fit;
      fit.coef = llt.solve(rhs);
      if (fit.coef.allFinite()) {
        fit.intercept = ybar - zbar.dot(fit.coef);
        return fit;
      }
    }
    lambda = lambda > 0.0 ? lambda * 10.0 : 1e-6;
  }
  throw Error(ErrorCode::kSingularFit, "weighted ridge system is singular after 3 retries");
}

}  // namespace

void LimeConfig::validate() const {
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
  if (n_samples < top_k + 1) throw Error(ErrorCode::kInvalidArgument, "n_samples must exceed top_k");
  if (kernel_width && !(*kernel_width > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "kernel_width must be > 0");
  }
  if (!(ridge_penalty >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ridge_penalty must be >= 0");
}

TrainStats compute_train_stats(const Matrix& X, std::vector<std::string> feature_names) {
  if (X.rows() < 4) throw Error(ErrorCode::kTooFewRows, "training statistics need >= 4 rows");
  if (feature_names.size() != X.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature name count differs from column count");
  }
  TrainStats s;
  s.feature_names = std::move(feature_names);
  const auto n = static_cast<double>(X.rows());
  for (std::size_t c = 0; c < X.cols(); ++c) {
    auto col = X.column(c);
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    std::sort(col.begin(), col.end());
    s.mean.push_back(mean);
    s.std.push_back(std::sqrt(ss / n));
    s.q1.push_back(percentile_sorted(col, 0.25));
    s.q2.push_back(percentile_sorted(col, 0.50));
    s.q3.push_back(percentile_sorted(col, 0.75));
  }
  return s;
}

TrainStats compute_train_stats(const SupervisedDataset& train) {
  return compute_train_stats(train.X, train.feature_names);
}

Matrix perturb_samples(std::span<const double> instance, const TrainStats& stats,
                       std::size_t n_samples, std::uint64_t seed) {
  if (instance.size() != stats.n_features()) {
    throw Error(ErrorCode::kDimensionMismatch, "instance has " + std::to_string(instance.size()) +
                                                   " features, stats have " +
                                                   std::to_string(stats.n_features()));
  }
  if (n_samples < 1) throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(n_samples, instance.size());
  std::copy(instance.begin(), instance.end(), out.row(0).begin());
  for (std::size_t r = 1; r < n_samples; ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < instance.size(); ++c) {
      row[c] = instance[c] + normal(rng) * stats.std[c];
    }
  }
  return out;
}

std::vector<double> proximity_weights(std::span<const double> instance, const Matrix& samples,
                                      double kernel_width) {
  if (!(kernel_width > 0.0)) throw Error(ErrorCode::kInvalidArgument, "kernel_width must be > 0");
  if (samples.cols() != instance.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "sample width differs from instance length");
  }
  std::vector<double> w(samples.rows());
  const double inv_w2 = 1.0 / (kernel_width * kernel_width);
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    double d2 = 0.0;
    const auto row = samples.row(r);
    for (std::size_t c = 0; c < instance.size(); ++c) {
      const double d = row[c] - instance[c];
      d2 += d * d;
    }
    w[r] = std::exp(-d2 * inv_w2);
  }
  return w;
}

std::string quartile_condition(const std::string& name, double value, double q1, double q2,
                               double q3) {
  if (value <= q1) return name + " <= " + fmt2(q1);
  if (value <= q2) return fmt2(q1) + " < " + name + " <= " + fmt2(q2);
  if (value <= q3) return fmt2(q2) + " < " + name + " <= " + fmt2(q3);
  return name + " > " + fmt2(q3);
}

Explanation explain_lime(const PredictFn& predict_fn, std::span<const double> instance,
                         const TrainStats& stats, const LimeConfig& cfg) {
  cfg.validate();
  const std::size_t d = stats.n_features();
  const Matrix samples = perturb_samples(instance, stats, cfg.n_samples, cfg.seed);
  const double width = cfg.kernel_width.value_or(0.75 * std::sqrt(static_cast<double>(d)));
  const auto w = proximity_weights(instance, samples, width);

  Eigen::VectorXd target(static_cast<Eigen::Index>(samples.rows()));
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    target(static_cast<Eigen::Index>(r)) = predict_fn(samples.row(r));
    if (!std::isfinite(target(static_cast<Eigen::Index>(r)))) {
      throw Error(ErrorCode::kNonFinite, "black box returned a non-finite prediction");
    }
  }
  const Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));

  // Full fit, then keep the top_k features by coefficient times feature spread.
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  const RidgeFit full = weighted_ridge(samples, all, target, weights, cfg.ridge_penalty);
  std::vector<std::size_t> order = all;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ia = std::abs(full.coef(static_cast<Eigen::Index>(a)) * stats.std[a]);
    const double ib = std::abs(full.coef(static_cast<Eigen::Index>(b)) * stats.std[b]);
    if (ia != ib) return ia > ib;
    return stats.feature_names[a] < stats.feature_names[b];
  });
  order.resize(std::min(cfg.top_k, d));
  std::sort(order.begin(), order.end());

  const RidgeFit sub = weighted_ridge(samples, order, target, weights, cfg.ridge_penalty);

  Explanation ex;
  ex.method = ExplainMethod::kLime;
  ex.prediction = target(0);
  ex.baseline = sub.intercept;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t j = order[i];
    ex.attributions.push_back(
        {stats.feature_names[j], sub.coef(static_cast<Eigen::Index>(i)),
         quartile_condition(stats.feature_names[j], instance[j], stats.q1[j], stats.q2[j],
                            stats.q3[j])});
  }
  rank_attributions(ex.attributions, cfg.top_k);
  return ex;
}

}  // namespace tsxai
