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

#include "tsxai/model_selection.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "tsxai/error.hpp"

namespace tsxai {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Runs fn(0..n-1) on up to n_threads workers. Each index writes its own slot,
// so results do not depend on the schedule.
template <typename F>
void parallel_for(std::size_t n, unsigned n_threads, F fn) {
  if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < n_threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> to_original(std::vector<double> v, const std::optional<TargetScale>& scale) {
  if (scale) {
    for (double& x : v) x = scale->range.unscale(x);
  }
  return v;
}

}  // namespace

ParamGrid ParamGrid::default_grid() {
  return ParamGrid{{KernelKind::kLinear, KernelKind::kRbf},
                   {0.1, 1.5, 10, 25, 50},
                   {0.1, 1e-2, 1e-3, 1e-4, 1e-5},
                   {0.1, 0.2, 0.3, 0.5}};
}

void ParamGrid::validate() const {
  if (kernels.empty() || Cs.empty() || epsilons.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "parameter grid has an empty list");
  }
  const bool has_rbf = std::find(kernels.begin(), kernels.end(), KernelKind::kRbf) != kernels.end();
  if (has_rbf && gammas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rbf kernel requested with no gamma values");
  }
}

std::vector<SvrHyperParams> ParamGrid::candidates() const {
  validate();
  std::vector<KernelKind> ks = kernels;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const auto cs = sorted_unique(Cs);
  const auto gs = sorted_unique(gammas);
  const auto es = sorted_unique(epsilons);
  std::vector<SvrHyperParams> out;
  for (KernelKind k : ks) {
    for (double c : cs) {
      if (k == KernelKind::kLinear) {
        for (double e : es) out.push_back({c, e, KernelSpec::linear()});
      } else {
        for (double g : gs) {
          for (double e : es) out.push_back({c, e, KernelSpec::rbf(g)});
        }
      }
    }
  }
  for (const auto& hp : out) hp.validate();
  return out;
}

std::vector<CvSplit> time_series_splits(std::size_t n_rows, std::size_t n_splits) {
  if (n_splits < 1) throw Error(ErrorCode::kInvalidArgument, "n_splits must be >= 1");
  if (n_rows < n_splits + 1) {
    throw Error(ErrorCode::kTooFewRows, std::to_string(n_rows) + " rows cannot form " +
                                            std::to_string(n_splits) + " folds");
  }
  const std::size_t chunk = n_rows / (n_splits + 1);
  std::vector<CvSplit> folds;
  for (std::size_t k = 0; k < n_splits; ++k) {
    const std::size_t begin = chunk * (k + 1);
    const std::size_t end = k + 1 == n_splits ? n_rows : chunk * (k + 2);
    folds.push_back({0, begin, begin, end});
  }
  return folds;
}

double mape(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "mape inputs differ in length");
  }
  if (y_true.empty()) throw Error(ErrorCode::kEmptyInput, "mape of empty vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 0.0) {
      throw Error(ErrorCode::kZeroTruth, "y_true[" + std::to_string(i) + "] is zero");
    }
    acc += std::abs(y_true[i] - y_pred[i]) / std::abs(y_true[i]);
  }
  return 100.0 * acc / static_cast<double>(y_true.size());
}

GridSearchReport grid_search(const SupervisedDataset& train, const ParamGrid& grid,
                             const GridSearchOptions& opts) {
  const auto candidates = grid.candidates();
  const auto folds = time_series_splits(train.n_rows(), opts.n_splits);

  // Fold data and its original-unit truth are shared by every candidate.
  struct FoldData {
    SupervisedDataset fit;
    Matrix valid_X;
    std::vector<double> valid_truth;
  };
  std::vector<FoldData> fold_data;
  for (const auto& f : folds) {
    SupervisedDataset valid = train.slice(f.valid_begin, f.valid_end);
    fold_data.push_back({train.slice(f.train_begin, f.train_end), std::move(valid.X),
                         to_original(std::move(valid.y), opts.target_scale)});
  }

  const std::size_t n_tasks = candidates.size() * folds.size();
  std::vector<double> scores(n_tasks, kInf);
  parallel_for(n_tasks, opts.n_threads, [&](std::size_t task) {
    const auto& hp = candidates[task / folds.size()];
    const auto& fd = fold_data[task % folds.size()];
    try {
      const SvrModel m = train_svr(fd.fit.X, fd.fit.y, hp, opts.solver);
      const auto pred = to_original(m.predict_batch(fd.valid_X), opts.target_scale);
      scores[task] = mape(fd.valid_truth, pred);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoConvergence) throw;
    }
  });

  GridSearchReport report;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    CandidateScore cs{candidates[c], c, 0.0, {}};
    for (std::size_t f = 0; f < folds.size(); ++f) {
      cs.fold_mapes.push_back(scores[c * folds.size() + f]);
      cs.mean_cv_mape += cs.fold_mapes.back();
    }
    cs.mean_cv_mape /= static_cast<double>(folds.size());
    report.candidates.push_back(std::move(cs));
  }
  std::stable_sort(report.candidates.begin(), report.candidates.end(),
                   [](const CandidateScore& a, const CandidateScore& b) {
                     return a.mean_cv_mape < b.mean_cv_mape;
                   });
  // Refit in ranked order; a candidate that converged on every fold can
  // still fail on the full training set.
  for (const auto& cs : report.candidates) {
    if (!std::isfinite(cs.mean_cv_mape)) break;
    try {
      report.best_model = train_svr(train, cs.params, opts.solver);
      report.best = cs;
      return report;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoConvergence) throw;
    }
  }
  throw Error(ErrorCode::kNoConvergence, "no grid candidate converged on the training set");
}

LagSweepResult lag_sweep(const TimeSeriesFrame& frame, const std::vector<int>& lags,
                         const ParamGrid& grid, const LagSweepOptions& opts) {
  if (lags.empty()) throw Error(ErrorCode::kInvalidArgument, "no lags requested");
  LagSweepResult result;
  const TimeSeriesFrame* working = &frame;
  std::optional<TimeSeriesFrame> scaled;
  std::optional<TargetScale> target_scale;
  if (opts.scale) {
    result.scaler = fit_minmax(frame);
    scaled = apply_minmax(frame, *result.scaler);
    working = &*scaled;
    target_scale = TargetScale{result.scaler->at(frame.target())};
  }

  GridSearchOptions gs_opts{opts.n_splits, opts.solver, target_scale, opts.n_threads};
  double best_mape = kInf;
  for (int lag : lags) {
    const auto ds = make_supervised(*working, lag);
    const auto [train, test] = chrono_split(ds, opts.train_fraction);
    GridSearchReport gs = grid_search(train, grid, gs_opts);
    const auto truth = to_original(test.y, target_scale);
    const auto pred = to_original(gs.best_model.predict_batch(test.X), target_scale);
    LagSweepRow row{lag, mape(truth, pred), gs.best.mean_cv_mape, gs.best.params,
                    train.n_rows(), test.n_rows()};
    if (result.report.rows.empty() || row.test_mape < best_mape) {
      best_mape = row.test_mape;
      result.report.best_lag = lag;
      result.best_model = std::move(gs.best_model);
    }
    result.report.rows.push_back(row);
  }
  return result;
}

std::string describe_params(const SvrHyperParams& hp) {
  std::ostringstream os;
  os << "C:" << hp.C << ", epsilon: " << hp.epsilon;
  if (hp.kernel.kind == KernelKind::kRbf) os << ", gamma: " << hp.kernel.gamma;
  os << ", kernel: " << (hp.kernel.kind == KernelKind::kRbf ? "RBF" : "Linear");
  return os.str();
}

}  // namespace tsxai
