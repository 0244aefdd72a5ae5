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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsxai/svr.hpp"
#include "tsxai/timeseries.hpp"

namespace tsxai {

struct ParamGrid {
  std::vector<KernelKind> kernels;
  std::vector<double> Cs;
  std::vector<double> gammas;
  std::vector<double> epsilons;

  // Kernel: linear, rbf; C: 0.1, 1.5, 10, 25, 50; gamma: 0.1, 1e-2 .. 1e-5;
  // epsilon: 0.1, 0.2, 0.3, 0.5.
  static ParamGrid default_grid();

  // Throws kInvalidArgument on an empty list.
  void validate() const;

  // Canonical order: kernel (linear, rbf), then C, gamma, epsilon ascending.
  // gamma is not expanded for the linear kernel.
  std::vector<SvrHyperParams> candidates() const;
};

struct CvSplit {
  std::size_t train_begin = 0;
  std::size_t train_end = 0;  // exclusive; valid_begin == train_end
  std::size_t valid_begin = 0;
  std::size_t valid_end = 0;

  friend bool operator==(const CvSplit&, const CvSplit&) = default;
};

// Expanding-window folds. The data is cut into n_splits + 1 chunks of
// floor(n_rows / (n_splits + 1)) rows, the last chunk absorbing the
// remainder; fold k validates on chunk k + 1 and trains on everything before.
std::vector<CvSplit> time_series_splits(std::size_t n_rows, std::size_t n_splits);

// Mean absolute percentage error in percent. Throws kZeroTruth,
// kDimensionMismatch, kEmptyInput.
double mape(std::span<const double> y_true, std::span<const double> y_pred);

// Maps scaled target values back to original units before scoring.
struct TargetScale {
  MinMax range;
};

struct CandidateScore {
  SvrHyperParams params;
  std::size_t canonical_index = 0;
  double mean_cv_mape = 0.0;         // +inf when any fold failed to converge
  std::vector<double> fold_mapes;  // +inf entries for non-converged folds
};

struct GridSearchReport {
  std::vector<CandidateScore> candidates;  // ascending mean CV MAPE
  CandidateScore best;  // highest ranked candidate whose refit converged
  SvrModel best_model;  // refit on the full training set
};

struct GridSearchOptions {
  std::size_t n_splits = 4;
  SolverOptions solver;
  std::optional<TargetScale> target_scale;
  unsigned n_threads = 0;  // 0 = hardware concurrency
};

GridSearchReport grid_search(const SupervisedDataset& train, const ParamGrid& grid,
                             const GridSearchOptions& opts = {});

struct LagSweepRow {
  int lag = 0;
  double test_mape = 0.0;
  double cv_mape = 0.0;
  SvrHyperParams best_params;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

struct LagSweepReport {
  std::vector<LagSweepRow> rows;  // in requested lag order
  int best_lag = 0;               // minimal test MAPE, first on ties
};

struct LagSweepOptions {
  double train_fraction = 0.8;
  std::size_t n_splits = 4;
  // Min-max scale the whole frame before reframing; MAPE is then reported on
  // the inverted (original unit) target.
  bool scale = true;
  SolverOptions solver;
  unsigned n_threads = 0;
};

struct LagSweepResult {
  LagSweepReport report;
  SvrModel best_model;  // refit model of the best lag
  std::optional<ScalerParams> scaler;
};

LagSweepResult lag_sweep(const TimeSeriesFrame& frame, const std::vector<int>& lags,
                         const ParamGrid& grid, const LagSweepOptions& opts = {});

// "C:1.5, epsilon: 0.1, gamma: 0.1, kernel: RBF" (gamma omitted for linear).
std::string describe_params(const SvrHyperParams& hp);

}  // namespace tsxai
