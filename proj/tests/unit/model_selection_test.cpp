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

#include <cmath>
#include <limits>
#include <random>

#include "../oracles/generators.hpp"
#include "doctest.h"
#include "test_util.hpp"
#include "tsxai/error.hpp"
#include "tsxai/synth.hpp"

using namespace tsxai;
using testing::code_of;

namespace {

SupervisedDataset line_dataset(std::size_t n) {
  SupervisedDataset ds;
  ds.X = Matrix(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    ds.X(i, 0) = 0.1 * static_cast<double>(i + 1);
    ds.y.push_back(2.0 * ds.X(i, 0) + 1.0);
    ds.row_periods.push_back(YearMonth(2015, 1) + static_cast<int>(i));
  }
  ds.feature_names = {"x (t-1)"};
  ds.lag = 1;
  ds.target = "x";
  return ds;
}

}  // namespace

TEST_SUITE("model_selection") {

TEST_CASE("default grid") {
  const auto g = ParamGrid::default_grid();
  const auto c = g.candidates();
  // linear ignores gamma: 5 * 4 + 5 * 5 * 4
  CHECK(c.size() == 120);
  CHECK(c.front().kernel.kind == KernelKind::kLinear);
  CHECK(c.front().C == 0.1);
  CHECK(c.back().kernel.kind == KernelKind::kRbf);
  CHECK(c.back().C == 50.0);
  ParamGrid empty = g;
  empty.Cs.clear();
  CHECK(code_of([&] { empty.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("time_series_splits") {
  const auto s = time_series_splits(10, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == CvSplit{0, 2, 2, 4});
  CHECK(s[1] == CvSplit{0, 4, 4, 6});
  CHECK(s[2] == CvSplit{0, 6, 6, 8});
  CHECK(s[3] == CvSplit{0, 8, 8, 10});
  CHECK(code_of([] { time_series_splits(4, 4); }) == ErrorCode::kTooFewRows);

  const auto r = time_series_splits(13, 3);
  CHECK(r.back() == CvSplit{0, 9, 9, 13});
}

TEST_CASE("splits are causal and cover the tail") {
  for (std::size_t n = 5; n <= 200; ++n) {
    for (std::size_t k = 2; k <= 6; ++k) {
      if (n < k + 1) continue;
      const auto s = time_series_splits(n, k);
      REQUIRE(s.size() == k);
      for (const auto& f : s) {
        CHECK(f.train_begin == 0);
        CHECK(f.train_end == f.valid_begin);
        CHECK(f.train_end > f.train_begin);
        CHECK(f.valid_end > f.valid_begin);
      }
      CHECK(s.back().valid_end == n);
    }
  }
}

TEST_CASE("mape") {
  CHECK(mape(std::vector<double>{100}, std::vector<double>{90}) == doctest::Approx(10.0));
  CHECK(mape(std::vector<double>{100, 200}, std::vector<double>{110, 180}) == doctest::Approx(10.0));
  const std::vector<double> y{3, -4, 5};
  CHECK(mape(y, y) == 0.0);
  CHECK(code_of([] { mape(std::vector<double>{0, 1}, std::vector<double>{1, 1}); }) ==
        ErrorCode::kZeroTruth);
  CHECK(code_of([] { mape(std::vector<double>{1, 1}, std::vector<double>{1}); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code_of([] { mape(std::vector<double>{}, std::vector<double>{}); }) == ErrorCode::kEmptyInput);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_vector(rng, 7, 0.5, 3.0);
    const auto b = testing::random_vector(rng, 7, -3.0, 3.0);
    CHECK(mape(a, b) >= 0.0);
  }
}

TEST_CASE("singleton grid") {
  const ParamGrid g{{KernelKind::kRbf}, {1.5}, {0.1}, {0.1}};
  const auto r = grid_search(line_dataset(30), g);
  CHECK(r.candidates.size() == 1);
  CHECK(r.best.params == SvrHyperParams{1.5, 0.1, KernelSpec::rbf(0.1)});
}

TEST_CASE("linear beats rbf on a line") {
  const ParamGrid g{{KernelKind::kLinear, KernelKind::kRbf}, {10.0}, {0.1}, {0.01}};
  const auto r = grid_search(line_dataset(40), g);
  CHECK(r.best.params.kernel.kind == KernelKind::kLinear);
  CHECK(r.candidates[0].mean_cv_mape < r.candidates[1].mean_cv_mape);
}

TEST_CASE("best is minimal, sorted and thread independent") {
  const auto synth = generate_synthetic(3, 60, 2);
  const auto ds = make_supervised(apply_minmax(synth.frame, fit_minmax(synth.frame)), 2);
  const auto train = chrono_split(ds, 0.8).first;
  ParamGrid g{{KernelKind::kLinear, KernelKind::kRbf}, {0.1, 10.0}, {0.1, 1e-3}, {0.1, 0.2}};
  GridSearchOptions one;
  one.n_threads = 1;
  GridSearchOptions four;
  four.n_threads = 4;
  const auto a = grid_search(train, g, one);
  const auto b = grid_search(train, g, four);
  for (const auto& c : a.candidates) CHECK(a.best.mean_cv_mape <= c.mean_cv_mape);
  for (std::size_t i = 1; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i - 1].mean_cv_mape <= a.candidates[i].mean_cv_mape);
  }
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].canonical_index == b.candidates[i].canonical_index);
    CHECK(a.candidates[i].fold_mapes == b.candidates[i].fold_mapes);
  }
  CHECK(a.best_model.dual_coeffs == b.best_model.dual_coeffs);

  // A strictly worse extra candidate leaves the choice alone.
  ParamGrid wider = g;
  wider.Cs.push_back(1e-6);
  const auto w = grid_search(train, wider, one);
  CHECK(w.best.params == a.best.params);
}

TEST_CASE("lag sweep rows") {
  const auto synth = generate_synthetic(5, 72, 2);
  const ParamGrid g{{KernelKind::kLinear, KernelKind::kRbf}, {1.5, 10.0}, {0.1}, {0.1}};
  const auto res = lag_sweep(synth.frame, {3, 1, 2}, g);
  REQUIRE(res.report.rows.size() == 3);
  CHECK(res.report.rows[0].lag == 3);
  CHECK(res.report.rows[1].lag == 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : res.report.rows) {
    CHECK(r.n_train + r.n_test == 72u - static_cast<std::size_t>(r.lag));
    CHECK(std::isfinite(r.test_mape));
    best = std::min(best, r.test_mape);
  }
  for (const auto& r : res.report.rows) {
    if (r.lag == res.report.best_lag) CHECK(r.test_mape == best);
  }
  CHECK(res.scaler.has_value());
  CHECK(code_of([&] { lag_sweep(synth.frame, {}, g); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("describe_params") {
  CHECK(describe_params({1.5, 0.1, KernelSpec::rbf(0.1)}) == "C:1.5, epsilon: 0.1, gamma: 0.1, kernel: RBF");
  CHECK(describe_params({10, 0.2, KernelSpec::linear()}) == "C:10, epsilon: 0.2, kernel: Linear");
}

}  // TEST_SUITE
