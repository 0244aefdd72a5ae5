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
#include <span>
#include <string>
#include <vector>

#include "tsxai/matrix.hpp"
#include "tsxai/timeseries.hpp"

namespace tsxai {

enum class KernelKind { kLinear, kRbf };

struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  double gamma = 0.1;  // rbf only

  static KernelSpec linear() { return {KernelKind::kLinear, 0.0}; }
  static KernelSpec rbf(double gamma) { return {KernelKind::kRbf, gamma}; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string kernel_name(KernelKind kind);
// "linear" or "rbf"; throws kParse otherwise.
KernelKind parse_kernel_kind(std::string_view name);

struct SvrHyperParams {
  double C = 1.0;
  double epsilon = 0.1;
  KernelSpec kernel;

  // Throws kInvalidArgument on C <= 0, epsilon < 0 or a non-positive rbf gamma.
  void validate() const;

  friend bool operator==(const SvrHyperParams&, const SvrHyperParams&) = default;
};

struct SolverOptions {
  double tol = 1e-4;
  long max_iter = 100'000;
};

// Trained epsilon-SVR. f(x) = sum_i dual_coeffs[i] * K(sv_i, x) + bias.
struct SvrModel {
  Matrix support_vectors;
  std::vector<double> dual_coeffs;            // alpha - alpha*, one per support vector
  std::vector<std::size_t> support_indices;  // rows of the training set
  double bias = 0.0;
  SvrHyperParams params;
  std::size_t n_features = 0;
  std::vector<std::string> feature_names;

  // Solver diagnostics.
  long iterations = 0;
  double max_kkt_violation = 0.0;

  double predict(std::span<const double> x) const;
  std::vector<double> predict_batch(const Matrix& X) const;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b);

// Solves the epsilon-SVR dual with two-variable SMO steps. Throws
// kTooFewRows, kNonFinite, kNoConvergence (message carries the residual
// KKT violation).
SvrModel train_svr(const SupervisedDataset& train, const SvrHyperParams& hp,
                   const SolverOptions& opts = {});
SvrModel train_svr(const Matrix& X, std::span<const double> y, const SvrHyperParams& hp,
                   const SolverOptions& opts = {});

// Dual objective -1/2 b'Kb - eps*|b|_1 + y'b at b = model's coefficients,
// with zeros for training rows that are not support vectors.
double svr_dual_objective(const SvrModel& model, const Matrix& X, std::span<const double> y);

}  // namespace tsxai
