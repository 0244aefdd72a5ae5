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

#include "tsxai/svr.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "../oracles/generators.hpp"
#include "../oracles/svr_dual_oracle.hpp"
#include "doctest.h"
#include "tsxai/error.hpp"

using namespace tsxai;

namespace {

Eigen::MatrixXd gram(const KernelSpec& k, const Matrix& X) {
  const auto n = static_cast<Eigen::Index>(X.rows());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K(i, j) = kernel_eval(k, X.row(static_cast<std::size_t>(i)), X.row(static_cast<std::size_t>(j)));
    }
  }
  return K;
}

struct Line {
  Matrix X{10, 1};
  std::vector<double> y = std::vector<double>(10);
  Line() {
    for (std::size_t i = 0; i < 10; ++i) {
      X(i, 0) = static_cast<double>(i);
      y[i] = 2.0 * static_cast<double>(i) + 1.0;
    }
  }
};

}  // namespace

TEST_SUITE("svr") {

TEST_CASE("kernels") {
  const std::vector<double> a{1, 2}, b{3, 4};
  CHECK(kernel_eval(KernelSpec::linear(), a, b) == 11.0);
  CHECK(kernel_eval(KernelSpec::rbf(0.7), a, a) == 1.0);
  const std::vector<double> z{0}, two{2};
  CHECK(kernel_eval(KernelSpec::rbf(0.5), z, two) == doctest::Approx(0.135335283).epsilon(1e-9));
  CHECK(parse_kernel_kind("rbf") == KernelKind::kRbf);
  CHECK_THROWS_AS(parse_kernel_kind("poly"), Error);
}

TEST_CASE("hyperparameter validation") {
  CHECK_THROWS_AS((SvrHyperParams{0.0, 0.1, KernelSpec::linear()}.validate()), Error);
  CHECK_THROWS_AS((SvrHyperParams{1.0, -0.1, KernelSpec::linear()}.validate()), Error);
  CHECK_THROWS_AS((SvrHyperParams{1.0, 0.1, KernelSpec::rbf(0.0)}.validate()), Error);
}

TEST_CASE("y = 2x + 1 against the dense oracle") {
  const Line line;
  const SvrHyperParams hp{10.0, 0.01, KernelSpec::linear()};
  const auto model = train_svr(line.X, line.y, hp);
  const auto pred = model.predict_batch(line.X);
  for (std::size_t i = 0; i < pred.size(); ++i) CHECK(std::abs(pred[i] - line.y[i]) <= 0.02);

  const Eigen::VectorXd ye = Eigen::Map<const Eigen::VectorXd>(line.y.data(), 10);
  const auto ref = oracle::solve_svr_dual(gram(hp.kernel, line.X), ye, hp.C, hp.epsilon);
  CHECK(std::abs(svr_dual_objective(model, line.X, line.y) - ref.objective) <= 1e-6 * std::max(1.0, std::abs(ref.objective)));
}

TEST_CASE("flat target is inside the tube") {
  Matrix X(6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    X(i, 0) = static_cast<double>(i);
    X(i, 1) = std::sin(static_cast<double>(i));
  }
  const std::vector<double> y(6, 4.25);
  for (const auto& k : {KernelSpec::linear(), KernelSpec::rbf(0.3)}) {
    const auto m = train_svr(X, y, {1.0, 0.1, k});
    CHECK(m.dual_coeffs.empty());
    CHECK(m.bias == doctest::Approx(4.25));
    const std::vector<double> probe{17.0, -3.0};
    CHECK(m.predict(probe) == doctest::Approx(4.25));
  }
}

TEST_CASE("constant model and input checks") {
  SvrModel m;
  m.bias = 2.5;
  m.n_features = 3;
  m.support_vectors = Matrix(0, 3);
  const std::vector<double> x{1, 2, 3};
  CHECK(m.predict(x) == 2.5);
  const std::vector<double> short_x{1, 2};
  CHECK_THROWS_AS(m.predict(short_x), Error);

  Matrix one(1, 1);
  const std::vector<double> y1{1.0};
  try {
    train_svr(one, y1, {});
    FAIL("expected TooFewRows");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooFewRows);
  }
  Matrix two(2, 1);
  const std::vector<double> bad{1.0, std::nan("")};
  try {
    train_svr(two, bad, {});
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
  }
}

TEST_CASE("no convergence is reported with the residual") {
  std::mt19937_64 rng(4);
  const Matrix X = testing::random_matrix(rng, 30, 3);
  const auto y = testing::random_vector(rng, 30);
  SolverOptions opts;
  opts.max_iter = 2;
  try {
    train_svr(X, y, {50.0, 0.01, KernelSpec::rbf(1.0)}, opts);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoConvergence);
    CHECK(std::string(e.what()).find("violation") != std::string::npos);
  }
}

TEST_CASE("dual feasibility, tube and oracle agreement on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> rows(3, 20), cols(1, 4);
  std::uniform_real_distribution<double> logc(-1.0, 1.5), eps(0.0, 0.3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rows(rng), d = cols(rng);
    const Matrix X = testing::random_matrix(rng, n, d);
    const auto y = testing::random_vector(rng, n, -2.0, 2.0);
    const SvrHyperParams hp{std::pow(10.0, logc(rng)), eps(rng),
                            trial % 2 ? KernelSpec::linear() : KernelSpec::rbf(0.5)};
    const auto m = train_svr(X, y, hp);

    double sum = 0.0;
    for (double b : m.dual_coeffs) {
      CHECK(std::abs(b) <= hp.C + 1e-12);
      sum += b;
    }
    CHECK(std::abs(sum) <= 1e-8);

    std::vector<bool> is_sv(n, false);
    for (std::size_t i : m.support_indices) is_sv[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_sv[i]) CHECK(std::abs(m.predict(X.row(i)) - y[i]) <= hp.epsilon + 1e-4 + 1e-9);
    }

    const Eigen::VectorXd ye = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(n));
    const auto ref = oracle::solve_svr_dual(gram(hp.kernel, X), ye, hp.C, hp.epsilon);
    SolverOptions tight;
    tight.tol = 1e-10;
    tight.max_iter = 5'000'000;
    const auto mt = train_svr(X, y, hp, tight);
    CHECK(std::abs(svr_dual_objective(mt, X, y) - ref.objective) <= 1e-6);
    // The oracle never beats SMO by more than the optimality tolerance.
    CHECK(svr_dual_objective(m, X, y) >= ref.objective - 1e-3);
  }
}

TEST_CASE("prediction is pure") {
  const Line line;
  const auto m = train_svr(line.X, line.y, {1.5, 0.1, KernelSpec::rbf(0.1)});
  const std::vector<double> x{3.3};
  const double first = m.predict(x);
  for (int i = 0; i < 5; ++i) CHECK(m.predict(x) == first);
  const auto again = train_svr(line.X, line.y, {1.5, 0.1, KernelSpec::rbf(0.1)});
  CHECK(again.predict(x) == first);
  CHECK(again.dual_coeffs == m.dual_coeffs);
}

}  // TEST_SUITE
