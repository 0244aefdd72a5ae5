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

#include <algorithm>
#include <cmath>
#include <limits>

#include "csv.hpp"
#include "tsxai/error.hpp"

namespace tsxai {

std::string kernel_name(KernelKind kind) {
  return kind == KernelKind::kLinear ? "linear" : "rbf";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "linear") return KernelKind::kLinear;
  if (name == "rbf") return KernelKind::kRbf;
  throw Error(ErrorCode::kParse, "unknown kernel '" + std::string(name) + "'");
}

void SvrHyperParams::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw Error(ErrorCode::kInvalidArgument, "C must be > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  if (kernel.kind == KernelKind::kRbf && (!(kernel.gamma > 0.0) || !std::isfinite(kernel.gamma))) {
    throw Error(ErrorCode::kInvalidArgument, "rbf gamma must be > 0");
  }
}

double kernel_eval(const KernelSpec& spec, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "kernel arguments of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  double acc = 0.0;
  if (spec.kind == KernelKind::kLinear) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::exp(-spec.gamma * acc);
}

double SvrModel::predict(std::span<const double> x) const {
  if (x.size() != n_features) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(n_features) +
                                                   " features, got " + std::to_string(x.size()));
  }
  double f = bias;
  for (std::size_t i = 0; i < dual_coeffs.size(); ++i) {
    f += dual_coeffs[i] * kernel_eval(params.kernel, support_vectors.row(i), x);
  }
  return f;
}

std::vector<double> SvrModel::predict_batch(const Matrix& X) const {
  std::vector<double> out(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) out[r] = predict(X.row(r));
  return out;
}

namespace {

constexpr double kTau = 1e-12;

// SMO over the 2n-variable form: a[t] = alpha_t for t < n (sign +1) and
// alpha*_{t-n} for t >= n (sign -1). Minimizes 1/2 a'Qa + p'a subject to
// sign'a = 0 and 0 <= a <= C.
class SmoSolver {
 public:
  SmoSolver(const Matrix& X, std::span<const double> y, const SvrHyperParams& hp)
      : n_(X.rows()), C_(hp.C), K_(n_, n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const double k = kernel_eval(hp.kernel, X.row(i), X.row(j));
        K_(i, j) = k;
        K_(j, i) = k;
      }
    }
    a_.assign(2 * n_, 0.0);
    grad_.resize(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      grad_[i] = hp.epsilon - y[i];
      grad_[i + n_] = hp.epsilon + y[i];
    }
  }

  // Returns the number of iterations taken, or -1 if max_iter was exhausted.
  long solve(const SolverOptions& opts) {
    long iter = 0;
    for (;;) {
      std::size_t i = 0, j = 0;
      if (!select_working_set(opts.tol, i, j)) return iter;
      if (iter >= opts.max_iter) return -1;
      ++iter;
      update_pair(i, j);
    }
  }

  double violation() const { return violation_; }

  std::vector<double> coefficients() const {
    std::vector<double> beta(n_);
    for (std::size_t i = 0; i < n_; ++i) beta[i] = a_[i] - a_[i + n_];
    return beta;
  }

  // libsvm's rho: average of sign*grad over free variables, else the midpoint
  // of the feasible interval. The bias is -rho.
  double bias() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -ub;
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      const double s = sign(t);
      const double yg = s * grad_[t];
      if (at_upper(t)) {
        if (s < 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (s > 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
    return -rho;
  }

 private:
  double sign(std::size_t t) const { return t < n_ ? 1.0 : -1.0; }
  std::size_t row(std::size_t t) const { return t < n_ ? t : t - n_; }
  bool at_upper(std::size_t t) const { return a_[t] >= C_; }
  bool at_lower(std::size_t t) const { return a_[t] <= 0.0; }
  double q(std::size_t s, std::size_t t) const { return sign(s) * sign(t) * K_(row(s), row(t)); }
  double qd(std::size_t t) const { return K_(row(t), row(t)); }

  // Second-order working set selection (Fan, Chen and Lin 2005).
  bool select_working_set(double tol, std::size_t& out_i, std::size_t& out_j) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t gmax_idx = -1;
    std::ptrdiff_t gmin_idx = -1;
    double obj_diff_min = std::numeric_limits<double>::infinity();

    for (std::size_t t = 0; t < 2 * n_; ++t) {
      if (sign(t) > 0) {
        if (!at_upper(t) && -grad_[t] >= gmax) {
          gmax = -grad_[t];
          gmax_idx = static_cast<std::ptrdiff_t>(t);
        }
      } else if (!at_lower(t) && grad_[t] >= gmax) {
        gmax = grad_[t];
        gmax_idx = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gmax_idx < 0) {
      violation_ = 0.0;
      return false;
    }
    const auto i = static_cast<std::size_t>(gmax_idx);
    const double si = sign(i);
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      double grad_diff = 0.0;
      double quad = 0.0;
      if (sign(t) > 0) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad_[t]);
        grad_diff = gmax + grad_[t];
        quad = qd(i) + qd(t) - 2.0 * si * q(i, t);
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad_[t]);
        grad_diff = gmax - grad_[t];
        quad = qd(i) + qd(t) + 2.0 * si * q(i, t);
      }
      if (grad_diff > 0.0) {
        const double obj_diff = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (obj_diff <= obj_diff_min) {
          gmin_idx = static_cast<std::ptrdiff_t>(t);
          obj_diff_min = obj_diff;
        }
      }
    }
    violation_ = gmax + gmax2;
    if (violation_ < tol || gmin_idx < 0) return false;
    out_i = i;
    out_j = static_cast<std::size_t>(gmin_idx);
    return true;
  }

  void update_pair(std::size_t i, std::size_t j) {
    const double qij = q(i, j);
    const double old_ai = a_[i];
    const double old_aj = a_[j];
    double& ai = a_[i];
    double& aj = a_[j];
    if (sign(i) != sign(j)) {
      double quad = qd(i) + qd(j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > C_) {
          ai = C_;
          aj = C_ - diff;
        }
      } else if (aj > C_) {
        aj = C_;
        ai = C_ + diff;
      }
    } else {
      double quad = qd(i) + qd(j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C_) {
        if (ai > C_) {
          ai = C_;
          aj = sum - C_;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > C_) {
        if (aj > C_) {
          aj = C_;
          ai = sum - C_;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double dai = ai - old_ai;
    const double daj = aj - old_aj;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      grad_[t] += q(i, t) * dai + q(j, t) * daj;
    }
  }

  std::size_t n_;
  double C_;
  Matrix K_;
  std::vector<double> a_;
  std::vector<double> grad_;
  double violation_ = 0.0;
};

}  // namespace

SvrModel train_svr(const Matrix& X, std::span<const double> y, const SvrHyperParams& hp,
                   const SolverOptions& opts) {
  hp.validate();
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "X has " + std::to_string(X.rows()) +
                                                   " rows but y has " + std::to_string(y.size()));
  }
  if (X.rows() < 2) throw Error(ErrorCode::kTooFewRows, "SVR needs at least 2 rows");
  for (double v : X.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite feature value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite target value");
  }

  SmoSolver solver(X, y, hp);
  const long iters = solver.solve(opts);
  if (iters < 0) {
    throw Error(ErrorCode::kNoConvergence,
                "SMO hit max_iter=" + std::to_string(opts.max_iter) +
                    " with max KKT violation " + internal::format_double(solver.violation()));
  }

  SvrModel model;
  model.params = hp;
  model.n_features = X.cols();
  model.bias = solver.bias();
  model.iterations = iters;
  model.max_kkt_violation = std::max(0.0, solver.violation());
  model.support_vectors = Matrix(0, X.cols());
  const auto beta = solver.coefficients();
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] != 0.0) {
      model.support_vectors.append_row(X.row(i));
      model.dual_coeffs.push_back(beta[i]);
      model.support_indices.push_back(i);
    }
  }
  return model;
}

SvrModel train_svr(const SupervisedDataset& train, const SvrHyperParams& hp,
                   const SolverOptions& opts) {
  SvrModel model = train_svr(train.X, train.y, hp, opts);
  model.feature_names = train.feature_names;
  return model;
}

double svr_dual_objective(const SvrModel& model, const Matrix& X, std::span<const double> y) {
  if (X.rows() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "X and y lengths differ");
  std::vector<double> beta(X.rows(), 0.0);
  for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
    const std::size_t idx = model.support_indices[s];
    if (idx >= beta.size()) throw Error(ErrorCode::kDimensionMismatch, "support index out of range");
    beta[idx] = model.dual_coeffs[s];
  }
  double quad = 0.0, lin = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0.0) continue;
    lin += y[i] * beta[i];
    l1 += std::abs(beta[i]);
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (beta[j] != 0.0) quad += beta[i] * beta[j] * kernel_eval(model.params.kernel, X.row(i), X.row(j));
    }
  }
  return -0.5 * quad - model.params.epsilon * l1 + lin;
}

}  // namespace tsxai
