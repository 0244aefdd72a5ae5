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

#include "tsxai/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "csv.hpp"
#include "tsxai/error.hpp"

namespace tsxai {
namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CountSummary summarize_counts(const std::vector<double>& v) {
  CountSummary s;
  s.sum = std::accumulate(v.begin(), v.end(), 0.0);
  s.mean = s.sum / static_cast<double>(v.size());
  s.median = median_of(v);
  return s;
}

std::pair<double, double> mean_and_sample_variance(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

// Continued fraction for I_x(a, b) (modified Lentz), valid for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 1000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::kNoConvergence, "incomplete beta continued fraction");
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass a y computed
// without cancellation.
double ibeta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Response tables

void ResponseTable::validate() const {
  if (n_cases < 1) throw Error(ErrorCode::kInvalidArgument, "n_cases must be >= 1");
  if (participant_ids.size() != yes_counts.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "participant ids and yes counts differ in length");
  }
  for (std::size_t i = 0; i < yes_counts.size(); ++i) {
    if (yes_counts[i] < 0 || yes_counts[i] > n_cases) {
      throw Error(ErrorCode::kInvalidArgument,
                  "participant " + participant_ids[i] + ": yes_count " +
                      std::to_string(yes_counts[i]) + " outside [0, " + std::to_string(n_cases) + "]");
    }
  }
}

std::vector<ResponseTable> parse_responses(std::string_view csv_text, int n_cases) {
  const auto rows = internal::parse_csv(csv_text);
  if (rows.empty()) throw Error(ErrorCode::kEmptyTable, "empty response CSV");
  const auto& header = rows.front().cells;
  if (header.size() < 3 || header[0] != "participant_id" || header[1] != "group" ||
      header[2] != "yes_count") {
    throw Error(ErrorCode::kParse, "line 1: expected 'participant_id,group,yes_count,...'");
  }
  for (std::size_t c = 3; c < header.size(); ++c) {
    if (std::find(std::begin(kDemographicColumns), std::end(kDemographicColumns), header[c]) ==
        std::end(kDemographicColumns)) {
      throw Error(ErrorCode::kParse, "line 1: unknown column '" + header[c] + "'");
    }
  }
  std::vector<ResponseTable> tables;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "line " + std::to_string(row.line);
    if (row.cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, where + ": wrong number of cells");
    }
    const std::string& group = row.cells[1];
    if (group != "LIME" && group != "SHAP" && group != "noXAI") {
      throw Error(ErrorCode::kParse, where + ": group must be LIME, SHAP or noXAI");
    }
    double yes = 0.0;
    if (!internal::parse_double(row.cells[2], yes) || yes != std::floor(yes)) {
      throw Error(ErrorCode::kNonNumericCell, where + ": yes_count must be an integer");
    }
    std::map<std::string, double> demo;
    for (std::size_t c = 3; c < header.size(); ++c) {
      if (row.cells[c].empty()) continue;
      double v = 0.0;
      if (!internal::parse_double(row.cells[c], v)) {
        throw Error(ErrorCode::kNonNumericCell, where + ", column '" + header[c] + "'");
      }
      demo[header[c]] = v;
    }
    auto it = std::find_if(tables.begin(), tables.end(),
                           [&](const ResponseTable& t) { return t.group == group; });
    if (it == tables.end()) {
      tables.push_back(ResponseTable{group, n_cases, {}, {}, {}});
      it = tables.end() - 1;
    }
    it->participant_ids.push_back(row.cells[0]);
    it->yes_counts.push_back(static_cast<int>(yes));
    it->demographics.push_back(std::move(demo));
  }
  if (tables.empty()) throw Error(ErrorCode::kEmptyTable, "response CSV has no participants");
  for (const auto& t : tables) t.validate();
  return tables;
}

ResponseSummary summarize(const ResponseTable& table) {
  table.validate();
  if (table.yes_counts.empty()) throw Error(ErrorCode::kEmptyTable, "no participants");
  std::vector<double> yes, no;
  for (int c : table.yes_counts) {
    yes.push_back(c);
    no.push_back(table.n_cases - c);
  }
  return {table.group, table.yes_counts.size(), summarize_counts(yes), summarize_counts(no)};
}

// ---------------------------------------------------------------------------
// Tests

WelchResult welch_from_summary(double mean_a, double var_a, std::size_t n_a, double mean_b,
                               double var_b, std::size_t n_b) {
  if (n_a < 2 || n_b < 2) throw Error(ErrorCode::kInvalidSummary, "each group needs n >= 2");
  if (!(var_a >= 0.0) || !(var_b >= 0.0) || (var_a == 0.0 && var_b == 0.0)) {
    throw Error(ErrorCode::kInvalidSummary, "variances must be >= 0 and not both zero");
  }
  if (!std::isfinite(mean_a) || !std::isfinite(mean_b) || !std::isfinite(var_a) ||
      !std::isfinite(var_b)) {
    throw Error(ErrorCode::kInvalidSummary, "non-finite summary statistic");
  }
  WelchResult r{mean_a, mean_b, var_a, var_b, n_a, n_b, 0.0, 0.0, 1.0};
  const double sa = var_a / static_cast<double>(n_a);
  const double sb = var_b / static_cast<double>(n_b);
  const double se2 = sa + sb;
  r.t_stat = (mean_a - mean_b) / std::sqrt(se2);
  r.df = se2 * se2 /
         (sa * sa / static_cast<double>(n_a - 1) + sb * sb / static_cast<double>(n_b - 1));
  r.p_two_tailed = std::min(1.0, 2.0 * student_t_sf(std::abs(r.t_stat), r.df));
  return r;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples, "each sample needs at least 2 observations");
  }
  const auto [ma, va] = mean_and_sample_variance(a);
  const auto [mb, vb] = mean_and_sample_variance(b);
  if (va == 0.0 || vb == 0.0) throw Error(ErrorCode::kZeroVariance, "a sample has zero variance");
  return welch_from_summary(ma, va, a.size(), mb, vb, b.size());
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  if (x.size() < 3) throw Error(ErrorCode::kTooFewSamples, "spearman needs n >= 3");
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // mid-ranks always average to this
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kConstantInput, "constant input vector");
  SpearmanResult r;
  r.n = x.size();
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double one_minus = (1.0 - r.rho) * (1.0 + r.rho);
  if (one_minus <= 0.0) {
    r.p_two_tailed = 0.0;
  } else {
    const double t = r.rho * std::sqrt((n - 2.0) / one_minus);
    r.p_two_tailed = std::min(1.0, 2.0 * student_t_sf(std::abs(t), n - 2.0));
  }
  return r;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ibeta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "ibeta needs x in [0, 1]");
  return ibeta(a, b, x, 1.0 - x);
}

double student_t_sf(double t, double df) {
  if (!(df > 0.0) || !std::isfinite(df)) throw Error(ErrorCode::kInvalidDf, "df must be > 0");
  if (std::isnan(t)) throw Error(ErrorCode::kInvalidArgument, "t is NaN");
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  // x = df / (df + t^2), 1 - x = t^2 / (df + t^2).
  const double tail = 0.5 * ibeta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
  return t > 0.0 ? tail : 1.0 - tail;
}

}  // namespace tsxai
