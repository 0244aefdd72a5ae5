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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsxai {

// Yes-counts of one study arm. Each participant saw n_cases predictions and
// answered yes/no for each.
struct ResponseTable {
  std::string group;  // LIME, SHAP or noXAI
  int n_cases = 10;
  std::vector<std::string> participant_ids;
  std::vector<int> yes_counts;
  // Optional numeric demographic codes per participant, keyed by column name.
  std::vector<std::map<std::string, double>> demographics;

  void validate() const;
};

inline constexpr std::string_view kDemographicColumns[] = {"age", "gender", "education", "stem",
                                                           "xai_knowledge"};

// Parses `participant_id,group,yes_count[,age,gender,education,stem,xai_knowledge]`
// and returns one table per group in order of first appearance.
std::vector<ResponseTable> parse_responses(std::string_view csv_text, int n_cases = 10);

struct CountSummary {
  double sum = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

struct ResponseSummary {
  std::string group;
  std::size_t n_participants = 0;
  CountSummary yes;
  CountSummary no;
};

ResponseSummary summarize(const ResponseTable& table);

struct WelchResult {
  double mean_a = 0.0, mean_b = 0.0;
  double var_a = 0.0, var_b = 0.0;  // sample variances (n - 1)
  std::size_t n_a = 0, n_b = 0;
  double t_stat = 0.0;
  double df = 0.0;  // Welch-Satterthwaite
  double p_two_tailed = 1.0;
};

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);
WelchResult welch_from_summary(double mean_a, double var_a, std::size_t n_a, double mean_b,
                               double var_b, std::size_t n_b);

struct SpearmanResult {
  double rho = 0.0;
  double p_two_tailed = 1.0;
  std::size_t n = 0;
};

// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

// P(T > t) for Student's t with df degrees of freedom.
double student_t_sf(double t, double df);

}  // namespace tsxai
