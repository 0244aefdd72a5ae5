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

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsxai/matrix.hpp"
#include "tsxai/period.hpp"

namespace tsxai {

struct Column {
  std::string name;
  std::vector<double> values;

  friend bool operator==(const Column&, const Column&) = default;
};

// Regular monthly multivariate series. Periods are consecutive months and
// every column carries one value per period. Validated on construction.
class TimeSeriesFrame {
 public:
  TimeSeriesFrame(YearMonth start, std::vector<Column> columns, std::string target);

  YearMonth start() const { return start_; }
  std::size_t n_periods() const { return n_periods_; }
  YearMonth period(std::size_t i) const { return start_ + static_cast<int>(i); }
  std::vector<YearMonth> periods() const;

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t n_columns() const { return columns_.size(); }
  const std::string& target() const { return target_; }
  std::size_t target_index() const { return target_index_; }

  // Throws kUnknownColumn.
  std::size_t column_index(std::string_view name) const;
  const Column& column(std::string_view name) const { return columns_[column_index(name)]; }

  friend bool operator==(const TimeSeriesFrame&, const TimeSeriesFrame&) = default;

 private:
  YearMonth start_;
  std::size_t n_periods_ = 0;
  std::vector<Column> columns_;
  std::string target_;
  std::size_t target_index_ = 0;
};

struct MinMax {
  double min = 0.0;
  double max = 0.0;

  double scale(double v) const { return max > min ? (v - min) / (max - min) : 0.0; }
  double unscale(double s) const { return max > min ? min + s * (max - min) : min; }

  friend bool operator==(const MinMax&, const MinMax&) = default;
};

struct ScalerParams {
  std::vector<std::pair<std::string, MinMax>> columns;

  // Throws kUnknownColumn.
  const MinMax& at(std::string_view name) const;

  friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

// Lag-expanded supervised view of a frame. Features are laid out as the
// non-target columns at t-0, then every column at t-1, ..., t-lag.
struct SupervisedDataset {
  std::vector<std::string> feature_names;
  Matrix X;
  std::vector<double> y;
  std::vector<YearMonth> row_periods;
  int lag = 0;
  std::string target;

  std::size_t n_rows() const { return y.size(); }
  std::size_t n_features() const { return feature_names.size(); }

  // Rows [begin, end).
  SupervisedDataset slice(std::size_t begin, std::size_t end) const;
  // Throws kInvalidArgument when the period is not a row.
  std::size_t row_of(YearMonth period) const;

  friend bool operator==(const SupervisedDataset&, const SupervisedDataset&) = default;
};

enum class Reducer { kSum, kCount, kMean };

struct Event {
  std::string timestamp;  // ISO-8601 date or date-time, optional Z / +HH:MM offset
  std::string column;
  double value = 0.0;
};

// "<column> (t-<k>)", with the suffix omitted at k = 0.
std::string lagged_feature_name(std::string_view column, int k);

TimeSeriesFrame load_frame(std::string_view csv_text, std::string_view target);
std::string frame_to_csv(const TimeSeriesFrame& frame);

// Buckets events into calendar months after shifting UTC timestamps by
// `utc_offset`. Timestamps without an explicit zone are taken as UTC.
TimeSeriesFrame aggregate_monthly(const std::vector<Event>& events, Reducer reducer,
                                  std::string_view target,
                                  std::chrono::minutes utc_offset = std::chrono::hours(2));

ScalerParams fit_minmax(const TimeSeriesFrame& frame);
TimeSeriesFrame apply_minmax(const TimeSeriesFrame& frame, const ScalerParams& params);
TimeSeriesFrame invert_minmax(const TimeSeriesFrame& frame, const ScalerParams& params);

SupervisedDataset make_supervised(const TimeSeriesFrame& frame, int lag);

std::pair<SupervisedDataset, SupervisedDataset> chrono_split(const SupervisedDataset& ds,
                                                             double train_fraction);

std::string dataset_to_csv(const SupervisedDataset& ds);
// Reads the export format back. Lag and target name are recovered from the
// feature names.
SupervisedDataset dataset_from_csv(std::string_view csv_text);

}  // namespace tsxai
