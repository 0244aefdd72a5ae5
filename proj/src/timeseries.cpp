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

#include "tsxai/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "csv.hpp"
#include "tsxai/error.hpp"

namespace tsxai {
namespace {

using internal::format_double;
using internal::parse_double;

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return true;
}

// Parses an ISO-8601 timestamp to UTC seconds.
std::chrono::sys_seconds parse_timestamp(std::string_view ts) {
  using namespace std::chrono;
  const auto fail = [&] {
    return Error(ErrorCode::kParse, "invalid timestamp '" + std::string(ts) + "'");
  };
  int y = 0, mo = 0, d = 0;
  if (ts.size() < 10 || ts[4] != '-' || ts[7] != '-' || !read_int(ts, 0, 4, y) ||
      !read_int(ts, 5, 2, mo) || !read_int(ts, 8, 2, d)) {
    throw fail();
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw fail();
  sys_seconds t = sys_days(ymd);
  std::size_t pos = 10;
  if (pos == ts.size()) return t;
  if (ts[pos] != 'T' && ts[pos] != ' ') throw fail();
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!read_int(ts, pos, 2, hh) || pos + 2 >= ts.size() || ts[pos + 2] != ':' ||
      !read_int(ts, pos + 3, 2, mm)) {
    throw fail();
  }
  pos += 5;
  if (pos < ts.size() && ts[pos] == ':') {
    if (!read_int(ts, pos + 1, 2, ss)) throw fail();
    pos += 3;
    if (pos < ts.size() && ts[pos] == '.') {
      ++pos;
      while (pos < ts.size() && ts[pos] >= '0' && ts[pos] <= '9') ++pos;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) throw fail();
  t += hours(hh) + minutes(mm) + seconds(ss);
  if (pos == ts.size()) return t;
  if (ts[pos] == 'Z' && pos + 1 == ts.size()) return t;
  if (ts[pos] == '+' || ts[pos] == '-') {
    const int sign = ts[pos] == '+' ? 1 : -1;
    int oh = 0, om = 0;
    std::string_view rest = ts.substr(pos + 1);
    bool ok = false;
    if (rest.size() == 5 && rest[2] == ':') ok = read_int(rest, 0, 2, oh) && read_int(rest, 3, 2, om);
    else if (rest.size() == 4) ok = read_int(rest, 0, 2, oh) && read_int(rest, 2, 2, om);
    else if (rest.size() == 2) ok = read_int(rest, 0, 2, oh);
    if (!ok) throw fail();
    // Local time = UTC + offset.
    return t - sign * (hours(oh) + minutes(om));
  }
  throw fail();
}

}  // namespace

std::string lagged_feature_name(std::string_view column, int k) {
  if (k == 0) return std::string(column);
  return std::string(column) + " (t-" + std::to_string(k) + ")";
}

// ---------------------------------------------------------------------------
// TimeSeriesFrame

TimeSeriesFrame::TimeSeriesFrame(YearMonth start, std::vector<Column> columns, std::string target)
    : start_(start), columns_(std::move(columns)), target_(std::move(target)) {
  if (columns_.empty()) throw Error(ErrorCode::kEmptyInput, "frame has no columns");
  n_periods_ = columns_.front().values.size();
  if (n_periods_ == 0) throw Error(ErrorCode::kEmptyInput, "frame has no periods");
  std::set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kParse, "duplicate column '" + c.name + "'");
    }
    if (c.values.size() != n_periods_) {
      throw Error(ErrorCode::kDimensionMismatch, "column '" + c.name + "' has " +
                                                     std::to_string(c.values.size()) +
                                                     " values, expected " +
                                                     std::to_string(n_periods_));
    }
    for (double v : c.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "column '" + c.name + "'");
    }
  }
  const auto it = std::find_if(columns_.begin(), columns_.end(),
                               [&](const Column& c) { return c.name == target_; });
  if (it == columns_.end()) throw Error(ErrorCode::kUnknownTarget, "'" + target_ + "'");
  target_index_ = static_cast<std::size_t>(it - columns_.begin());
}

std::vector<YearMonth> TimeSeriesFrame::periods() const {
  std::vector<YearMonth> out;
  out.reserve(n_periods_);
  for (std::size_t i = 0; i < n_periods_; ++i) out.push_back(period(i));
  return out;
}

std::size_t TimeSeriesFrame::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownColumn, "'" + std::string(name) + "'");
}

const MinMax& ScalerParams::at(std::string_view name) const {
  for (const auto& [n, mm] : columns) {
    if (n == name) return mm;
  }
  throw Error(ErrorCode::kUnknownColumn, "no scaler entry for '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// CSV ingestion

TimeSeriesFrame load_frame(std::string_view csv_text, std::string_view target) {
  const auto rows = internal::parse_csv(csv_text);
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "empty CSV");
  const auto& header = rows.front().cells;
  if (header.size() < 2 || header.front() != "period") {
    throw Error(ErrorCode::kParse, "line 1: header must start with 'period' and name a column");
  }
  if (rows.size() < 2) throw Error(ErrorCode::kEmptyInput, "CSV has no data rows");
  const std::size_t n_cols = header.size() - 1;

  struct Parsed {
    YearMonth period;
    std::size_t line;
    std::vector<double> values;
  };
  std::vector<Parsed> parsed;
  parsed.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "line " + std::to_string(row.line);
    if (row.cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, where + ": expected " + std::to_string(header.size()) +
                                         " cells, got " + std::to_string(row.cells.size()));
    }
    Parsed p{YearMonth::parse(row.cells[0]), row.line, std::vector<double>(n_cols)};
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!parse_double(row.cells[c + 1], p.values[c])) {
        throw Error(ErrorCode::kNonNumericCell, where + ", column '" + header[c + 1] + "': '" +
                                                   row.cells[c + 1] + "'");
      }
    }
    parsed.push_back(std::move(p));
  }
  std::stable_sort(parsed.begin(), parsed.end(),
                   [](const Parsed& a, const Parsed& b) { return a.period < b.period; });
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    const int step = parsed[i].period - parsed[i - 1].period;
    if (step == 0) {
      throw Error(ErrorCode::kDuplicatePeriod, "line " + std::to_string(parsed[i].line) + ": " +
                                                   parsed[i].period.str());
    }
    if (step > 1) {
      throw Error(ErrorCode::kMissingPeriod, "no data for " + (parsed[i - 1].period + 1).str());
    }
  }
  std::vector<Column> columns(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    columns[c].name = header[c + 1];
    columns[c].values.reserve(parsed.size());
    for (const auto& p : parsed) columns[c].values.push_back(p.values[c]);
  }
  if (std::none_of(columns.begin(), columns.end(),
                   [&](const Column& c) { return c.name == target; })) {
    throw Error(ErrorCode::kUnknownTarget, "'" + std::string(target) + "' is not a column");
  }
  return TimeSeriesFrame(parsed.front().period, std::move(columns), std::string(target));
}

std::string frame_to_csv(const TimeSeriesFrame& frame) {
  std::string out = "period";
  for (const auto& c : frame.columns()) out += "," + csv_cell(c.name);
  out += '\n';
  for (std::size_t i = 0; i < frame.n_periods(); ++i) {
    out += frame.period(i).str();
    for (const auto& c : frame.columns()) out += "," + format_double(c.values[i]);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monthly aggregation

TimeSeriesFrame aggregate_monthly(const std::vector<Event>& events, Reducer reducer,
                                  std::string_view target, std::chrono::minutes utc_offset) {
  using namespace std::chrono;
  if (events.empty()) throw Error(ErrorCode::kEmptyInput, "no events");

  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, std::map<int, Acc>> buckets;
  std::optional<YearMonth> lo, hi;
  for (const auto& e : events) {
    const sys_seconds local = parse_timestamp(e.timestamp) + utc_offset;
    const year_month_day ymd{floor<days>(local)};
    const YearMonth ym(static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month())));
    if (!lo || ym < *lo) lo = ym;
    if (!hi || ym > *hi) hi = ym;
    auto& acc = buckets[e.column][ym.index()];
    acc.sum += e.value;
    ++acc.count;
  }

  const std::size_t n = static_cast<std::size_t>(*hi - *lo) + 1;
  std::vector<Column> columns;
  for (const auto& [name, by_month] : buckets) {
    Column col{name, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
      const YearMonth ym = *lo + static_cast<int>(i);
      const auto it = by_month.find(ym.index());
      if (it == by_month.end()) {
        if (reducer == Reducer::kMean) {
          throw Error(ErrorCode::kUndefinedMean, "column '" + name + "' has no events in " + ym.str());
        }
        continue;
      }
      switch (reducer) {
        case Reducer::kSum: col.values[i] = it->second.sum; break;
        case Reducer::kCount: col.values[i] = static_cast<double>(it->second.count); break;
        case Reducer::kMean:
          col.values[i] = it->second.sum / static_cast<double>(it->second.count);
          break;
      }
    }
    columns.push_back(std::move(col));
  }
  return TimeSeriesFrame(*lo, std::move(columns), std::string(target));
}

// ---------------------------------------------------------------------------
// Min-max scaling

ScalerParams fit_minmax(const TimeSeriesFrame& frame) {
  ScalerParams params;
  for (const auto& c : frame.columns()) {
    const auto [mn, mx] = std::minmax_element(c.values.begin(), c.values.end());
    params.columns.emplace_back(c.name, MinMax{*mn, *mx});
  }
  return params;
}

namespace {

template <typename F>
TimeSeriesFrame map_columns(const TimeSeriesFrame& frame, const ScalerParams& params, F f) {
  std::vector<Column> cols = frame.columns();
  for (auto& c : cols) {
    const MinMax& mm = params.at(c.name);
    for (double& v : c.values) v = f(mm, v);
  }
  return TimeSeriesFrame(frame.start(), std::move(cols), frame.target());
}

}  // namespace

TimeSeriesFrame apply_minmax(const TimeSeriesFrame& frame, const ScalerParams& params) {
  return map_columns(frame, params, [](const MinMax& mm, double v) { return mm.scale(v); });
}

TimeSeriesFrame invert_minmax(const TimeSeriesFrame& frame, const ScalerParams& params) {
  return map_columns(frame, params, [](const MinMax& mm, double v) { return mm.unscale(v); });
}

// ---------------------------------------------------------------------------
// Sliding-window reframing

SupervisedDataset make_supervised(const TimeSeriesFrame& frame, int lag) {
  if (lag < 1) throw Error(ErrorCode::kInvalidArgument, "lag must be positive");
  const std::size_t n_periods = frame.n_periods();
  if (static_cast<std::size_t>(lag) >= n_periods) {
    throw Error(ErrorCode::kLagTooLarge, "lag " + std::to_string(lag) + " needs more than " +
                                             std::to_string(n_periods) + " periods");
  }
  const auto& cols = frame.columns();
  const std::size_t target = frame.target_index();

  SupervisedDataset ds;
  ds.lag = lag;
  ds.target = frame.target();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c != target) ds.feature_names.push_back(lagged_feature_name(cols[c].name, 0));
  }
  for (int k = 1; k <= lag; ++k) {
    for (const auto& col : cols) ds.feature_names.push_back(lagged_feature_name(col.name, k));
  }

  const std::size_t n_rows = n_periods - static_cast<std::size_t>(lag);
  ds.X = Matrix(n_rows, ds.feature_names.size());
  ds.y.resize(n_rows);
  ds.row_periods.resize(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t t = r + static_cast<std::size_t>(lag);
    auto row = ds.X.row(r);
    std::size_t f = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c != target) row[f++] = cols[c].values[t];
    }
    for (std::size_t k = 1; k <= static_cast<std::size_t>(lag); ++k) {
      for (const auto& col : cols) row[f++] = col.values[t - k];
    }
    ds.y[r] = cols[target].values[t];
    ds.row_periods[r] = frame.period(t);
  }
  return ds;
}

SupervisedDataset SupervisedDataset::slice(std::size_t begin, std::size_t end) const {
  SupervisedDataset out;
  out.feature_names = feature_names;
  out.X = X.slice_rows(begin, end);
  out.y.assign(y.begin() + static_cast<std::ptrdiff_t>(begin),
               y.begin() + static_cast<std::ptrdiff_t>(end));
  out.row_periods.assign(row_periods.begin() + static_cast<std::ptrdiff_t>(begin),
                         row_periods.begin() + static_cast<std::ptrdiff_t>(end));
  out.lag = lag;
  out.target = target;
  return out;
}

std::size_t SupervisedDataset::row_of(YearMonth period) const {
  const auto it = std::find(row_periods.begin(), row_periods.end(), period);
  if (it == row_periods.end()) {
    throw Error(ErrorCode::kInvalidArgument, "period " + period.str() + " is not in the dataset");
  }
  return static_cast<std::size_t>(it - row_periods.begin());
}

std::pair<SupervisedDataset, SupervisedDataset> chrono_split(const SupervisedDataset& ds,
                                                             double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(ds.n_rows())));
  if (n_train == 0 || n_train == ds.n_rows()) {
    throw Error(ErrorCode::kEmptySplit, std::to_string(ds.n_rows()) + " rows at fraction " +
                                            format_double(train_fraction));
  }
  return {ds.slice(0, n_train), ds.slice(n_train, ds.n_rows())};
}

// ---------------------------------------------------------------------------
// Dataset export

std::string dataset_to_csv(const SupervisedDataset& ds) {
  std::string out = "period";
  for (const auto& n : ds.feature_names) out += "," + csv_cell(n);
  out += ",target\n";
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    out += ds.row_periods[r].str();
    for (double v : ds.X.row(r)) out += "," + format_double(v);
    out += "," + format_double(ds.y[r]) + "\n";
  }
  return out;
}

SupervisedDataset dataset_from_csv(std::string_view csv_text) {
  const auto rows = internal::parse_csv(csv_text);
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "empty dataset CSV");
  const auto& header = rows.front().cells;
  if (header.size() < 3 || header.front() != "period" || header.back() != "target") {
    throw Error(ErrorCode::kParse, "line 1: expected 'period,<features...>,target'");
  }
  SupervisedDataset ds;
  ds.feature_names.assign(header.begin() + 1, header.end() - 1);

  // Recover lag and target from the naming scheme.
  std::set<std::string> current, lagged_one;
  for (const auto& name : ds.feature_names) {
    const auto open = name.rfind(" (t-");
    if (open == std::string::npos || name.back() != ')') {
      current.insert(name);
      continue;
    }
    int k = 0;
    const std::string digits = name.substr(open + 4, name.size() - open - 5);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) {
      throw Error(ErrorCode::kParse, "bad lag suffix in feature '" + name + "'");
    }
    ds.lag = std::max(ds.lag, k);
    if (k == 1) lagged_one.insert(name.substr(0, open));
  }
  for (const auto& c : lagged_one) {
    if (!current.contains(c)) {
      if (!ds.target.empty()) throw Error(ErrorCode::kParse, "ambiguous target column");
      ds.target = c;
    }
  }
  if (ds.lag == 0 || ds.target.empty()) {
    throw Error(ErrorCode::kParse, "feature names do not follow the lag layout");
  }

  ds.X = Matrix(0, ds.feature_names.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "line " + std::to_string(row.line);
    if (row.cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, where + ": wrong number of cells");
    }
    ds.row_periods.push_back(YearMonth::parse(row.cells.front()));
    std::vector<double> values(ds.feature_names.size());
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (!parse_double(row.cells[c + 1], values[c])) {
        throw Error(ErrorCode::kNonNumericCell, where + ", column '" + header[c + 1] + "'");
      }
    }
    double target = 0.0;
    if (!parse_double(row.cells.back(), target)) {
      throw Error(ErrorCode::kNonNumericCell, where + ", column 'target'");
    }
    ds.X.append_row(values);
    ds.y.push_back(target);
  }
  for (std::size_t i = 1; i < ds.row_periods.size(); ++i) {
    if (ds.row_periods[i] <= ds.row_periods[i - 1]) {
      throw Error(ErrorCode::kParse, "dataset rows are not in chronological order");
    }
  }
  return ds;
}

}  // namespace tsxai
