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

#include <compare>
#include <string>
#include <string_view>

namespace tsxai {

// Calendar month identifier. Ordered and densely indexable.
class YearMonth {
 public:
  constexpr YearMonth() = default;
  constexpr YearMonth(int year, int month) : index_(year * 12 + (month - 1)) {}

  static constexpr YearMonth from_index(int index) {
    YearMonth ym;
    ym.index_ = index;
    return ym;
  }

  // Accepts "YYYY-MM" or "YYYY-MM-DD" (day is validated, then dropped).
  static YearMonth parse(std::string_view text);

  constexpr int year() const { return floor_div(index_, 12); }
  constexpr int month() const { return index_ - floor_div(index_, 12) * 12 + 1; }
  constexpr int index() const { return index_; }

  constexpr YearMonth operator+(int months) const { return from_index(index_ + months); }
  constexpr YearMonth operator-(int months) const { return from_index(index_ - months); }
  constexpr int operator-(YearMonth other) const { return index_ - other.index_; }

  std::string str() const;

  friend constexpr auto operator<=>(YearMonth, YearMonth) = default;

 private:
  static constexpr int floor_div(int a, int b) {
    return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
  }
  int index_ = 0;
};

}  // namespace tsxai
