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

#include "tsxai/period.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "tsxai/error.hpp"

namespace tsxai {
namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

YearMonth YearMonth::parse(std::string_view text) {
  const auto fail = [&] {
    return Error(ErrorCode::kParse, "invalid period '" + std::string(text) + "'");
  };
  if (text.size() != 7 && text.size() != 10) throw fail();
  if (text[4] != '-') throw fail();
  int year = 0, month = 0;
  if (!parse_int(text.substr(0, 4), year) || !parse_int(text.substr(5, 2), month)) throw fail();
  if (month < 1 || month > 12) throw fail();
  if (text.size() == 10) {
    int day = 0;
    if (text[7] != '-' || !parse_int(text.substr(8, 2), day)) throw fail();
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) throw fail();
  }
  return YearMonth(year, month);
}

std::string YearMonth::str() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year(), month());
  return buf;
}

}  // namespace tsxai
