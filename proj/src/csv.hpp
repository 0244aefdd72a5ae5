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
#include <string>
#include <string_view>
#include <vector>

namespace tsxai::internal {

struct CsvRow {
  std::size_t line = 0;  // 1-based source line
  std::vector<std::string> cells;
};

// Comma separated, optional double quotes, blank lines skipped. Cells are
// trimmed of surrounding whitespace.
std::vector<CsvRow> parse_csv(std::string_view text);

// Strict decimal parse of a whole cell; false on blank or trailing garbage.
bool parse_double(std::string_view cell, double& out);

// Shortest representation that round-trips.
std::string format_double(double v);

}  // namespace tsxai::internal
