//
// Copyright 2026 The qualint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qualint::util {

// ---------------------------------------------------------------------------
// Delimited text (comma separated, first row header, double-quote escaping).

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line the record starts on
};

// Splits `text` into records. Quoted fields may span lines; a doubled quote
// inside a quoted field is a literal quote. Blank lines are skipped. Throws
// RowFormatError (with the record's line) on an unterminated quote or stray
// characters after a closing quote.
std::vector<CsvRecord> parse_csv(std::string_view text);

std::string read_file(const std::string& path);

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);
std::string csv_row(std::span<const std::string> fields);

// ---------------------------------------------------------------------------
// Calendar dates, written day/month/year.

using Date = std::chrono::year_month_day;

std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);

// Whole calendar days from `from` to `to` (negative if `to` is earlier).
long days_between(const Date& from, const Date& to);

// 30/360 day count: every month counts 30 days, day-of-month clamped to 30.
long days_between_30_360(const Date& from, const Date& to);

Date today();

// ---------------------------------------------------------------------------
// Numbers.

// Half-up rounding to `digits` decimals. A tiny relative guard absorbs binary
// representation error, so 0.575 (stored as 0.57499999...) becomes 0.58.
double round_half_up(double value, int digits);

// Fixed-point rendering after round_half_up.
std::string format_fixed(double value, int digits);

// Shortest round-trippable rendering.
std::string format_exact(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

// ---------------------------------------------------------------------------
// Strings.

std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);
bool iequals(std::string_view a, std::string_view b);
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace qualint::util
