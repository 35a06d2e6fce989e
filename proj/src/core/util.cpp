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

#include "qualint/util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qualint/error.hpp"

namespace qualint {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DuplicateSource: return "DuplicateSource";
    case ErrorCode::UnknownDomain: return "UnknownDomain";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::RowFormatError: return "RowFormatError";
    case ErrorCode::DuplicateReferenceKey: return "DuplicateReferenceKey";
    case ErrorCode::NullReferenceKey: return "NullReferenceKey";
    case ErrorCode::MappingConflict: return "MappingConflict";
    case ErrorCode::UnsupportedCatalogVersion: return "UnsupportedCatalogVersion";
    case ErrorCode::CatalogParseError: return "CatalogParseError";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::MissingKeyMapping: return "MissingKeyMapping";
    case ErrorCode::EmptyProjection: return "EmptyProjection";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoSources: return "NoSources";
    case ErrorCode::StaleAssessment: return "StaleAssessment";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::UnknownFeature: return "UnknownFeature";
    case ErrorCode::UnresolvedTerm: return "UnresolvedTerm";
    case ErrorCode::UnsupportedGoalShape: return "UnsupportedGoalShape";
    case ErrorCode::UnsupportedPredicate: return "UnsupportedPredicate";
    case ErrorCode::NoCandidateSources: return "NoCandidateSources";
    case ErrorCode::TooManySources: return "TooManySources";
    case ErrorCode::UnsatisfiableGoal: return "UnsatisfiableGoal";
    case ErrorCode::EmptyRanking: return "EmptyRanking";
    case ErrorCode::RejectedScoringFunction: return "RejectedScoringFunction";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace util {

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool in_quotes = false;
  bool after_quote = false;   // just closed a quoted field
  bool record_has_content = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    if (record_has_content) {
      end_field();
      current.line = record_line;
      records.push_back(std::move(current));
    }
    current = CsvRecord{};
    field.clear();
    after_quote = false;
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '\r') continue;
    if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
      continue;
    }
    if (!record_has_content) {
      record_has_content = true;
      record_line = line;
    }
    if (c == ',') {
      end_field();
    } else if (c == '"') {
      if (after_quote || !field.empty()) {
        fail(ErrorCode::RowFormatError,
             "row at line " + std::to_string(line) + ": unexpected quote");
      }
      in_quotes = true;
    } else {
      if (after_quote) {
        fail(ErrorCode::RowFormatError,
             "row at line " + std::to_string(line) +
                 ": characters after closing quote");
      }
      field.push_back(c);
    }
  }
  if (in_quotes) {
    fail(ErrorCode::RowFormatError,
         "row at line " + std::to_string(record_line) + ": unterminated quote");
  }
  end_record();
  return records;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  out << csv_row(fields) << '\n';
}

std::optional<Date> parse_date(std::string_view text) {
  auto parts = split(trim(text), '/');
  if (parts.size() != 3) return std::nullopt;
  auto d = parse_int(parts[0]);
  auto m = parse_int(parts[1]);
  auto y = parse_int(parts[2]);
  if (!d || !m || !y) return std::nullopt;
  if (*m < 1 || *m > 12 || *d < 1 || *d > 31 || *y < 1 || *y > 9999) return std::nullopt;
  Date date{std::chrono::year{static_cast<int>(*y)},
            std::chrono::month{static_cast<unsigned>(*m)},
            std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  return std::to_string(static_cast<unsigned>(date.day())) + "/" +
         std::to_string(static_cast<unsigned>(date.month())) + "/" +
         std::to_string(static_cast<int>(date.year()));
}

long days_between(const Date& from, const Date& to) {
  return static_cast<long>(
      (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

long days_between_30_360(const Date& from, const Date& to) {
  long d1 = std::min(30u, static_cast<unsigned>(from.day()));
  long d2 = std::min(30u, static_cast<unsigned>(to.day()));
  long m1 = static_cast<unsigned>(from.month());
  long m2 = static_cast<unsigned>(to.month());
  long y1 = static_cast<int>(from.year());
  long y2 = static_cast<int>(to.year());
  return (y2 - y1) * 360 + (m2 - m1) * 30 + (d2 - d1);
}

Date today() {
  return Date{std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
}

double round_half_up(double value, int digits) {
  if (!std::isfinite(value)) return value;
  double scale = std::pow(10.0, digits);
  double scaled = value * scale;
  double guard = 1e-9 * std::max(1.0, std::fabs(scaled));
  if (scaled >= 0) return std::floor(scaled + 0.5 + guard) / scale;
  return -std::floor(-scaled + 0.5 + guard) / scale;
}

std::string format_fixed(double value, int digits) {
  double rounded = round_half_up(value, digits);
  if (rounded == 0.0) rounded = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, rounded);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<long long> parse_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view text) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && to_lower(a) == to_lower(b);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace util
}  // namespace qualint
