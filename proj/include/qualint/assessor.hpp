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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qualint/catalog.hpp"
#include "qualint/quality.hpp"

// Quality metrics. Attribute-level scores are measured against a reference
// relation ref(r) and share its cardinality as denominator:
//
//   population   = |reference keys represented in r| / |ref(r)|
//   incompleteness = |nulls among represented rows| / |ref(r)|
//   fact         = population - incompleteness
//   validity     = |represented non-null values satisfying the rule| / |ref(r)|
//   accuracy     = |valid values equal to the key-linked reference value| / |ref(r)|
//
// so fact >= validity >= accuracy holds for every column. Validity and
// accuracy are evaluated as represented/|ref| - deficit/|ref|, the same shape
// as fact, which keeps that ordering exact in floating point. Timeliness is
// max{0, 1 - age / volatility}.
namespace qualint::assess {

enum class AgeMode { ExactDays, Months30 };

std::string_view age_mode_name(AgeMode mode) noexcept;
std::optional<AgeMode> age_mode_from_name(std::string_view name);

// --- primitive metrics ------------------------------------------------------

// |non-null| / |values|; 1 for an empty list.
double null_completeness(std::span<const Cell> values);
// |null| / |values|; 0 for an empty list.
double null_ratio(std::span<const Cell> values);

// Which reference tuple each source row stands for.
struct KeySpec {
  std::vector<std::size_t> source_columns;     // key positions in the source rows
  std::vector<std::size_t> reference_columns;  // same keys in the reference rows
  std::vector<ValueType> types;
};

struct KeyLink {
  // For every reference row: the first source row carrying its key.
  std::vector<std::optional<std::size_t>> source_row;
  std::size_t matched = 0;
  std::size_t unmatched_rows = 0;   // null key, or key absent from the reference
  std::size_t duplicate_rows = 0;   // key already represented by an earlier row
};

KeyLink link_by_key(std::span<const Row> rows, const ReferenceRelation& reference,
                    const KeySpec& keys);

// Throws EmptyReference when the reference has no rows.
double population_completeness(std::span<const Row> rows, const ReferenceRelation& reference,
                               const KeySpec& keys);
double population_completeness(const KeyLink& link, std::size_t reference_cardinality);

double incompleteness(std::span<const Cell> represented_values,
                      std::size_t reference_cardinality);

// pop - inc. Throws InvariantViolation if inc exceeds pop.
double fact_completeness(double population, double incompleteness);

// `represented_values` holds one value per represented reference key.
double validity(std::span<const Cell> represented_values, const DomainRule& rule,
                std::size_t reference_cardinality);

// values[i] is linked to reference_values[i].
double accuracy(std::span<const Cell> values, std::span<const Cell> reference_values,
                const DomainRule& rule, std::size_t reference_cardinality);

struct TimelinessInput {
  util::Date input_time;
  util::Date delivery_time;
  double volatility = 0;  // days
  AgeMode age_mode = AgeMode::ExactDays;
};

double age_in_days(const util::Date& from, const util::Date& to, AgeMode mode);
double timeliness(const TimelinessInput& input);

// sum / M; sources that cannot supply an attribute contribute 0.
// Throws EmptyProjection when M is 0 and InvalidArgument when scores > M.
double scaled_aggregate(std::span<const double> scores, std::size_t total_attributes);
// Throws EmptyInput on an empty list.
double max_aggregate(std::span<const double> scores);

// --- column and table level ---------------------------------------------------

struct ColumnScores {
  double population_completeness = 0;
  double incompleteness = 0;
  double fact_completeness = 0;
  double validity = 0;
  double accuracy = 0;
};

// Scores one source column (position `column` in `rows`) against reference
// column `reference_column`, using an existing key link.
ColumnScores assess_column(std::span<const Row> rows, std::size_t column, const KeyLink& link,
                           const ReferenceRelation& reference, std::size_t reference_column,
                           const DomainRule& rule);

struct TableDiagnostics {
  Id table_id = 0;
  Id gs_table_id = 0;
  std::size_t rows = 0;
  std::size_t matched = 0;
  std::size_t unmatched_rows = 0;
  std::size_t duplicate_rows = 0;
};

struct AssessOptions {
  AgeMode age_mode = AgeMode::ExactDays;
};

// One ColumnProfile per mapping, ordered by (gs_column_id, column_id).
std::vector<ColumnProfile> assess_mapping_table(const Catalog& catalog,
                                                const util::Date& delivery_date,
                                                const AssessOptions& options = {},
                                                std::vector<TableDiagnostics>* diagnostics = nullptr);

}  // namespace qualint::assess
