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

#include "qualint/assessor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qualint/error.hpp"

namespace qualint::assess {

std::string_view age_mode_name(AgeMode mode) noexcept {
  return mode == AgeMode::Months30 ? "months30" : "exact-days";
}

std::optional<AgeMode> age_mode_from_name(std::string_view name) {
  auto n = util::to_lower(util::trim(name));
  if (n == "months30") return AgeMode::Months30;
  if (n == "exact-days" || n == "exact_days" || n == "exact") return AgeMode::ExactDays;
  return std::nullopt;
}

namespace {

void require_reference(std::size_t cardinality) {
  if (cardinality == 0) fail(ErrorCode::EmptyReference, "reference relation is empty");
}

std::size_t count_nulls(std::span<const Cell> values) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](const Cell& c) { return !c; }));
}

double ratio(std::size_t count, std::size_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

// represented/|ref| - deficit/|ref|. Written in the same shape as
// population - incompleteness so that fact >= validity >= accuracy holds
// exactly in floating point, not just up to an ulp.
double represented_share(std::size_t represented, std::size_t deficit, std::size_t total) {
  return std::max(0.0, ratio(represented, total) - ratio(deficit, total));
}

std::vector<std::string> key_of(const Row& row, std::span<const std::size_t> columns,
                                std::span<const ValueType> types, bool* has_null) {
  std::vector<std::string> key;
  key.reserve(columns.size());
  *has_null = false;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& cell = row[columns[i]];
    if (!cell) {
      *has_null = true;
      return {};
    }
    key.push_back(canonical_value(*cell, types[i]));
  }
  return key;
}

}  // namespace

double null_completeness(std::span<const Cell> values) {
  if (values.empty()) return 1.0;
  return ratio(values.size() - count_nulls(values), values.size());
}

double null_ratio(std::span<const Cell> values) {
  if (values.empty()) return 0.0;
  return ratio(count_nulls(values), values.size());
}

KeyLink link_by_key(std::span<const Row> rows, const ReferenceRelation& reference,
                    const KeySpec& keys) {
  std::map<std::vector<std::string>, std::size_t> ref_index;
  for (std::size_t i = 0; i < reference.rows.size(); ++i) {
    bool has_null = false;
    auto key = key_of(reference.rows[i], keys.reference_columns, keys.types, &has_null);
    if (!has_null) ref_index.emplace(std::move(key), i);
  }
  KeyLink link;
  link.source_row.assign(reference.rows.size(), std::nullopt);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool has_null = false;
    auto key = key_of(rows[r], keys.source_columns, keys.types, &has_null);
    if (has_null) {
      ++link.unmatched_rows;
      continue;
    }
    auto it = ref_index.find(key);
    if (it == ref_index.end()) {
      ++link.unmatched_rows;
    } else if (link.source_row[it->second]) {
      ++link.duplicate_rows;
    } else {
      link.source_row[it->second] = r;
      ++link.matched;
    }
  }
  return link;
}

double population_completeness(std::span<const Row> rows, const ReferenceRelation& reference,
                               const KeySpec& keys) {
  require_reference(reference.cardinality());
  return population_completeness(link_by_key(rows, reference, keys), reference.cardinality());
}

double population_completeness(const KeyLink& link, std::size_t reference_cardinality) {
  require_reference(reference_cardinality);
  return ratio(link.matched, reference_cardinality);
}

double incompleteness(std::span<const Cell> represented_values,
                      std::size_t reference_cardinality) {
  require_reference(reference_cardinality);
  return ratio(count_nulls(represented_values), reference_cardinality);
}

double fact_completeness(double population, double incompleteness) {
  if (incompleteness > population)
    fail(ErrorCode::InvariantViolation,
         "incompleteness " + util::format_exact(incompleteness) + " exceeds population " +
             util::format_exact(population));
  return std::max(0.0, population - incompleteness);
}

double validity(std::span<const Cell> represented_values, const DomainRule& rule,
                std::size_t reference_cardinality) {
  require_reference(reference_cardinality);
  std::size_t deficit = 0;  // nulls and out-of-domain values
  for (const auto& v : represented_values)
    if (!v || !rule.satisfied_by(*v)) ++deficit;
  return represented_share(represented_values.size(), deficit, reference_cardinality);
}

double accuracy(std::span<const Cell> values, std::span<const Cell> reference_values,
                const DomainRule& rule, std::size_t reference_cardinality) {
  require_reference(reference_cardinality);
  if (values.size() != reference_values.size())
    fail(ErrorCode::InvalidArgument, "accuracy needs one reference value per value");
  auto type = rule.value_type();
  std::size_t deficit = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    const auto& ref = reference_values[i];
    if (!(v && ref && rule.satisfied_by(*v) && values_equal(*v, *ref, type))) ++deficit;
  }
  return represented_share(values.size(), deficit, reference_cardinality);
}

double age_in_days(const util::Date& from, const util::Date& to, AgeMode mode) {
  return static_cast<double>(mode == AgeMode::Months30 ? util::days_between_30_360(from, to)
                                                       : util::days_between(from, to));
}

double timeliness(const TimelinessInput& input) {
  if (!(input.volatility > 0))
    fail(ErrorCode::InvalidArgument, "volatility must be positive");
  if (input.delivery_time < input.input_time)
    fail(ErrorCode::InvariantViolation,
         "delivery date " + util::format_date(input.delivery_time) + " precedes input date " +
             util::format_date(input.input_time));
  // Delivery is immediate, so currency equals the age of the data.
  double currency = age_in_days(input.input_time, input.delivery_time, input.age_mode);
  return std::max(0.0, 1.0 - currency / input.volatility);
}

double scaled_aggregate(std::span<const double> scores, std::size_t total_attributes) {
  if (total_attributes == 0) fail(ErrorCode::EmptyProjection, "no queried attributes");
  if (scores.size() > total_attributes)
    fail(ErrorCode::InvalidArgument, "more scores than queried attributes");
  return std::accumulate(scores.begin(), scores.end(), 0.0) /
         static_cast<double>(total_attributes);
}

double max_aggregate(std::span<const double> scores) {
  if (scores.empty()) fail(ErrorCode::EmptyInput, "maximum of an empty list");
  return *std::max_element(scores.begin(), scores.end());
}

ColumnScores assess_column(std::span<const Row> rows, std::size_t column, const KeyLink& link,
                           const ReferenceRelation& reference, std::size_t reference_column,
                           const DomainRule& rule) {
  std::size_t card = reference.cardinality();
  require_reference(card);
  std::vector<Cell> values, ref_values;
  for (std::size_t i = 0; i < link.source_row.size(); ++i) {
    if (!link.source_row[i]) continue;
    values.push_back(rows[*link.source_row[i]][column]);
    ref_values.push_back(reference.rows[i][reference_column]);
  }
  ColumnScores s;
  s.population_completeness = population_completeness(link, card);
  s.incompleteness = incompleteness(values, card);
  s.fact_completeness = fact_completeness(s.population_completeness, s.incompleteness);
  s.validity = validity(values, rule, card);
  s.accuracy = accuracy(values, ref_values, rule, card);
  return s;
}

std::vector<ColumnProfile> assess_mapping_table(const Catalog& catalog,
                                                const util::Date& delivery_date,
                                                const AssessOptions& options,
                                                std::vector<TableDiagnostics>* diagnostics) {
  // (table, global table) -> mappings
  std::map<std::pair<Id, Id>, std::vector<const Mapping*>> groups;
  for (const auto& [id, m] : catalog.mappings()) {
    Id table = catalog.column(m.column_id).table_id;
    Id gs_table = catalog.global_column(m.gs_column_id).gs_table_id;
    groups[{table, gs_table}].push_back(&m);
  }

  std::vector<ColumnProfile> profiles;
  for (const auto& [group, mappings] : groups) {
    const auto [table_id, gs_table_id] = group;
    const auto& descriptor = catalog.table(table_id);
    const auto& relation = catalog.relation(table_id);
    const auto* reference = catalog.reference(gs_table_id);
    const auto& gs_name = catalog.global_table(gs_table_id).name;
    if (!reference || reference->cardinality() == 0)
      fail(ErrorCode::EmptyReference, "no reference rows for global table '" + gs_name + "'");

    auto column_index = [&](Id column_id) {
      const auto& name = catalog.column(column_id).name;
      auto it = std::find(relation.columns.begin(), relation.columns.end(), name);
      return static_cast<std::size_t>(it - relation.columns.begin());
    };
    auto reference_index = [&](Id gs_column_id) {
      const auto& name = catalog.global_column(gs_column_id).name;
      auto it = std::find(reference->columns.begin(), reference->columns.end(), name);
      return static_cast<std::size_t>(it - reference->columns.begin());
    };

    KeySpec keys;
    for (Id key : catalog.global_columns_of(gs_table_id, true)) {
      auto m = std::find_if(mappings.begin(), mappings.end(),
                            [&](const Mapping* m) { return m->gs_column_id == key; });
      if (m == mappings.end())
        fail(ErrorCode::MissingKeyMapping,
             "table '" + descriptor.name + "' of source '" +
                 catalog.source(descriptor.source_id).name + "' maps into '" + gs_name +
                 "' without its key column '" + catalog.global_column(key).name + "'");
      keys.source_columns.push_back(column_index((*m)->column_id));
      keys.reference_columns.push_back(reference_index(key));
      keys.types.push_back(catalog.global_column(key).domain_rule.value_type());
    }
    auto link = link_by_key(relation.rows, *reference, keys);
    if (diagnostics) {
      diagnostics->push_back({table_id, gs_table_id, relation.rows.size(), link.matched,
                              link.unmatched_rows, link.duplicate_rows});
    }

    double timely = timeliness({descriptor.insertion_date, delivery_date,
                                descriptor.volatility, options.age_mode});
    for (const Mapping* m : mappings) {
      const auto& gs = catalog.global_column(m->gs_column_id);
      auto s = assess_column(relation.rows, column_index(m->column_id), link, *reference,
                             reference_index(m->gs_column_id), gs.domain_rule);
      profiles.push_back(ColumnProfile{m->mapping_id, m->column_id, m->gs_column_id,
                                       s.population_completeness, s.incompleteness,
                                       s.fact_completeness, s.validity, s.accuracy, timely});
    }
  }
  std::sort(profiles.begin(), profiles.end(), [](const ColumnProfile& a, const ColumnProfile& b) {
    return std::tie(a.gs_column_id, a.column_id) < std::tie(b.gs_column_id, b.column_id);
  });
  return profiles;
}

}  // namespace qualint::assess
