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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qualint/domain_rule.hpp"
#include "qualint/quality.hpp"
#include "qualint/util.hpp"

namespace qualint {

struct Domain {
  Id domain_id = 0;
  std::string name;
  bool operator==(const Domain&) const = default;
};

struct SourceDescriptor {
  Id source_id = 0;  // 0 = assign
  std::string name;
  Id domain_id = 0;
  bool operator==(const SourceDescriptor&) const = default;
};

struct RelationDescriptor {
  Id table_id = 0;  // 0 = assign
  std::string name;
  util::Date insertion_date{};
  double volatility = 0;  // days
  Id source_id = 0;
  bool operator==(const RelationDescriptor&) const = default;
};

struct ColumnDescriptor {
  Id column_id = 0;
  std::string name;
  Id table_id = 0;
  bool operator==(const ColumnDescriptor&) const = default;
};

struct GlobalTable {
  Id gs_table_id = 0;
  std::string name;
  bool operator==(const GlobalTable&) const = default;
};

struct GlobalColumn {
  Id gs_column_id = 0;
  std::string name;
  Id gs_table_id = 0;
  bool is_key = false;
  DomainRule domain_rule;
  // Stored verbatim, never interpreted.
  long long detector = 0;
  std::optional<std::string> correlated_with;
  bool operator==(const GlobalColumn&) const = default;
};

// Materialized rows of a source table, cells in column-id order.
struct Relation {
  Id table_id = 0;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::size_t cardinality() const { return rows.size(); }
  bool operator==(const Relation&) const = default;
};

// ref(r): every true tuple of a global table, cells in gs-column-id order.
struct ReferenceRelation {
  Id gs_table_id = 0;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::size_t cardinality() const { return rows.size(); }
  bool operator==(const ReferenceRelation&) const = default;
};

struct Mapping {
  Id mapping_id = 0;
  Id column_id = 0;
  Id gs_column_id = 0;
  std::optional<ColumnProfile> profile;  // empty = stale
  bool stale() const { return !profile.has_value(); }
  bool operator==(const Mapping&) const = default;
};

// Query-scoped entities recorded by `query --record`.
struct QueriedSourceRow {
  Id queried_source_id = 0;
  Id source_id = 0;
  Id column_id = 0;
  Id gs_column_id = 0;
  bool operator==(const QueriedSourceRow&) const = default;
};

struct SourceMetricRow {
  Id metric_id = 0;
  Id source_id = 0;
  QualityVector vector;
  bool operator==(const SourceMetricRow&) const = default;
};

struct AlternativeMetricRow {
  Id alternative_id = 0;
  std::string label;
  bool qualified = false;
  QualityVector vector;
  bool operator==(const AlternativeMetricRow&) const = default;
};

struct AlternativeMemberRow {
  Id metric_id = 0;
  Id alternative_id = 0;
  bool operator==(const AlternativeMemberRow&) const = default;
};

struct QueryRecord {
  Id query_id = 0;
  std::string text;
  std::vector<QueriedSourceRow> queried_sources;
  std::vector<SourceMetricRow> source_metrics;
  std::vector<AlternativeMetricRow> alternatives;
  std::vector<AlternativeMemberRow> members;
  bool operator==(const QueryRecord&) const = default;
};

struct IngestOptions {
  // Cells equal to one of these (besides the empty cell) ingest as null.
  std::vector<std::string> extra_null_tokens;
};

inline constexpr int kCatalogFormatVersion = 1;

// Metadata store: domains, sources, tables, columns, the global schema, the
// GlobalSchemaMapping table with assessed scores, recorded query entities,
// plus materialized source and reference rows.
//
// A Catalog is a plain value. Mutation is single-writer; a const Catalog can
// be shared by any number of concurrent readers.
class Catalog {
 public:
  Catalog() = default;

  const std::string& schema_name() const { return schema_name_; }
  void set_schema_name(std::string name) { schema_name_ = std::move(name); }

  // --- registration -------------------------------------------------------

  Id register_domain(std::string_view name);

  // Idempotent for an identical (name, domain) pair. A descriptor carrying an
  // explicit id that disagrees with the existing registration, or an id
  // already used by another source, is a DuplicateSource.
  Id register_source(const SourceDescriptor& descriptor);

  // Global schema declaration, CSV with header
  //   table,column,key,rule[,detector][,correlated_with]
  // Tables and columns receive ids in order of first appearance.
  void load_schema_text(std::string_view text);
  void load_schema(const std::string& path);

  Id add_global_table(std::string_view name);
  Id add_global_column(GlobalColumn column);

  // Ingests a source relation. `declared_columns` empty means "take the
  // header"; otherwise the header must hold exactly those names (any order).
  // Registers the Table and its Columns and returns the table id.
  Id load_relation_text(std::string_view text, RelationDescriptor descriptor,
                        const std::vector<std::string>& declared_columns,
                        const IngestOptions& options = {});
  Id load_relation(const std::string& path, RelationDescriptor descriptor,
                   const std::vector<std::string>& declared_columns,
                   const IngestOptions& options = {});

  // The header must contain every global column of the table; extra columns
  // are dropped.
  const ReferenceRelation& load_reference_text(std::string_view text, Id gs_table_id,
                                               const IngestOptions& options = {});
  const ReferenceRelation& load_reference_relation(const std::string& path, Id gs_table_id,
                                                   const IngestOptions& options = {});

  // Records column -> global column. Re-mapping a column elsewhere needs
  // `replace`. Any change marks the mapping stale.
  Id upsert_mapping(Id column_id, Id gs_column_id, bool replace = false);

  // Persists assessed profiles into their mappings (clearing staleness).
  void store_profiles(const std::vector<ColumnProfile>& profiles);

  Id record_query(QueryRecord record);

  // --- lookups ------------------------------------------------------------

  const std::map<Id, Domain>& domains() const { return domains_; }
  const std::map<Id, SourceDescriptor>& sources() const { return sources_; }
  const std::map<Id, RelationDescriptor>& tables() const { return tables_; }
  const std::map<Id, ColumnDescriptor>& columns() const { return columns_; }
  const std::map<Id, GlobalTable>& global_tables() const { return global_tables_; }
  const std::map<Id, GlobalColumn>& global_columns() const { return global_columns_; }
  const std::map<Id, Mapping>& mappings() const { return mappings_; }
  const std::map<Id, Relation>& relations() const { return relations_; }
  const std::map<Id, ReferenceRelation>& references() const { return references_; }
  const std::vector<QueryRecord>& query_log() const { return query_log_; }

  const Domain& domain(Id id) const;
  const SourceDescriptor& source(Id id) const;
  const RelationDescriptor& table(Id id) const;
  const ColumnDescriptor& column(Id id) const;
  const GlobalTable& global_table(Id id) const;
  const GlobalColumn& global_column(Id id) const;
  const Relation& relation(Id table_id) const;
  const ReferenceRelation* reference(Id gs_table_id) const;

  std::optional<Id> find_domain(std::string_view name) const;
  std::optional<Id> find_source(std::string_view name) const;
  std::optional<Id> find_global_table(std::string_view name) const;
  // Accepts "Column" (when unique) or "Table.Column", case-insensitively.
  std::optional<Id> find_global_column(std::string_view name) const;
  std::optional<Id> find_column(Id table_id, std::string_view name) const;
  std::optional<Id> mapping_for_column(Id column_id) const;

  // Global columns of a table in id order; key columns only when asked.
  std::vector<Id> global_columns_of(Id gs_table_id, bool keys_only = false) const;

  // Throws InvariantViolation naming the first dangling reference.
  void validate() const;

  // --- persistence --------------------------------------------------------

  std::string serialize() const;
  static Catalog deserialize(std::string_view text);
  void save(const std::string& path) const;
  static Catalog load(const std::string& path);

  bool operator==(const Catalog&) const = default;

 private:
  std::string schema_name_ = "G";
  std::map<Id, Domain> domains_;
  std::map<Id, SourceDescriptor> sources_;
  std::map<Id, RelationDescriptor> tables_;
  std::map<Id, ColumnDescriptor> columns_;
  std::map<Id, GlobalTable> global_tables_;
  std::map<Id, GlobalColumn> global_columns_;
  std::map<Id, Mapping> mappings_;
  std::map<Id, Relation> relations_;
  std::map<Id, ReferenceRelation> references_;
  std::vector<QueryRecord> query_log_;
};

// Registers one source from a manifest file:
//
//   source = DS2
//   domain = Cairo University
//   [table Student]
//   file = ds2_student.csv        (relative to the manifest)
//   inserted = 2/1/2016
//   volatility = 365
//   global = Student              (default table for map targets)
//   map StudentId = SId
//
// Returns the source id.
Id register_manifest(Catalog& catalog, const std::string& path,
                     const IngestOptions& options = {});

}  // namespace qualint
