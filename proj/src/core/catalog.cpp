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

#include "qualint/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qualint/error.hpp"

namespace qualint {

namespace {

template <typename Map>
Id next_id(const Map& map) {
  return map.empty() ? 1 : map.rbegin()->first + 1;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, Id id, std::string_view what) {
  auto it = map.find(id);
  if (it == map.end())
    fail(ErrorCode::UnknownEntity, std::string(what) + " " + std::to_string(id) + " not found");
  return it->second;
}

bool is_null_token(const std::string& cell, const IngestOptions& options) {
  if (cell.empty()) return true;
  return std::find(options.extra_null_tokens.begin(), options.extra_null_tokens.end(),
                   cell) != options.extra_null_tokens.end();
}

struct Table {
  std::vector<std::string> header;
  std::vector<util::CsvRecord> rows;
};

Table read_table(std::string_view text) {
  auto records = util::parse_csv(text);
  if (records.empty()) fail(ErrorCode::SchemaMismatch, "missing header row");
  Table t;
  for (auto& name : records.front().fields) t.header.emplace_back(util::trim(name));
  std::set<std::string> seen;
  for (const auto& name : t.header) {
    if (name.empty()) fail(ErrorCode::SchemaMismatch, "empty column name in header");
    if (!seen.insert(name).second)
      fail(ErrorCode::SchemaMismatch, "duplicate column '" + name + "' in header");
  }
  t.rows.assign(std::make_move_iterator(records.begin() + 1),
                std::make_move_iterator(records.end()));
  return t;
}

// Projects the rows of `t` onto `columns` (which must all be in the header),
// applying null tokens.
std::vector<Row> project_rows(const Table& t, const std::vector<std::string>& columns,
                              const IngestOptions& options) {
  std::vector<std::size_t> index;
  for (const auto& name : columns) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end())
      fail(ErrorCode::SchemaMismatch, "header is missing declared column '" + name + "'");
    index.push_back(static_cast<std::size_t>(it - t.header.begin()));
  }
  std::vector<Row> rows;
  rows.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& rec = t.rows[r];
    if (rec.fields.size() != t.header.size()) {
      fail(ErrorCode::RowFormatError,
           "row " + std::to_string(r + 1) + " (line " + std::to_string(rec.line) +
               "): expected " + std::to_string(t.header.size()) + " fields, got " +
               std::to_string(rec.fields.size()));
    }
    Row row;
    row.reserve(index.size());
    for (auto i : index) {
      const auto& cell = rec.fields[i];
      if (is_null_token(cell, options)) row.emplace_back(std::nullopt);
      else row.emplace_back(cell);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool parse_bool(std::string_view text) {
  auto v = util::to_lower(util::trim(text));
  if (v == "1" || v == "true" || v == "yes" || v == "key" || v == "y") return true;
  if (v.empty() || v == "0" || v == "false" || v == "no" || v == "n") return false;
  fail(ErrorCode::SchemaError, "not a boolean: '" + std::string(text) + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Registration

Id Catalog::register_domain(std::string_view name) {
  auto trimmed = std::string(util::trim(name));
  if (trimmed.empty()) fail(ErrorCode::InvalidArgument, "domain name must not be empty");
  if (auto id = find_domain(trimmed)) return *id;
  Id id = next_id(domains_);
  domains_[id] = Domain{id, trimmed};
  return id;
}

Id Catalog::register_source(const SourceDescriptor& descriptor) {
  if (util::trim(descriptor.name).empty())
    fail(ErrorCode::InvalidArgument, "source name must not be empty");
  if (!domains_.count(descriptor.domain_id))
    fail(ErrorCode::UnknownDomain,
         "domain " + std::to_string(descriptor.domain_id) + " is not registered");
  for (const auto& [id, existing] : sources_) {
    if (existing.name == descriptor.name && existing.domain_id == descriptor.domain_id) {
      if (descriptor.source_id != 0 && descriptor.source_id != id)
        fail(ErrorCode::DuplicateSource, "source '" + descriptor.name +
                                             "' already registered with id " +
                                             std::to_string(id));
      return id;
    }
  }
  Id id = descriptor.source_id != 0 ? descriptor.source_id : next_id(sources_);
  if (sources_.count(id))
    fail(ErrorCode::DuplicateSource, "source id " + std::to_string(id) + " already in use");
  sources_[id] = SourceDescriptor{id, descriptor.name, descriptor.domain_id};
  return id;
}

Id Catalog::add_global_table(std::string_view name) {
  auto trimmed = std::string(util::trim(name));
  if (trimmed.empty()) fail(ErrorCode::SchemaError, "global table name must not be empty");
  if (auto id = find_global_table(trimmed)) return *id;
  Id id = next_id(global_tables_);
  global_tables_[id] = GlobalTable{id, trimmed};
  return id;
}

Id Catalog::add_global_column(GlobalColumn column) {
  global_table(column.gs_table_id);
  if (column.name.empty()) fail(ErrorCode::SchemaError, "global column name must not be empty");
  if (column.domain_rule.clauses().empty())
    fail(ErrorCode::SchemaError, "global column '" + column.name + "' has no domain rule");
  for (const auto& [id, existing] : global_columns_) {
    if (existing.gs_table_id == column.gs_table_id && util::iequals(existing.name, column.name))
      fail(ErrorCode::SchemaError, "duplicate global column '" + column.name + "'");
  }
  if (column.gs_column_id == 0) column.gs_column_id = next_id(global_columns_);
  if (global_columns_.count(column.gs_column_id))
    fail(ErrorCode::SchemaError, "global column id " + std::to_string(column.gs_column_id) +
                                     " already in use");
  Id id = column.gs_column_id;
  global_columns_[id] = std::move(column);
  return id;
}

void Catalog::load_schema_text(std::string_view text) {
  Table t = read_table(text);
  auto col = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < t.header.size(); ++i)
      if (util::iequals(t.header[i], name)) return i;
    return std::nullopt;
  };
  auto table_i = col("table"), column_i = col("column"), key_i = col("key"),
       rule_i = col("rule");
  if (!table_i || !column_i || !key_i || !rule_i)
    fail(ErrorCode::SchemaError, "schema header needs table,column,key,rule");
  auto detector_i = col("detector"), correlated_i = col("correlated_with");

  std::set<Id> touched;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r].fields;
    if (f.size() != t.header.size())
      fail(ErrorCode::SchemaError, "schema row " + std::to_string(r + 1) + " has " +
                                       std::to_string(f.size()) + " fields");
    GlobalColumn column;
    column.gs_table_id = add_global_table(f[*table_i]);
    column.name = std::string(util::trim(f[*column_i]));
    column.is_key = parse_bool(f[*key_i]);
    column.domain_rule = DomainRule::parse(f[*rule_i]);
    if (detector_i && !util::trim(f[*detector_i]).empty()) {
      auto d = util::parse_int(f[*detector_i]);
      if (!d) fail(ErrorCode::SchemaError, "detector must be an integer");
      column.detector = *d;
    }
    if (correlated_i) {
      auto c = std::string(util::trim(f[*correlated_i]));
      if (!c.empty() && !util::iequals(c, "null")) column.correlated_with = c;
    }
    Id gs_table = column.gs_table_id;
    add_global_column(std::move(column));
    touched.insert(gs_table);
  }
  for (Id gs_table : touched) {
    if (global_columns_of(gs_table, true).empty())
      fail(ErrorCode::SchemaError,
           "global table '" + global_table(gs_table).name + "' has no key column");
  }
}

void Catalog::load_schema(const std::string& path) { load_schema_text(util::read_file(path)); }

Id Catalog::load_relation_text(std::string_view text, RelationDescriptor descriptor,
                               const std::vector<std::string>& declared_columns,
                               const IngestOptions& options) {
  source(descriptor.source_id);
  if (util::trim(descriptor.name).empty())
    fail(ErrorCode::InvalidArgument, "table name must not be empty");
  if (!(descriptor.volatility > 0))
    fail(ErrorCode::InvalidArgument, "volatility must be positive");
  if (!descriptor.insertion_date.ok())
    fail(ErrorCode::InvalidArgument, "invalid insertion date");

  Table t = read_table(text);
  std::vector<std::string> columns = declared_columns.empty() ? t.header : declared_columns;
  if (t.header.size() != columns.size()) {
    for (const auto& h : t.header)
      if (std::find(columns.begin(), columns.end(), h) == columns.end())
        fail(ErrorCode::SchemaMismatch, "header has undeclared column '" + h + "'");
  }
  auto rows = project_rows(t, columns, options);

  // Reloading a table of the same source replaces its rows.
  std::optional<Id> existing;
  for (const auto& [id, tab] : tables_)
    if (tab.source_id == descriptor.source_id && tab.name == descriptor.name) existing = id;

  Id table_id;
  if (existing) {
    table_id = *existing;
    std::vector<std::string> old_columns = relations_.at(table_id).columns;
    auto sorted_old = old_columns, sorted_new = columns;
    std::sort(sorted_old.begin(), sorted_old.end());
    std::sort(sorted_new.begin(), sorted_new.end());
    if (sorted_old != sorted_new)
      fail(ErrorCode::SchemaMismatch, "reloaded table '" + descriptor.name +
                                          "' must keep its columns");
    rows = project_rows(t, old_columns, options);
    columns = old_columns;
    descriptor.table_id = table_id;
    tables_[table_id] = descriptor;
    for (auto& [mid, m] : mappings_)
      if (columns_.at(m.column_id).table_id == table_id) m.profile.reset();
  } else {
    table_id = descriptor.table_id != 0 ? descriptor.table_id : next_id(tables_);
    if (tables_.count(table_id))
      fail(ErrorCode::InvalidArgument, "table id " + std::to_string(table_id) + " in use");
    descriptor.table_id = table_id;
    tables_[table_id] = descriptor;
    for (const auto& name : columns) {
      Id cid = next_id(columns_);
      columns_[cid] = ColumnDescriptor{cid, name, table_id};
    }
  }
  relations_[table_id] = Relation{table_id, columns, std::move(rows)};
  return table_id;
}

Id Catalog::load_relation(const std::string& path, RelationDescriptor descriptor,
                          const std::vector<std::string>& declared_columns,
                          const IngestOptions& options) {
  return load_relation_text(util::read_file(path), std::move(descriptor), declared_columns,
                            options);
}

const ReferenceRelation& Catalog::load_reference_text(std::string_view text, Id gs_table_id,
                                                      const IngestOptions& options) {
  global_table(gs_table_id);
  std::vector<std::string> columns;
  std::vector<std::size_t> key_index;
  std::vector<ValueType> key_type;
  for (Id gc : global_columns_of(gs_table_id)) {
    const auto& column = global_columns_.at(gc);
    if (column.is_key) {
      key_index.push_back(columns.size());
      key_type.push_back(column.domain_rule.value_type());
    }
    columns.push_back(column.name);
  }
  if (key_index.empty())
    fail(ErrorCode::SchemaError, "global table has no key column");

  Table t = read_table(text);
  // Header names match global columns case-insensitively.
  for (auto& h : t.header)
    for (const auto& c : columns)
      if (util::iequals(h, c)) h = c;
  auto rows = project_rows(t, columns, options);

  std::set<std::vector<std::string>> keys;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> key;
    for (std::size_t k = 0; k < key_index.size(); ++k) {
      const auto& cell = rows[r][key_index[k]];
      if (!cell)
        fail(ErrorCode::NullReferenceKey,
             "reference row " + std::to_string(r + 1) + " has a null key");
      key.push_back(canonical_value(*cell, key_type[k]));
    }
    if (!keys.insert(key).second)
      fail(ErrorCode::DuplicateReferenceKey,
           "reference row " + std::to_string(r + 1) + " repeats a key");
  }
  references_[gs_table_id] = ReferenceRelation{gs_table_id, columns, std::move(rows)};
  // Assessment depends on the reference.
  for (auto& [mid, m] : mappings_)
    if (global_columns_.at(m.gs_column_id).gs_table_id == gs_table_id) m.profile.reset();
  return references_.at(gs_table_id);
}

const ReferenceRelation& Catalog::load_reference_relation(const std::string& path,
                                                          Id gs_table_id,
                                                          const IngestOptions& options) {
  return load_reference_text(util::read_file(path), gs_table_id, options);
}

Id Catalog::upsert_mapping(Id column_id, Id gs_column_id, bool replace) {
  const auto& col = column(column_id);
  global_column(gs_column_id);
  for (const auto& [mid, m] : mappings_) {
    if (m.column_id == column_id) {
      if (m.gs_column_id == gs_column_id) return mid;
      if (!replace)
        fail(ErrorCode::MappingConflict,
             "column " + std::to_string(column_id) + " already maps to global column " +
                 std::to_string(m.gs_column_id));
    } else if (m.gs_column_id == gs_column_id &&
               columns_.at(m.column_id).table_id == col.table_id) {
      fail(ErrorCode::MappingConflict,
           "another column of table " + std::to_string(col.table_id) +
               " already maps to global column " + std::to_string(gs_column_id));
    }
  }
  if (auto existing = mapping_for_column(column_id)) {
    auto& m = mappings_.at(*existing);
    m.gs_column_id = gs_column_id;
    m.profile.reset();
    return *existing;
  }
  Id id = next_id(mappings_);
  mappings_[id] = Mapping{id, column_id, gs_column_id, std::nullopt};
  return id;
}

void Catalog::store_profiles(const std::vector<ColumnProfile>& profiles) {
  for (const auto& p : profiles) {
    auto it = mappings_.find(p.mapping_id);
    if (it == mappings_.end() || it->second.column_id != p.column_id ||
        it->second.gs_column_id != p.gs_column_id)
      fail(ErrorCode::InvariantViolation,
           "profile does not match mapping " + std::to_string(p.mapping_id));
  }
  for (const auto& p : profiles) mappings_.at(p.mapping_id).profile = p;
}

Id Catalog::record_query(QueryRecord record) {
  record.query_id = query_log_.empty() ? 1 : query_log_.back().query_id + 1;
  query_log_.push_back(std::move(record));
  return query_log_.back().query_id;
}

// ---------------------------------------------------------------------------
// Lookups

const Domain& Catalog::domain(Id id) const { return lookup(domains_, id, "domain"); }
const SourceDescriptor& Catalog::source(Id id) const { return lookup(sources_, id, "source"); }
const RelationDescriptor& Catalog::table(Id id) const { return lookup(tables_, id, "table"); }
const ColumnDescriptor& Catalog::column(Id id) const { return lookup(columns_, id, "column"); }
const GlobalTable& Catalog::global_table(Id id) const {
  return lookup(global_tables_, id, "global table");
}
const GlobalColumn& Catalog::global_column(Id id) const {
  return lookup(global_columns_, id, "global column");
}
const Relation& Catalog::relation(Id table_id) const {
  return lookup(relations_, table_id, "relation for table");
}
const ReferenceRelation* Catalog::reference(Id gs_table_id) const {
  auto it = references_.find(gs_table_id);
  return it == references_.end() ? nullptr : &it->second;
}

std::optional<Id> Catalog::find_domain(std::string_view name) const {
  for (const auto& [id, d] : domains_)
    if (d.name == util::trim(name)) return id;
  return std::nullopt;
}

std::optional<Id> Catalog::find_source(std::string_view name) const {
  for (const auto& [id, s] : sources_)
    if (s.name == name) return id;
  return std::nullopt;
}

std::optional<Id> Catalog::find_global_table(std::string_view name) const {
  for (const auto& [id, t] : global_tables_)
    if (util::iequals(t.name, util::trim(name))) return id;
  return std::nullopt;
}

std::optional<Id> Catalog::find_global_column(std::string_view name) const {
  name = util::trim(name);
  std::optional<Id> table;
  if (auto dot = name.find('.'); dot != std::string_view::npos) {
    table = find_global_table(name.substr(0, dot));
    if (!table) return std::nullopt;
    name = name.substr(dot + 1);
  }
  std::optional<Id> found;
  for (const auto& [id, c] : global_columns_) {
    if (table && c.gs_table_id != *table) continue;
    if (util::iequals(c.name, name)) {
      if (found) return std::nullopt;  // ambiguous
      found = id;
    }
  }
  return found;
}

std::optional<Id> Catalog::find_column(Id table_id, std::string_view name) const {
  for (const auto& [id, c] : columns_)
    if (c.table_id == table_id && c.name == name) return id;
  return std::nullopt;
}

std::optional<Id> Catalog::mapping_for_column(Id column_id) const {
  for (const auto& [id, m] : mappings_)
    if (m.column_id == column_id) return id;
  return std::nullopt;
}

std::vector<Id> Catalog::global_columns_of(Id gs_table_id, bool keys_only) const {
  std::vector<Id> out;
  for (const auto& [id, c] : global_columns_)
    if (c.gs_table_id == gs_table_id && (!keys_only || c.is_key)) out.push_back(id);
  return out;
}

void Catalog::validate() const {
  auto dangling = [](const std::string& what) {
    fail(ErrorCode::InvariantViolation, "dangling reference: " + what);
  };
  for (const auto& [id, s] : sources_)
    if (!domains_.count(s.domain_id)) dangling("source " + std::to_string(id) + " domain");
  for (const auto& [id, t] : tables_) {
    if (!sources_.count(t.source_id)) dangling("table " + std::to_string(id) + " source");
    if (!relations_.count(id)) dangling("table " + std::to_string(id) + " has no rows");
  }
  for (const auto& [id, c] : columns_)
    if (!tables_.count(c.table_id)) dangling("column " + std::to_string(id) + " table");
  for (const auto& [id, c] : global_columns_)
    if (!global_tables_.count(c.gs_table_id))
      dangling("global column " + std::to_string(id) + " table");
  for (const auto& [id, m] : mappings_) {
    if (!columns_.count(m.column_id)) dangling("mapping " + std::to_string(id) + " column");
    if (!global_columns_.count(m.gs_column_id))
      dangling("mapping " + std::to_string(id) + " global column");
  }
  for (const auto& [id, r] : references_)
    if (!global_tables_.count(id)) dangling("reference " + std::to_string(id));
}

// ---------------------------------------------------------------------------
// Persistence
//
//   qualint-catalog <version>
//   schema,<name>
//   [<Section>] <row count>
//   <header row>
//   <rows...>
//   ...
//   end
//
// Rows are CSV. A null cell is an empty field; ingest never produces an empty
// non-null value, so the encoding is unambiguous.

namespace {

const char* const kMagic = "qualint-catalog";

std::string score(double v) { return util::format_exact(v); }

class SectionWriter {
 public:
  explicit SectionWriter(std::ostringstream& out) : out_(out) {}
  void begin(std::string_view name, std::size_t rows, std::vector<std::string> header) {
    out_ << '[' << name << "] " << rows << '\n';
    util::write_csv_row(out_, header);
  }
  void row(const std::vector<std::string>& fields) { util::write_csv_row(out_, fields); }

 private:
  std::ostringstream& out_;
};

std::vector<std::string> cells_row(Id id, const Row& row) {
  std::vector<std::string> out{std::to_string(id)};
  for (const auto& c : row) out.push_back(c.value_or(""));
  return out;
}

}  // namespace

std::string Catalog::serialize() const {
  std::ostringstream out;
  out << kMagic << ' ' << kCatalogFormatVersion << '\n';
  std::vector<std::string> schema_row{"schema", schema_name_};
  util::write_csv_row(out, schema_row);
  SectionWriter w(out);

  w.begin("Domain", domains_.size(), {"domain_id", "name"});
  for (const auto& [id, d] : domains_) w.row({std::to_string(id), d.name});

  w.begin("DataSource", sources_.size(), {"source_id", "name", "domain_id"});
  for (const auto& [id, s] : sources_)
    w.row({std::to_string(id), s.name, std::to_string(s.domain_id)});

  w.begin("Table", tables_.size(),
          {"table_id", "name", "insertion_date", "volatility", "source_id"});
  for (const auto& [id, t] : tables_)
    w.row({std::to_string(id), t.name, util::format_date(t.insertion_date),
           score(t.volatility), std::to_string(t.source_id)});

  w.begin("Column", columns_.size(), {"column_id", "name", "table_id"});
  for (const auto& [id, c] : columns_)
    w.row({std::to_string(id), c.name, std::to_string(c.table_id)});

  w.begin("GlobalSchemaTable", global_tables_.size(), {"gs_table_id", "name"});
  for (const auto& [id, t] : global_tables_) w.row({std::to_string(id), t.name});

  w.begin("GlobalSchemaColumn", global_columns_.size(),
          {"gs_column_id", "name", "gs_table_id", "is_key", "domain_rule", "detector",
           "correlated_with"});
  for (const auto& [id, c] : global_columns_)
    w.row({std::to_string(id), c.name, std::to_string(c.gs_table_id), c.is_key ? "1" : "0",
           c.domain_rule.text(), std::to_string(c.detector), c.correlated_with.value_or("")});

  w.begin("GlobalSchemaMapping", mappings_.size(),
          {"mapping_id", "column_id", "gs_column_id", "assessed", "population_completeness",
           "incompleteness", "fact_completeness", "validity", "accuracy", "timeliness"});
  for (const auto& [id, m] : mappings_) {
    std::vector<std::string> r{std::to_string(id), std::to_string(m.column_id),
                               std::to_string(m.gs_column_id), m.profile ? "1" : "0"};
    if (m.profile) {
      const auto& p = *m.profile;
      for (double v : {p.population_completeness, p.incompleteness, p.fact_completeness,
                       p.validity, p.accuracy, p.timeliness})
        r.push_back(score(v));
    } else {
      r.resize(10);
    }
    w.row(r);
  }

  std::size_t n_queried = 0, n_metrics = 0, n_alts = 0, n_members = 0;
  for (const auto& q : query_log_) {
    n_queried += q.queried_sources.size();
    n_metrics += q.source_metrics.size();
    n_alts += q.alternatives.size();
    n_members += q.members.size();
  }
  w.begin("Query", query_log_.size(), {"query_id", "text"});
  for (const auto& q : query_log_) w.row({std::to_string(q.query_id), q.text});

  w.begin("QueriedDataSource", n_queried,
          {"query_id", "queried_source_id", "source_id", "column_id", "gs_column_id"});
  for (const auto& q : query_log_)
    for (const auto& r : q.queried_sources)
      w.row({std::to_string(q.query_id), std::to_string(r.queried_source_id),
             std::to_string(r.source_id), std::to_string(r.column_id),
             std::to_string(r.gs_column_id)});

  w.begin("QueriedDataSourceAssessmentMetric", n_metrics,
          {"query_id", "metric_id", "source_id", "fact_completeness", "validity", "accuracy",
           "timeliness"});
  for (const auto& q : query_log_)
    for (const auto& r : q.source_metrics)
      w.row({std::to_string(q.query_id), std::to_string(r.metric_id),
             std::to_string(r.source_id), score(r.vector.fact_completeness),
             score(r.vector.validity), score(r.vector.accuracy), score(r.vector.timeliness)});

  w.begin("AlternativeAggregatedMetric", n_alts,
          {"query_id", "alternative_id", "label", "qualified", "fact_completeness", "validity",
           "accuracy", "timeliness"});
  for (const auto& q : query_log_)
    for (const auto& r : q.alternatives)
      w.row({std::to_string(q.query_id), std::to_string(r.alternative_id), r.label,
             r.qualified ? "1" : "0", score(r.vector.fact_completeness),
             score(r.vector.validity), score(r.vector.accuracy), score(r.vector.timeliness)});

  w.begin("QueriedDataSourceAssessmentMetric_AlternativeAggregatedMetric", n_members,
          {"query_id", "metric_id", "alternative_id"});
  for (const auto& q : query_log_)
    for (const auto& r : q.members)
      w.row({std::to_string(q.query_id), std::to_string(r.metric_id),
             std::to_string(r.alternative_id)});

  std::size_t n_rows = 0;
  for (const auto& [id, r] : relations_) n_rows += r.rows.size();
  w.begin("RelationData", n_rows, {"table_id", "cells"});
  for (const auto& [id, r] : relations_)
    for (const auto& row : r.rows) w.row(cells_row(id, row));

  w.begin("Reference", references_.size(), {"gs_table_id"});
  for (const auto& [id, r] : references_) w.row({std::to_string(id)});

  n_rows = 0;
  for (const auto& [id, r] : references_) n_rows += r.rows.size();
  w.begin("ReferenceData", n_rows, {"gs_table_id", "cells"});
  for (const auto& [id, r] : references_)
    for (const auto& row : r.rows) w.row(cells_row(id, row));

  out << "end\n";
  return out.str();
}

namespace {

class SectionReader {
 public:
  explicit SectionReader(std::vector<util::CsvRecord> records)
      : records_(std::move(records)) {}

  const util::CsvRecord& next(std::string_view what) {
    if (pos_ >= records_.size()) bad("truncated before " + std::string(what));
    return records_[pos_++];
  }

  // Returns the data rows of section `name`, each checked to `width` fields
  // (0 = at least one field).
  std::vector<std::vector<std::string>> section(std::string_view name, std::size_t width) {
    const auto& marker = next(name);
    std::string expect = "[" + std::string(name) + "] ";
    if (marker.fields.size() != 1 || !marker.fields[0].starts_with(expect))
      bad("expected section [" + std::string(name) + "]");
    auto count = util::parse_int(std::string_view(marker.fields[0]).substr(expect.size()));
    if (!count || *count < 0) bad("bad row count for [" + std::string(name) + "]");
    next(name);  // header
    std::vector<std::vector<std::string>> rows;
    for (long long i = 0; i < *count; ++i) {
      const auto& rec = next(name);
      if ((width && rec.fields.size() != width) || rec.fields.empty())
        bad("malformed row in [" + std::string(name) + "] at line " + std::to_string(rec.line));
      rows.push_back(rec.fields);
    }
    return rows;
  }

  void finish() {
    const auto& rec = next("end");
    if (rec.fields.size() != 1 || rec.fields[0] != "end") bad("missing end marker");
    if (pos_ != records_.size()) bad("trailing content after end marker");
  }

  [[noreturn]] static void bad(const std::string& why) {
    fail(ErrorCode::CatalogParseError, "catalog: " + why);
  }

 private:
  std::vector<util::CsvRecord> records_;
  std::size_t pos_ = 0;
};

Id to_id(const std::string& s) {
  auto v = util::parse_int(s);
  if (!v) SectionReader::bad("not an id: '" + s + "'");
  return *v;
}

double to_double(const std::string& s) {
  auto v = util::parse_double(s);
  if (!v) SectionReader::bad("not a number: '" + s + "'");
  return *v;
}

QualityVector to_vector(const std::vector<std::string>& f, std::size_t at) {
  return {to_double(f[at]), to_double(f[at + 1]), to_double(f[at + 2]), to_double(f[at + 3])};
}

Row to_cells(const std::vector<std::string>& f) {
  Row row;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i].empty()) row.emplace_back(std::nullopt);
    else row.emplace_back(f[i]);
  }
  return row;
}

}  // namespace

Catalog Catalog::deserialize(std::string_view text) {
  // Version check before anything else so future formats are reported as
  // such rather than as parse errors.
  auto first_line = text.substr(0, text.find('\n'));
  std::string magic = std::string(kMagic) + " ";
  if (!first_line.starts_with(magic)) SectionReader::bad("not a catalog file");
  auto version = util::parse_int(util::trim(first_line.substr(magic.size())));
  if (!version) SectionReader::bad("bad version line");
  if (*version > kCatalogFormatVersion || *version < 1)
    fail(ErrorCode::UnsupportedCatalogVersion,
         "catalog format version " + std::to_string(*version) + " is not supported (max " +
             std::to_string(kCatalogFormatVersion) + ")");

  std::vector<util::CsvRecord> records;
  try {
    records = util::parse_csv(text);
  } catch (const Error& e) {
    SectionReader::bad(e.what());
  }
  SectionReader in(std::move(records));
  in.next("version");

  Catalog c;
  const auto& schema = in.next("schema");
  if (schema.fields.size() != 2 || schema.fields[0] != "schema") SectionReader::bad("bad schema line");
  c.schema_name_ = schema.fields[1];

  for (auto& f : in.section("Domain", 2)) c.domains_[to_id(f[0])] = Domain{to_id(f[0]), f[1]};
  for (auto& f : in.section("DataSource", 3))
    c.sources_[to_id(f[0])] = SourceDescriptor{to_id(f[0]), f[1], to_id(f[2])};
  for (auto& f : in.section("Table", 5)) {
    auto date = util::parse_date(f[2]);
    if (!date) SectionReader::bad("bad insertion date '" + f[2] + "'");
    c.tables_[to_id(f[0])] =
        RelationDescriptor{to_id(f[0]), f[1], *date, to_double(f[3]), to_id(f[4])};
  }
  for (auto& f : in.section("Column", 3))
    c.columns_[to_id(f[0])] = ColumnDescriptor{to_id(f[0]), f[1], to_id(f[2])};
  for (auto& f : in.section("GlobalSchemaTable", 2))
    c.global_tables_[to_id(f[0])] = GlobalTable{to_id(f[0]), f[1]};
  for (auto& f : in.section("GlobalSchemaColumn", 7)) {
    GlobalColumn col;
    col.gs_column_id = to_id(f[0]);
    col.name = f[1];
    col.gs_table_id = to_id(f[2]);
    col.is_key = f[3] == "1";
    try {
      col.domain_rule = DomainRule::parse(f[4]);
    } catch (const Error& e) {
      SectionReader::bad(e.what());
    }
    col.detector = to_id(f[5]);
    if (!f[6].empty()) col.correlated_with = f[6];
    c.global_columns_[col.gs_column_id] = std::move(col);
  }
  for (auto& f : in.section("GlobalSchemaMapping", 10)) {
    Mapping m{to_id(f[0]), to_id(f[1]), to_id(f[2]), std::nullopt};
    if (f[3] == "1") {
      m.profile = ColumnProfile{m.mapping_id,     m.column_id,      m.gs_column_id,
                                to_double(f[4]),  to_double(f[5]),  to_double(f[6]),
                                to_double(f[7]),  to_double(f[8]),  to_double(f[9])};
    }
    c.mappings_[m.mapping_id] = std::move(m);
  }

  std::map<Id, QueryRecord> queries;
  auto query = [&](const std::string& id) -> QueryRecord& {
    auto it = queries.find(to_id(id));
    if (it == queries.end()) SectionReader::bad("unknown query id " + id);
    return it->second;
  };
  for (auto& f : in.section("Query", 2)) {
    QueryRecord r;
    r.query_id = to_id(f[0]);
    r.text = f[1];
    queries[r.query_id] = std::move(r);
  }
  for (auto& f : in.section("QueriedDataSource", 5))
    query(f[0]).queried_sources.push_back(
        {to_id(f[1]), to_id(f[2]), to_id(f[3]), to_id(f[4])});
  for (auto& f : in.section("QueriedDataSourceAssessmentMetric", 7))
    query(f[0]).source_metrics.push_back({to_id(f[1]), to_id(f[2]), to_vector(f, 3)});
  for (auto& f : in.section("AlternativeAggregatedMetric", 8))
    query(f[0]).alternatives.push_back({to_id(f[1]), f[2], f[3] == "1", to_vector(f, 4)});
  for (auto& f : in.section("QueriedDataSourceAssessmentMetric_AlternativeAggregatedMetric", 3))
    query(f[0]).members.push_back({to_id(f[1]), to_id(f[2])});
  for (auto& [id, q] : queries) c.query_log_.push_back(std::move(q));

  for (const auto& [id, t] : c.tables_) {
    Relation r{id, {}, {}};
    for (const auto& [cid, col] : c.columns_)
      if (col.table_id == id) r.columns.push_back(col.name);
    c.relations_[id] = std::move(r);
  }
  for (auto& f : in.section("RelationData", 0)) {
    auto it = c.relations_.find(to_id(f[0]));
    if (it == c.relations_.end()) SectionReader::bad("rows for unknown table " + f[0]);
    if (f.size() != it->second.columns.size() + 1) SectionReader::bad("bad relation row width");
    it->second.rows.push_back(to_cells(f));
  }
  for (auto& f : in.section("Reference", 1)) {
    Id gs = to_id(f[0]);
    ReferenceRelation r{gs, {}, {}};
    for (const auto& [gid, col] : c.global_columns_)
      if (col.gs_table_id == gs) r.columns.push_back(col.name);
    c.references_[gs] = std::move(r);
  }
  for (auto& f : in.section("ReferenceData", 0)) {
    auto it = c.references_.find(to_id(f[0]));
    if (it == c.references_.end()) SectionReader::bad("rows for unknown reference " + f[0]);
    if (f.size() != it->second.columns.size() + 1) SectionReader::bad("bad reference row width");
    it->second.rows.push_back(to_cells(f));
  }
  in.finish();

  try {
    c.validate();
  } catch (const Error& e) {
    SectionReader::bad(e.what());
  }
  return c;
}

void Catalog::save(const std::string& path) const {
  std::string text = serialize();
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorCode::IoError, "cannot replace '" + path + "'");
}

Catalog Catalog::load(const std::string& path) { return deserialize(util::read_file(path)); }

}  // namespace qualint
