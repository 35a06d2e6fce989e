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

#include "qualint/qualint.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <new>
#include <shared_mutex>
#include <string>

#include "qualint/engine.hpp"
#include "qualint/error.hpp"

using qualint::Catalog;
using qualint::Config;
using qualint::Error;
using qualint::ErrorCode;

struct qi_catalog {
  Catalog catalog;
  std::shared_mutex mutex;
};

struct qi_config {
  Config config;
};

static_assert(static_cast<int>(ErrorCode::InvalidArgument) == QI_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::UnsatisfiableGoal) == QI_UNSATISFIABLE_GOAL);
static_assert(static_cast<int>(ErrorCode::ConfigError) == QI_CONFIG_ERROR);

namespace {

thread_local std::string last_error;

int status(ErrorCode code, const std::string& message) {
  last_error = message;
  return static_cast<int>(code);
}

// Runs `fn`, translating exceptions into a status and the thread's message.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return QI_OK;
  } catch (const Error& e) {
    return status(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QI_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QI_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return QI_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) qualint::fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const Config& config_or_default(const qi_config* config) {
  static const Config defaults;
  return config ? config->config : defaults;
}

qualint::Id source_id(const Catalog& c, const char* name) {
  auto id = c.find_source(name);
  if (!id) qualint::fail(ErrorCode::UnknownEntity, std::string("unknown source '") + name + "'");
  return *id;
}

qualint::Id table_id(const Catalog& c, qualint::Id source, const char* name) {
  for (const auto& [id, t] : c.tables())
    if (t.source_id == source && t.name == name) return id;
  qualint::fail(ErrorCode::UnknownEntity, std::string("unknown table '") + name + "'");
}

}  // namespace

extern "C" {

const char* qi_status_name(int s) {
  if (s == QI_OK) return "Ok";
  if (s == QI_INTERNAL) return "Internal";
  if (s < QI_INVALID_ARGUMENT || s > QI_CONFIG_ERROR) return "Unknown";
  // error_code_name returns views into string literals.
  return qualint::error_code_name(static_cast<ErrorCode>(s)).data();
}

const char* qi_last_error(void) { return last_error.c_str(); }

void qi_string_free(char* s) { std::free(s); }

int qi_config_create(qi_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qi_config();
  });
}

void qi_config_destroy(qi_config* config) { delete config; }

int qi_config_set(qi_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
  });
}

int qi_config_load_file(qi_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->config.apply_file(path);
  });
}

int qi_catalog_create(qi_catalog** out) {
  return guarded([&] {
    require(out, "out");
    *out = new qi_catalog();
  });
}

int qi_catalog_load(const char* path, qi_catalog** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto c = std::make_unique<qi_catalog>();
    c->catalog = Catalog::load(path);
    *out = c.release();
  });
}

int qi_catalog_save(qi_catalog* catalog, const char* path) {
  return guarded([&] {
    require(catalog, "catalog");
    require(path, "path");
    std::shared_lock lock(catalog->mutex);
    catalog->catalog.save(path);
  });
}

void qi_catalog_destroy(qi_catalog* catalog) { delete catalog; }

int qi_register_domain(qi_catalog* catalog, const char* name, int64_t* id_out) {
  return guarded([&] {
    require(catalog, "catalog");
    require(name, "name");
    std::unique_lock lock(catalog->mutex);
    auto id = catalog->catalog.register_domain(name);
    if (id_out) *id_out = id;
  });
}

int qi_register_source(qi_catalog* catalog, const char* name, const char* domain,
                       int64_t* id_out) {
  return guarded([&] {
    require(catalog, "catalog");
    require(name, "name");
    require(domain, "domain");
    std::unique_lock lock(catalog->mutex);
    auto d = catalog->catalog.find_domain(domain);
    if (!d)
      qualint::fail(ErrorCode::UnknownDomain,
                    std::string("domain '") + domain + "' is not registered");
    auto id = catalog->catalog.register_source({0, name, *d});
    if (id_out) *id_out = id;
  });
}

int qi_load_schema(qi_catalog* catalog, const char* path) {
  return guarded([&] {
    require(catalog, "catalog");
    require(path, "path");
    std::unique_lock lock(catalog->mutex);
    catalog->catalog.load_schema(path);
  });
}

int qi_load_reference(qi_catalog* catalog, const char* global_table, const char* path,
                      const qi_config* config) {
  return guarded([&] {
    require(catalog, "catalog");
    require(global_table, "global_table");
    require(path, "path");
    std::unique_lock lock(catalog->mutex);
    auto t = catalog->catalog.find_global_table(global_table);
    if (!t)
      qualint::fail(ErrorCode::UnknownEntity,
                    std::string("unknown global table '") + global_table + "'");
    catalog->catalog.load_reference_relation(path, *t, config_or_default(config).ingest_options());
  });
}

int qi_register_manifest(qi_catalog* catalog, const char* path, const qi_config* config,
                         int64_t* source_id_out) {
  return guarded([&] {
    require(catalog, "catalog");
    require(path, "path");
    std::unique_lock lock(catalog->mutex);
    // Work on a copy so a failing manifest leaves the catalog untouched.
    Catalog copy = catalog->catalog;
    auto id = qualint::register_manifest(copy, path, config_or_default(config).ingest_options());
    catalog->catalog = std::move(copy);
    if (source_id_out) *source_id_out = id;
  });
}

int qi_load_relation(qi_catalog* catalog, const char* source, const char* table,
                     const char* path, const char* inserted, double volatility,
                     const qi_config* config, int64_t* table_id_out) {
  return guarded([&] {
    require(catalog, "catalog");
    require(source, "source");
    require(table, "table");
    require(path, "path");
    require(inserted, "inserted");
    std::unique_lock lock(catalog->mutex);
    auto date = qualint::util::parse_date(inserted);
    if (!date)
      qualint::fail(ErrorCode::InvalidArgument, std::string("bad insertion date '") + inserted +
                                                    "'");
    qualint::RelationDescriptor d;
    d.name = table;
    d.insertion_date = *date;
    d.volatility = volatility;
    d.source_id = source_id(catalog->catalog, source);
    auto id = catalog->catalog.load_relation(path, d, {},
                                             config_or_default(config).ingest_options());
    if (table_id_out) *table_id_out = id;
  });
}

int qi_upsert_mapping(qi_catalog* catalog, const char* source, const char* table,
                      const char* column, const char* global_column, int replace,
                      int64_t* mapping_id_out) {
  return guarded([&] {
    require(catalog, "catalog");
    require(source, "source");
    require(table, "table");
    require(column, "column");
    require(global_column, "global_column");
    std::unique_lock lock(catalog->mutex);
    auto& c = catalog->catalog;
    auto t = table_id(c, source_id(c, source), table);
    auto col = c.find_column(t, column);
    if (!col)
      qualint::fail(ErrorCode::UnknownEntity, std::string("unknown column '") + column + "'");
    auto gs = c.find_global_column(global_column);
    if (!gs)
      qualint::fail(ErrorCode::UnknownColumn,
                    std::string("unknown or ambiguous global column '") + global_column + "'");
    auto id = c.upsert_mapping(*col, *gs, replace != 0);
    if (mapping_id_out) *mapping_id_out = id;
  });
}

int qi_assess(qi_catalog* catalog, const qi_config* config, char** report_out) {
  return guarded([&] {
    require(catalog, "catalog");
    const Config& cfg = config_or_default(config);
    std::unique_lock lock(catalog->mutex);
    Catalog copy = catalog->catalog;
    auto outcome = qualint::run_assess(copy, cfg);
    auto report = qualint::render_assess(copy, outcome, cfg);
    catalog->catalog = std::move(copy);
    if (report_out) *report_out = copy_out(report);
  });
}

int qi_query(qi_catalog* catalog, const qi_config* config, const char* sql, unsigned flags,
             char** report_out) {
  if (report_out) *report_out = nullptr;
  return guarded([&] {
    require(catalog, "catalog");
    require(sql, "sql");
    const Config& cfg = config_or_default(config);
    qualint::QueryOutcome outcome;
    std::string report;
    {
      std::shared_lock lock(catalog->mutex);
      outcome = qualint::run_query(catalog->catalog, sql, cfg);
      if (outcome.unsatisfiable) qualint::fail(ErrorCode::UnsatisfiableGoal, *outcome.unsatisfiable);
      report = qualint::render_query(catalog->catalog, outcome, cfg, flags & QI_QUERY_STATS);
    }
    if (flags & QI_QUERY_RECORD) {
      std::unique_lock lock(catalog->mutex);
      catalog->catalog.record_query(qualint::to_record(outcome));
    }
    if (report_out) *report_out = copy_out(report);
  });
}

int qi_explain(qi_catalog* catalog, const qi_config* config, const char* sql,
               char** report_out) {
  if (report_out) *report_out = nullptr;
  return guarded([&] {
    require(catalog, "catalog");
    require(sql, "sql");
    const Config& cfg = config_or_default(config);
    std::shared_lock lock(catalog->mutex);
    auto outcome = qualint::run_query(catalog->catalog, sql, cfg);
    auto report = qualint::render_explain(catalog->catalog, outcome, cfg);
    if (report_out) *report_out = copy_out(report);
    if (outcome.unsatisfiable) qualint::fail(ErrorCode::UnsatisfiableGoal, *outcome.unsatisfiable);
  });
}

}  // extern "C"
