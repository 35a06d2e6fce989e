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

/* C interface to the qualint engine. Every function returns a qi_status
 * (0 on success). On failure qi_last_error() describes the problem; the
 * message is thread-local and valid until the next call on that thread.
 * Strings returned through char** are owned by the caller and released with
 * qi_string_free(). A qi_catalog may be shared between threads: queries and
 * explains take a shared lock, mutations an exclusive one. */

#ifndef QUALINT_QUALINT_H_
#define QUALINT_QUALINT_H_

#include <stdint.h>

#if defined(_WIN32)
#define QI_API __declspec(dllexport)
#else
#define QI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qi_status {
  QI_OK = 0,
  QI_INVALID_ARGUMENT = 1,
  QI_IO_ERROR = 2,
  QI_DUPLICATE_SOURCE = 3,
  QI_UNKNOWN_DOMAIN = 4,
  QI_UNKNOWN_ENTITY = 5,
  QI_SCHEMA_ERROR = 6,
  QI_SCHEMA_MISMATCH = 7,
  QI_ROW_FORMAT_ERROR = 8,
  QI_DUPLICATE_REFERENCE_KEY = 9,
  QI_NULL_REFERENCE_KEY = 10,
  QI_MAPPING_CONFLICT = 11,
  QI_UNSUPPORTED_CATALOG_VERSION = 12,
  QI_CATALOG_PARSE_ERROR = 13,
  QI_EMPTY_REFERENCE = 14,
  QI_INVARIANT_VIOLATION = 15,
  QI_MISSING_KEY_MAPPING = 16,
  QI_EMPTY_PROJECTION = 17,
  QI_EMPTY_INPUT = 18,
  QI_NO_SOURCES = 19,
  QI_STALE_ASSESSMENT = 20,
  QI_PARSE_ERROR = 21,
  QI_UNKNOWN_COLUMN = 22,
  QI_UNKNOWN_FEATURE = 23,
  QI_UNRESOLVED_TERM = 24,
  QI_UNSUPPORTED_GOAL_SHAPE = 25,
  QI_UNSUPPORTED_PREDICATE = 26,
  QI_NO_CANDIDATE_SOURCES = 27,
  QI_TOO_MANY_SOURCES = 28,
  QI_UNSATISFIABLE_GOAL = 29,
  QI_EMPTY_RANKING = 30,
  QI_REJECTED_SCORING_FUNCTION = 31,
  QI_MISSING_KEY = 32,
  QI_CONFIG_ERROR = 33,
  QI_INTERNAL = 99
} qi_status;

typedef struct qi_catalog qi_catalog;
typedef struct qi_config qi_config;

/* Flags for qi_query. */
#define QI_QUERY_STATS 1u  /* append TA access counts */
#define QI_QUERY_RECORD 2u /* store the query-scoped entities in the catalog */

QI_API const char* qi_status_name(int status);
QI_API const char* qi_last_error(void);
QI_API void qi_string_free(char* s);

/* --- configuration ------------------------------------------------------ */

QI_API int qi_config_create(qi_config** out);
QI_API void qi_config_destroy(qi_config* config);
/* One `key = value` setting, e.g. ("age_mode", "months30"). */
QI_API int qi_config_set(qi_config* config, const char* key, const char* value);
QI_API int qi_config_load_file(qi_config* config, const char* path);

/* --- catalog ------------------------------------------------------------- */

QI_API int qi_catalog_create(qi_catalog** out);
QI_API int qi_catalog_load(const char* path, qi_catalog** out);
QI_API int qi_catalog_save(qi_catalog* catalog, const char* path);
QI_API void qi_catalog_destroy(qi_catalog* catalog);

QI_API int qi_register_domain(qi_catalog* catalog, const char* name, int64_t* id_out);
QI_API int qi_register_source(qi_catalog* catalog, const char* name, const char* domain,
                              int64_t* id_out);
/* Global schema CSV: table,column,key,rule[,detector][,correlated_with]. */
QI_API int qi_load_schema(qi_catalog* catalog, const char* path);
QI_API int qi_load_reference(qi_catalog* catalog, const char* global_table, const char* path,
                             const qi_config* config);
/* `config` may be NULL for defaults. */
QI_API int qi_register_manifest(qi_catalog* catalog, const char* path, const qi_config* config,
                                int64_t* source_id_out);
QI_API int qi_load_relation(qi_catalog* catalog, const char* source, const char* table,
                            const char* path, const char* inserted, double volatility,
                            const qi_config* config, int64_t* table_id_out);
/* `global_column` is "Column" or "Table.Column". */
QI_API int qi_upsert_mapping(qi_catalog* catalog, const char* source, const char* table,
                             const char* column, const char* global_column, int replace,
                             int64_t* mapping_id_out);

/* --- pipeline ------------------------------------------------------------ */

QI_API int qi_assess(qi_catalog* catalog, const qi_config* config, char** report_out);
/* On QI_UNSATISFIABLE_GOAL *report_out is NULL and qi_last_error() holds the
 * user message. */
QI_API int qi_query(qi_catalog* catalog, const qi_config* config, const char* sql,
                    unsigned flags, char** report_out);
/* Writes the report even for an unsatisfiable goal (status
 * QI_UNSATISFIABLE_GOAL), so the pruning verdicts can be inspected. */
QI_API int qi_explain(qi_catalog* catalog, const qi_config* config, const char* sql,
                      char** report_out);

#ifdef __cplusplus
}
#endif

#endif /* QUALINT_QUALINT_H_ */
