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

// qualint command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qualint/qualint.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitUnsatisfiable = 3;

int exit_code_for(int status) {
  switch (status) {
    case QI_OK:
      return kExitOk;
    case QI_INVALID_ARGUMENT:
    case QI_PARSE_ERROR:
    case QI_UNKNOWN_COLUMN:
    case QI_UNKNOWN_FEATURE:
    case QI_UNRESOLVED_TERM:
    case QI_UNSUPPORTED_GOAL_SHAPE:
    case QI_UNSUPPORTED_PREDICATE:
    case QI_REJECTED_SCORING_FUNCTION:
    case QI_CONFIG_ERROR:
      return kExitUsage;
    case QI_UNSATISFIABLE_GOAL:
      return kExitUnsatisfiable;
    default:
      return kExitData;
  }
}

// Thrown to unwind with an exit code after the message has been printed.
struct Exit {
  int code;
};

void check(int status) {
  if (status == QI_OK) return;
  std::cerr << "error: " << qi_status_name(status) << ": " << qi_last_error() << '\n';
  throw Exit{exit_code_for(status)};
}

// Reports a failure detected by the CLI itself, in the same shape as check().
[[noreturn]] void fail(int status, const std::string& message) {
  std::cerr << "error: " << qi_status_name(status) << ": " << message << '\n';
  throw Exit{exit_code_for(status)};
}

struct Report {
  char* text = nullptr;
  ~Report() { qi_string_free(text); }
  void print() const {
    if (text) std::cout << text;
  }
};

struct CatalogHandle {
  qi_catalog* ptr = nullptr;
  ~CatalogHandle() { qi_catalog_destroy(ptr); }
};

struct ConfigHandle {
  qi_config* ptr = nullptr;
  ~ConfigHandle() { qi_config_destroy(ptr); }
};

struct Options {
  std::string catalog = "qualint.catalog";
  std::string config_file;
  std::string format;
  std::string as_of;
  std::string age_mode;
  std::string scoring;
  std::vector<std::string> defines;

  // register
  std::vector<std::string> domains;
  std::string schema;
  std::vector<std::string> references;
  std::vector<std::string> manifests;

  // query / explain
  std::string sql;
  std::string sql_file;
  bool stats = false;
  bool record = false;
  bool explain = false;
  bool force = false;
};

void build_config(const Options& o, ConfigHandle& config) {
  check(qi_config_create(&config.ptr));
  if (!o.config_file.empty()) check(qi_config_load_file(config.ptr, o.config_file.c_str()));
  if (!o.format.empty()) check(qi_config_set(config.ptr, "format", o.format.c_str()));
  if (!o.as_of.empty()) check(qi_config_set(config.ptr, "as_of", o.as_of.c_str()));
  if (!o.age_mode.empty()) check(qi_config_set(config.ptr, "age_mode", o.age_mode.c_str()));
  if (!o.scoring.empty()) check(qi_config_set(config.ptr, "scoring", o.scoring.c_str()));
  for (const auto& d : o.defines) {
    auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(QI_INVALID_ARGUMENT, "--define expects term=value, got '" + d + "'");
    }
    auto key = "term." + d.substr(0, eq);
    check(qi_config_set(config.ptr, key.c_str(), d.substr(eq + 1).c_str()));
  }
}

void open_catalog(const Options& o, CatalogHandle& catalog) {
  check(qi_catalog_load(o.catalog.c_str(), &catalog.ptr));
}

std::string query_text(const Options& o) {
  if (!o.sql.empty() && !o.sql_file.empty()) {
    fail(QI_INVALID_ARGUMENT, "give either --sql or --file, not both");
  }
  if (!o.sql_file.empty()) {
    std::ifstream in(o.sql_file, std::ios::binary);
    if (!in) {
      fail(QI_IO_ERROR, "cannot read query file '" + o.sql_file + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  if (o.sql.empty()) {
    fail(QI_INVALID_ARGUMENT, "a query is required (--sql or --file)");
  }
  return o.sql;
}

int run_init(const Options& o) {
  if (std::filesystem::exists(o.catalog) && !o.force) {
    fail(QI_IO_ERROR, "catalog '" + o.catalog + "' already exists (use --force)");
  }
  CatalogHandle catalog;
  check(qi_catalog_create(&catalog.ptr));
  check(qi_catalog_save(catalog.ptr, o.catalog.c_str()));
  return kExitOk;
}

int run_register(const Options& o) {
  if (o.domains.empty() && o.schema.empty() && o.references.empty() && o.manifests.empty()) {
    fail(QI_INVALID_ARGUMENT, "register needs --domain, --schema, --reference or --manifest");
  }
  ConfigHandle config;
  build_config(o, config);
  CatalogHandle catalog;
  open_catalog(o, catalog);
  for (const auto& d : o.domains) check(qi_register_domain(catalog.ptr, d.c_str(), nullptr));
  if (!o.schema.empty()) check(qi_load_schema(catalog.ptr, o.schema.c_str()));
  for (const auto& r : o.references) {
    auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(QI_INVALID_ARGUMENT, "--reference expects Table=file.csv, got '" + r + "'");
    }
    check(qi_load_reference(catalog.ptr, r.substr(0, eq).c_str(), r.substr(eq + 1).c_str(),
                            config.ptr));
  }
  for (const auto& m : o.manifests)
    check(qi_register_manifest(catalog.ptr, m.c_str(), config.ptr, nullptr));
  check(qi_catalog_save(catalog.ptr, o.catalog.c_str()));
  return kExitOk;
}

int run_assess(const Options& o) {
  ConfigHandle config;
  build_config(o, config);
  CatalogHandle catalog;
  open_catalog(o, catalog);
  Report report;
  check(qi_assess(catalog.ptr, config.ptr, &report.text));
  check(qi_catalog_save(catalog.ptr, o.catalog.c_str()));
  report.print();
  return kExitOk;
}

int run_query(const Options& o) {
  ConfigHandle config;
  build_config(o, config);
  CatalogHandle catalog;
  open_catalog(o, catalog);
  auto sql = query_text(o);
  if (o.explain) {
    Report explain;
    int s = qi_explain(catalog.ptr, config.ptr, sql.c_str(), &explain.text);
    explain.print();
    if (explain.text) std::cout << '\n';
    check(s);
  }
  unsigned flags = (o.stats ? QI_QUERY_STATS : 0u) | (o.record ? QI_QUERY_RECORD : 0u);
  Report report;
  check(qi_query(catalog.ptr, config.ptr, sql.c_str(), flags, &report.text));
  if (o.record) check(qi_catalog_save(catalog.ptr, o.catalog.c_str()));
  report.print();
  return kExitOk;
}

int run_explain(const Options& o) {
  ConfigHandle config;
  build_config(o, config);
  CatalogHandle catalog;
  open_catalog(o, catalog);
  auto sql = query_text(o);
  Report report;
  int s = qi_explain(catalog.ptr, config.ptr, sql.c_str(), &report.text);
  report.print();
  check(s);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"qualint: quality-driven virtual data integration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qualint 0.1.0");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--catalog,-c", o.catalog, "Catalog file")->capture_default_str();
    sub->add_option("--config", o.config_file, "Configuration file (key = value lines)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "records"}));
    sub->add_option("--as-of", o.as_of, "Delivery date, day/month/year");
    sub->add_option("--age-mode", o.age_mode, "Data age: exact-days or months30")
        ->check(CLI::IsMember({"exact-days", "months30"}));
    sub->add_option("--define", o.defines, "Qualitative term threshold, e.g. high=0.65");
  };

  auto* init = app.add_subcommand("init", "Create an empty catalog");
  init->add_option("--catalog,-c", o.catalog, "Catalog file")->capture_default_str();
  init->add_flag("--force", o.force, "Overwrite an existing catalog");

  auto* reg = app.add_subcommand("register", "Add domains, the global schema, references, sources");
  common(reg);
  reg->add_option("--domain", o.domains, "Domain name");
  reg->add_option("--schema", o.schema, "Global schema CSV");
  reg->add_option("--reference", o.references, "Reference relation, Table=file.csv");
  reg->add_option("--manifest", o.manifests, "Source manifest");

  auto* assess = app.add_subcommand("assess", "Score every mapped column");
  common(assess);

  auto query_options = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--sql,-q", o.sql, "Query text");
    sub->add_option("--file,-f", o.sql_file, "File holding the query");
    sub->add_option("--scoring", o.scoring, "TA scoring function")
        ->check(CLI::IsMember({"sum", "min", "weighted"}));
  };
  auto* query = app.add_subcommand("query", "Answer a quality-aware query");
  query_options(query);
  query->add_flag("--stats", o.stats, "Print TA access counts");
  query->add_flag("--record", o.record, "Store the query-scoped entities in the catalog");
  query->add_flag("--explain", o.explain, "Print the planning report first");

  auto* explain = app.add_subcommand("explain", "Show how a query is planned and pruned");
  query_options(explain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*init) return run_init(o);
    if (*reg) return run_register(o);
    if (*assess) return run_assess(o);
    if (*query) return run_query(o);
    if (*explain) return run_explain(o);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
