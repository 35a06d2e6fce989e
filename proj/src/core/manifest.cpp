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

#include <filesystem>
#include <sstream>

#include "qualint/catalog.hpp"
#include "qualint/error.hpp"

namespace qualint {

namespace {

struct TableSection {
  std::string name;
  std::string file;
  std::string inserted;
  std::string volatility;
  std::string global;
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::string>> maps;
  std::size_t line = 0;
};

[[noreturn]] void bad_manifest(const std::string& path, std::size_t line, const std::string& why) {
  fail(ErrorCode::ConfigError, path + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

Id register_manifest(Catalog& catalog, const std::string& path, const IngestOptions& options) {
  std::istringstream in(util::read_file(path));
  std::string source_name, domain_name;
  std::vector<TableSection> tables;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || !line.starts_with("[table "))
        bad_manifest(path, line_no, "expected [table <name>]");
      TableSection t;
      t.name = std::string(util::trim(line.substr(7, line.size() - 8)));
      t.line = line_no;
      if (t.name.empty()) bad_manifest(path, line_no, "table name missing");
      tables.push_back(std::move(t));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) bad_manifest(path, line_no, "expected key = value");
    auto key = util::trim(line.substr(0, eq));
    auto value = std::string(util::trim(line.substr(eq + 1)));

    if (key.starts_with("map ")) {
      if (tables.empty()) bad_manifest(path, line_no, "map outside a [table] section");
      tables.back().maps.emplace_back(util::trim(key.substr(4)), value);
      continue;
    }
    if (tables.empty()) {
      if (key == "source") source_name = value;
      else if (key == "domain") domain_name = value;
      else bad_manifest(path, line_no, "unknown key '" + std::string(key) + "'");
      continue;
    }
    auto& t = tables.back();
    if (key == "file") t.file = value;
    else if (key == "inserted") t.inserted = value;
    else if (key == "volatility") t.volatility = value;
    else if (key == "global") t.global = value;
    else if (key == "columns") {
      for (auto& c : util::split(value, ',')) t.columns.emplace_back(util::trim(c));
    } else {
      bad_manifest(path, line_no, "unknown key '" + std::string(key) + "'");
    }
  }

  if (source_name.empty()) bad_manifest(path, 1, "missing 'source'");
  if (domain_name.empty()) bad_manifest(path, 1, "missing 'domain'");
  auto domain = catalog.find_domain(domain_name);
  if (!domain) fail(ErrorCode::UnknownDomain, "domain '" + domain_name + "' is not registered");

  // Validate everything before mutating the catalog.
  struct Prepared {
    RelationDescriptor descriptor;
    std::string file;
    std::vector<std::pair<std::string, Id>> maps;
    std::vector<std::string> columns;
  };
  std::vector<Prepared> prepared;
  auto base = std::filesystem::path(path).parent_path();
  for (const auto& t : tables) {
    Prepared p;
    p.descriptor.name = t.name;
    auto date = util::parse_date(t.inserted);
    if (!date) bad_manifest(path, t.line, "table '" + t.name + "': bad or missing 'inserted'");
    p.descriptor.insertion_date = *date;
    auto vol = util::parse_double(t.volatility);
    if (!vol || *vol <= 0)
      bad_manifest(path, t.line, "table '" + t.name + "': volatility must be positive");
    p.descriptor.volatility = *vol;
    if (t.file.empty()) bad_manifest(path, t.line, "table '" + t.name + "': missing 'file'");
    auto file = std::filesystem::path(t.file);
    p.file = (file.is_absolute() ? file : base / file).string();
    p.columns = t.columns;
    for (const auto& [col, target] : t.maps) {
      std::string qualified =
          !t.global.empty() && target.find('.') == std::string::npos ? t.global + "." + target
                                                                     : target;
      auto gs = catalog.find_global_column(qualified);
      if (!gs)
        fail(ErrorCode::UnknownEntity, "unknown or ambiguous global column '" + qualified + "'");
      p.maps.emplace_back(col, *gs);
    }
    prepared.push_back(std::move(p));
  }

  Id source_id = catalog.register_source(SourceDescriptor{0, source_name, *domain});
  for (auto& p : prepared) {
    p.descriptor.source_id = source_id;
    Id table_id = catalog.load_relation(p.file, p.descriptor, p.columns, options);
    for (const auto& [col, gs] : p.maps) {
      auto column_id = catalog.find_column(table_id, col);
      if (!column_id)
        fail(ErrorCode::SchemaMismatch,
             "table '" + p.descriptor.name + "' has no column '" + col + "'");
      catalog.upsert_mapping(*column_id, gs);
    }
  }
  return source_id;
}

}  // namespace qualint
