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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qualint/assessor.hpp"
#include "qualint/catalog.hpp"
#include "qualint/error.hpp"

namespace qualint::testing {

inline std::filesystem::path fixture_dir() { return QUALINT_FIXTURE_DIR; }

inline std::string fixture(const std::string& name) { return (fixture_dir() / name).string(); }

// The worked-example catalog: schema, references, DS1..DS3 in that order.
inline Catalog university_catalog() {
  Catalog c;
  c.register_domain("Cairo University");
  c.load_schema(fixture("schema.csv"));
  c.load_reference_relation(fixture("ref_student.csv"), *c.find_global_table("Student"));
  c.load_reference_relation(fixture("ref_supervisor.csv"), *c.find_global_table("Supervisor"));
  c.load_reference_relation(fixture("ref_department.csv"), *c.find_global_table("Department"));
  register_manifest(c, fixture("ds1.manifest"));
  register_manifest(c, fixture("ds2.manifest"));
  register_manifest(c, fixture("ds3.manifest"));
  return c;
}

inline util::Date example_delivery() { return *util::parse_date("2/2/2016"); }

// Assessed at 2/2/2016 with the 30/360 age count.
inline Catalog assessed_university_catalog() {
  Catalog c = university_catalog();
  c.store_profiles(
      assess::assess_mapping_table(c, example_delivery(), {assess::AgeMode::Months30}));
  return c;
}

inline double round2(double v) { return util::round_half_up(v, 2); }

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("qualint_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

// Expects `stmt` to throw qualint::Error with `code`.
#define EXPECT_QI_ERROR(stmt, error_code)                                              \
  do {                                                                                 \
    try {                                                                              \
      stmt;                                                                            \
      ADD_FAILURE() << "expected " << ::qualint::error_code_name(error_code);          \
    } catch (const ::qualint::Error& e) {                                              \
      EXPECT_EQ(e.code(), error_code) << ::qualint::error_code_name(e.code()) << ": "  \
                                      << e.what();                                     \
    }                                                                                  \
  } while (0)

}  // namespace qualint::testing
