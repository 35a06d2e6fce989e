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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qualint {

using Id = std::int64_t;

// A single cell; std::nullopt is SQL NULL.
using Cell = std::optional<std::string>;
using Row = std::vector<Cell>;

enum class Feature { FactCompleteness, Validity, Accuracy, Timeliness };

inline constexpr std::array<Feature, 4> kAllFeatures = {
    Feature::FactCompleteness, Feature::Validity, Feature::Accuracy,
    Feature::Timeliness};

// snake_case identifier: "fact_completeness", ...
std::string_view feature_key(Feature feature) noexcept;
// Display form used in query text and reports: "FactCompleteness", ...
std::string_view feature_title(Feature feature) noexcept;
// Short form used in pruning annotations: "fact", "validity", ...
std::string_view feature_short(Feature feature) noexcept;

// Accepts the key, the title, the short form, and any of those with an
// "Alternative" prefix, case-insensitively.
std::optional<Feature> feature_from_name(std::string_view name);

struct QualityVector {
  double fact_completeness = 0;
  double validity = 0;
  double accuracy = 0;
  double timeliness = 0;

  double get(Feature feature) const noexcept;
  void set(Feature feature, double value) noexcept;

  bool operator==(const QualityVector&) const = default;
};

// Round every component half-up to `digits` decimals.
QualityVector quantize(const QualityVector& v, int digits);

// One GlobalSchemaMapping row with its assessed scores.
struct ColumnProfile {
  Id mapping_id = 0;
  Id column_id = 0;
  Id gs_column_id = 0;
  double population_completeness = 0;
  double incompleteness = 0;
  double fact_completeness = 0;
  double validity = 0;
  double accuracy = 0;
  double timeliness = 0;

  QualityVector vector() const noexcept {
    return {fact_completeness, validity, accuracy, timeliness};
  }

  bool operator==(const ColumnProfile&) const = default;
};

}  // namespace qualint
