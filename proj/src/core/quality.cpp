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

#include "qualint/quality.hpp"

#include "qualint/util.hpp"

namespace qualint {

std::string_view feature_key(Feature feature) noexcept {
  switch (feature) {
    case Feature::FactCompleteness: return "fact_completeness";
    case Feature::Validity: return "validity";
    case Feature::Accuracy: return "accuracy";
    case Feature::Timeliness: return "timeliness";
  }
  return "";
}

std::string_view feature_title(Feature feature) noexcept {
  switch (feature) {
    case Feature::FactCompleteness: return "FactCompleteness";
    case Feature::Validity: return "Validity";
    case Feature::Accuracy: return "Accuracy";
    case Feature::Timeliness: return "Timeliness";
  }
  return "";
}

std::string_view feature_short(Feature feature) noexcept {
  switch (feature) {
    case Feature::FactCompleteness: return "fact";
    case Feature::Validity: return "validity";
    case Feature::Accuracy: return "accuracy";
    case Feature::Timeliness: return "timeliness";
  }
  return "";
}

std::optional<Feature> feature_from_name(std::string_view name) {
  std::string lower = util::to_lower(name);
  if (lower.starts_with("alternative") && lower.size() > 11) lower.erase(0, 11);
  for (Feature f : kAllFeatures) {
    if (lower == feature_key(f) || lower == util::to_lower(feature_title(f)) ||
        lower == feature_short(f))
      return f;
  }
  return std::nullopt;
}

double QualityVector::get(Feature feature) const noexcept {
  switch (feature) {
    case Feature::FactCompleteness: return fact_completeness;
    case Feature::Validity: return validity;
    case Feature::Accuracy: return accuracy;
    case Feature::Timeliness: return timeliness;
  }
  return 0;
}

void QualityVector::set(Feature feature, double value) noexcept {
  switch (feature) {
    case Feature::FactCompleteness: fact_completeness = value; break;
    case Feature::Validity: validity = value; break;
    case Feature::Accuracy: accuracy = value; break;
    case Feature::Timeliness: timeliness = value; break;
  }
}

QualityVector quantize(const QualityVector& v, int digits) {
  return {util::round_half_up(v.fact_completeness, digits),
          util::round_half_up(v.validity, digits),
          util::round_half_up(v.accuracy, digits),
          util::round_half_up(v.timeliness, digits)};
}

}  // namespace qualint
