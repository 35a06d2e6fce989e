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

#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qualint {

enum class ValueType { Int, Real, Date, Text };

std::string_view value_type_name(ValueType type) noexcept;

// Validity constraint attached to every global column. Grammar, clauses
// separated by ';' (a pattern clause must come last, it consumes the rest):
//
//   rule    := clause (';' clause)*
//   clause  := 'type:' ('int'|'real'|'date'|'text')
//            | 'range:[' lo ',' hi ']'
//            | 'in:{' value (',' value)* '}'
//            | 'pattern:' regex
//
// A value is valid when it satisfies every clause. Range bounds are numbers,
// or day/month/year dates when both bounds parse as dates.
class DomainRule {
 public:
  struct TypeClause { ValueType type; };
  struct RangeClause {
    std::string lo_text, hi_text;
    bool dates = false;
  };
  struct InClause { std::vector<std::string> values; };
  struct PatternClause {
    std::string source;
    std::shared_ptr<const std::regex> regex;
  };
  using Clause = std::variant<TypeClause, RangeClause, InClause, PatternClause>;

  DomainRule() = default;

  // Throws SchemaError on malformed text.
  static DomainRule parse(std::string_view text);

  bool satisfied_by(std::string_view value) const;

  // Declared type (Text when no type clause is present).
  ValueType value_type() const;

  const std::string& text() const { return text_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool operator==(const DomainRule& other) const { return text_ == other.text_; }

 private:
  std::string text_;
  std::vector<Clause> clauses_;
};

// Equality used for 0/1 accuracy: numeric for int/real, calendar for dates,
// exact byte equality for text. Values that do not parse under the declared
// type fall back to exact text comparison.
bool values_equal(std::string_view a, std::string_view b, ValueType type);

}  // namespace qualint

namespace qualint {

// Canonical spelling of a value under a declared type, used as a matching
// key ("01" and "1" are the same int; "02/12/2015" and "2/12/2015" the same
// date). Unparseable values are returned unchanged.
std::string canonical_value(std::string_view value, ValueType type);

}  // namespace qualint
