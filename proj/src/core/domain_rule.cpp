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

#include "qualint/domain_rule.hpp"

#include "qualint/error.hpp"
#include "qualint/util.hpp"

namespace qualint {

std::string_view value_type_name(ValueType type) noexcept {
  switch (type) {
    case ValueType::Int: return "int";
    case ValueType::Real: return "real";
    case ValueType::Date: return "date";
    case ValueType::Text: return "text";
  }
  return "text";
}

namespace {

bool type_matches(std::string_view value, ValueType type) {
  switch (type) {
    case ValueType::Int: return util::parse_int(value).has_value();
    case ValueType::Real: return util::parse_double(value).has_value();
    case ValueType::Date: return util::parse_date(value).has_value();
    case ValueType::Text: return true;
  }
  return false;
}

[[noreturn]] void bad_rule(std::string_view text, const std::string& why) {
  fail(ErrorCode::SchemaError, "invalid domain rule '" + std::string(text) + "': " + why);
}

}  // namespace

DomainRule DomainRule::parse(std::string_view text) {
  DomainRule rule;
  rule.text_ = std::string(util::trim(text));
  std::string_view rest = rule.text_;
  if (rest.empty()) bad_rule(text, "empty rule");

  while (!rest.empty()) {
    rest = util::trim(rest);
    if (rest.starts_with("pattern:")) {
      std::string source(rest.substr(8));
      try {
        rule.clauses_.emplace_back(
            PatternClause{source, std::make_shared<const std::regex>(source)});
      } catch (const std::regex_error& e) {
        bad_rule(text, std::string("bad pattern: ") + e.what());
      }
      break;
    }
    auto semi = rest.find(';');
    std::string_view clause = util::trim(rest.substr(0, semi));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);

    if (clause.starts_with("type:")) {
      auto name = util::to_lower(util::trim(clause.substr(5)));
      ValueType type;
      if (name == "int") type = ValueType::Int;
      else if (name == "real") type = ValueType::Real;
      else if (name == "date") type = ValueType::Date;
      else if (name == "text") type = ValueType::Text;
      else bad_rule(text, "unknown type '" + name + "'");
      rule.clauses_.emplace_back(TypeClause{type});
    } else if (clause.starts_with("range:")) {
      auto body = util::trim(clause.substr(6));
      if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        bad_rule(text, "range must look like [lo,hi]");
      auto bounds = util::split(body.substr(1, body.size() - 2), ',');
      if (bounds.size() != 2) bad_rule(text, "range needs two bounds");
      RangeClause range{std::string(util::trim(bounds[0])),
                        std::string(util::trim(bounds[1]))};
      auto lo = util::parse_double(range.lo_text), hi = util::parse_double(range.hi_text);
      if (lo && hi) {
        if (*lo > *hi) bad_rule(text, "lo > hi");
      } else {
        auto dlo = util::parse_date(range.lo_text), dhi = util::parse_date(range.hi_text);
        if (!dlo || !dhi) bad_rule(text, "bounds must be numbers or dates");
        if (*dlo > *dhi) bad_rule(text, "lo > hi");
        range.dates = true;
      }
      rule.clauses_.emplace_back(std::move(range));
    } else if (clause.starts_with("in:")) {
      auto body = util::trim(clause.substr(3));
      if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        bad_rule(text, "enumeration must look like {v1,v2}");
      InClause in;
      for (auto& v : util::split(body.substr(1, body.size() - 2), ','))
        in.values.emplace_back(util::trim(v));
      rule.clauses_.emplace_back(std::move(in));
    } else {
      bad_rule(text, "unknown clause '" + std::string(clause) + "'");
    }
  }
  return rule;
}

ValueType DomainRule::value_type() const {
  for (const auto& clause : clauses_)
    if (auto* t = std::get_if<TypeClause>(&clause)) return t->type;
  return ValueType::Text;
}

bool DomainRule::satisfied_by(std::string_view value) const {
  for (const auto& clause : clauses_) {
    bool ok = std::visit(
        [&](const auto& c) -> bool {
          using C = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<C, TypeClause>) {
            return type_matches(value, c.type);
          } else if constexpr (std::is_same_v<C, RangeClause>) {
            if (c.dates) {
              auto v = util::parse_date(value);
              return v && *util::parse_date(c.lo_text) <= *v &&
                     *v <= *util::parse_date(c.hi_text);
            }
            auto v = util::parse_double(value);
            return v && *util::parse_double(c.lo_text) <= *v &&
                   *v <= *util::parse_double(c.hi_text);
          } else if constexpr (std::is_same_v<C, InClause>) {
            for (const auto& allowed : c.values)
              if (allowed == value) return true;
            return false;
          } else {
            return std::regex_match(value.begin(), value.end(), *c.regex);
          }
        },
        clause);
    if (!ok) return false;
  }
  return true;
}

bool values_equal(std::string_view a, std::string_view b, ValueType type) {
  switch (type) {
    case ValueType::Int: {
      auto x = util::parse_int(a), y = util::parse_int(b);
      if (x && y) return *x == *y;
      break;
    }
    case ValueType::Real: {
      auto x = util::parse_double(a), y = util::parse_double(b);
      if (x && y) return *x == *y;
      break;
    }
    case ValueType::Date: {
      auto x = util::parse_date(a), y = util::parse_date(b);
      if (x && y) return *x == *y;
      break;
    }
    case ValueType::Text:
      break;
  }
  return a == b;
}

}  // namespace qualint

namespace qualint {

std::string canonical_value(std::string_view value, ValueType type) {
  switch (type) {
    case ValueType::Int:
      if (auto v = util::parse_int(value)) return std::to_string(*v);
      break;
    case ValueType::Real:
      if (auto v = util::parse_double(value)) return util::format_exact(*v);
      break;
    case ValueType::Date:
      if (auto v = util::parse_date(value)) return util::format_date(*v);
      break;
    case ValueType::Text:
      break;
  }
  return std::string(value);
}

}  // namespace qualint
