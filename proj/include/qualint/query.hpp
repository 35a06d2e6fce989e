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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qualint/quality.hpp"

namespace qualint {

class Catalog;

// Quality-extended SELECT. Grammar (keywords case-insensitive):
//
//   query      = "SELECT" column { "," column } "FROM" ident
//                [ "WHERE" predicate ] [ "WITH" goal ]
//                [ "ORDER" "BY" order { "," order } ] [ "LIMIT" integer ] [ ";" ]
//   column     = ident [ "." ident ]
//   predicate  = pand { "OR" pand }
//   pand       = pnot { "AND" pnot }
//   pnot       = "NOT" pnot | "(" predicate ")" | column cmp literal
//              | column "IS" [ "NOT" ] "NULL"
//   goal       = gand { "OR" gand }
//   gand       = gatom { "AND" gatom }
//   gatom      = "(" goal ")" | feature cmp number | feature [ "IS" ] term
//   order      = feature [ "ASC" | "DESC" ]
//   cmp        = ">=" | "≥" | ">" | "=" | "<=" | "≤" | "<" | "<>" | "!="
//   feature    = [ "Alternative" ] ( "FactCompleteness" | "Validity"
//              | "Accuracy" | "Timeliness" )   (snake_case also accepted)
//   term       = ident                         (e.g. low, medium, high)
//   literal    = number | "'" chars "'"
//
// "<>" and "!=" are only meaningful in WHERE predicates.

enum class Comparator { Ge, Gt, Eq, Le, Lt, Ne };

std::string_view comparator_symbol(Comparator c) noexcept;
bool compare(double lhs, Comparator c, double rhs) noexcept;

struct FeatureConstraint {
  Feature feature = Feature::FactCompleteness;
  Comparator comparator = Comparator::Ge;
  // A number in [0,1], or a qualitative term.
  std::variant<double, std::string> bound;

  bool qualitative() const { return std::holds_alternative<std::string>(bound); }
  bool operator==(const FeatureConstraint&) const = default;
};

struct GoalNode {
  enum class Kind { Leaf, And, Or };
  Kind kind = Kind::Leaf;
  FeatureConstraint leaf;
  std::vector<GoalNode> children;  // And/Or only; never of the node's own kind

  bool operator==(const GoalNode&) const = default;
};

struct Literal {
  std::string text;
  bool is_number = false;
  bool operator==(const Literal&) const = default;
};

struct Predicate {
  enum class Kind { Compare, IsNull, IsNotNull, And, Or, Not };
  Kind kind = Kind::Compare;
  std::string column;
  Comparator comparator = Comparator::Eq;
  Literal literal;
  std::vector<Predicate> children;

  bool operator==(const Predicate&) const = default;
};

struct OrderItem {
  Feature feature = Feature::FactCompleteness;
  bool descending = true;
  bool operator==(const OrderItem&) const = default;
};

struct QualityQuery {
  std::vector<std::string> projection;
  std::string from = "G";
  std::optional<Predicate> selection;
  std::optional<GoalNode> goal;
  std::vector<OrderItem> order_by;
  std::optional<std::size_t> limit;

  // Filled by bind(): global column ids of `projection`, same order.
  std::vector<Id> projection_ids;

  bool operator==(const QualityQuery&) const = default;
};

// Syntax only. Throws ParseError ("line L, column C: ...") and UnknownFeature.
QualityQuery parse_query(std::string_view text);

// Resolves projected and predicate columns against the global schema.
// Throws UnknownColumn (unknown or ambiguous name), UnknownEntity (FROM does
// not name the global schema) and UnsupportedPredicate (WHERE spans global
// tables).
void bind_query(QualityQuery& query, const Catalog& catalog);

// parse_query + bind_query.
QualityQuery parse_query(std::string_view text, const Catalog& catalog);

// Canonical text; parse_query(unparse(q)) == q for the syntactic fields.
std::string unparse(const QualityQuery& query);

// --- qualitative terms ------------------------------------------------------

class TermTable {
 public:
  // Empty table.
  TermTable() = default;
  // high = 0.65 for every feature, medium = 0.40, low = 0.0.
  static TermTable defaults();

  void define(std::string_view term, double threshold);                   // all features
  void define(Feature feature, std::string_view term, double threshold);  // one feature
  std::optional<double> lookup(Feature feature, std::string_view term) const;

 private:
  std::map<std::string, double> any_feature_;
  std::map<std::pair<Feature, std::string>, double> per_feature_;
};

// Replaces each qualitative leaf by (feature, >=, threshold). Throws
// UnresolvedTerm for a term the table does not define.
GoalNode resolve_qualitative(const GoalNode& goal, const TermTable& terms);
void resolve_qualitative(QualityQuery& query, const TermTable& terms);

// --- classification -----------------------------------------------------------

enum class QueryKind { NoFeature, SingleFeature, MultiFeature };
enum class Connective { None, And, Or };
enum class ValueStyle { None, Quantitative, Qualitative, Mixed };

struct QueryClass {
  QueryKind kind = QueryKind::NoFeature;
  Connective connective = Connective::None;
  ValueStyle value_style = ValueStyle::None;
  bool operator==(const QueryClass&) const = default;
};

std::string_view query_kind_name(QueryKind kind) noexcept;
std::string_view connective_name(Connective c) noexcept;
std::string_view value_style_name(ValueStyle v) noexcept;

// Throws UnsupportedGoalShape when the goal mixes AND and OR.
QueryClass classify(const QualityQuery& query);

// Leaves of the goal in order of appearance.
std::vector<FeatureConstraint> goal_leaves(const GoalNode& goal);
// Distinct features of the goal in order of first appearance.
std::vector<Feature> goal_features(const GoalNode& goal);

// Evaluates a resolved goal. Throws UnresolvedTerm on a qualitative leaf.
bool satisfies(const GoalNode& goal, const QualityVector& vector);

}  // namespace qualint
