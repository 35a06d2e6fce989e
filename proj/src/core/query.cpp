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

#include "qualint/query.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "qualint/catalog.hpp"
#include "qualint/error.hpp"
#include "qualint/util.hpp"

namespace qualint {

std::string_view comparator_symbol(Comparator c) noexcept {
  switch (c) {
    case Comparator::Ge: return ">=";
    case Comparator::Gt: return ">";
    case Comparator::Eq: return "=";
    case Comparator::Le: return "<=";
    case Comparator::Lt: return "<";
    case Comparator::Ne: return "<>";
  }
  return "?";
}

bool compare(double lhs, Comparator c, double rhs) noexcept {
  switch (c) {
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Eq: return lhs == rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Ne: return lhs != rhs;
  }
  return false;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, String, Comma, Dot, LParen, RParen, Semicolon, Cmp, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Comparator cmp = Comparator::Eq;
  std::size_t line = 1, column = 1;
  bool quoted = false;  // quoted identifiers are never keywords
};

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& what) {
  fail(ErrorCode::ParseError,
       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;  // count code points, not bytes
      }
      ++i;
    }
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {  // comment
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    auto symbol = [&](Tok kind, std::size_t len, Comparator cmp = Comparator::Eq) {
      t.kind = kind;
      t.text = std::string(text.substr(i, len));
      t.cmp = cmp;
      advance(len);
      out.push_back(t);
    };
    auto rest = text.substr(i);
    if (rest.starts_with("\xE2\x89\xA5")) symbol(Tok::Cmp, 3, Comparator::Ge);       // ≥
    else if (rest.starts_with("\xE2\x89\xA4")) symbol(Tok::Cmp, 3, Comparator::Le);  // ≤
    else if (rest.starts_with("\xE2\x89\xA0")) symbol(Tok::Cmp, 3, Comparator::Ne);  // ≠
    else if (rest.starts_with(">=")) symbol(Tok::Cmp, 2, Comparator::Ge);
    else if (rest.starts_with("<=")) symbol(Tok::Cmp, 2, Comparator::Le);
    else if (rest.starts_with("<>") || rest.starts_with("!=")) symbol(Tok::Cmp, 2, Comparator::Ne);
    else if (c == '>') symbol(Tok::Cmp, 1, Comparator::Gt);
    else if (c == '<') symbol(Tok::Cmp, 1, Comparator::Lt);
    else if (c == '=') symbol(Tok::Cmp, 1, Comparator::Eq);
    else if (c == ',') symbol(Tok::Comma, 1);
    else if (c == '.' && !(i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))))
      symbol(Tok::Dot, 1);
    else if (c == '(') symbol(Tok::LParen, 1);
    else if (c == ')') symbol(Tok::RParen, 1);
    else if (c == ';') symbol(Tok::Semicolon, 1);
    else if (c == '\'') {
      advance(1);
      std::string value;
      while (true) {
        if (i >= text.size()) parse_error(t.line, t.column, "unterminated string literal");
        if (text[i] == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            value.push_back('\'');
            advance(2);
            continue;
          }
          advance(1);
          break;
        }
        value.push_back(text[i]);
        advance(1);
      }
      t.kind = Tok::String;
      t.text = std::move(value);
      out.push_back(t);
    } else if (std::isdigit(c) || c == '.' ||
               (c == '-' && i + 1 < text.size() &&
                (std::isdigit(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '.'))) {
      std::size_t j = i + (c == '-' ? 1 : 0);
      bool dot = false;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || (text[j] == '.' && !dot))) {
        if (text[j] == '.') dot = true;
        ++j;
      }
      // Optional exponent: e, sign, digits.
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      t.kind = Tok::Number;
      t.text = std::string(text.substr(i, j - i));
      if (!util::parse_double(t.text)) parse_error(t.line, t.column, "bad number '" + t.text + "'");
      advance(j - i);
      out.push_back(t);
    } else if (std::isalpha(c) || c == '_' || c == '"' || c == '`') {
      if (c == '"' || c == '`') {  // quoted identifier
        char close = static_cast<char>(c);
        std::size_t j = i + 1;
        while (j < text.size() && text[j] != close) ++j;
        if (j >= text.size()) parse_error(t.line, t.column, "unterminated quoted identifier");
        t.kind = Tok::Ident;
        t.quoted = true;
        t.text = std::string(text.substr(i + 1, j - i - 1));
        advance(j - i + 1);
      } else {
        std::size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          ++j;
        t.kind = Tok::Ident;
        t.text = std::string(text.substr(i, j - i));
        advance(j - i);
      }
      out.push_back(t);
    } else {
      parse_error(line, col, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
    }
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string> kReserved = {"select", "from",  "where", "with", "order", "by",
                                         "limit",  "and",   "or",    "not",  "is",    "null",
                                         "asc",    "desc"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  QualityQuery query() {
    QualityQuery q;
    expect_keyword("select");
    do {
      q.projection.push_back(column_name());
    } while (accept(Tok::Comma));
    expect_keyword("from");
    q.from = identifier("global schema name");
    if (accept_keyword("where")) q.selection = predicate();
    if (accept_keyword("with")) q.goal = goal();
    if (accept_keyword("order")) {
      expect_keyword("by");
      do {
        OrderItem item;
        item.feature = feature();
        if (accept_keyword("asc")) item.descending = false;
        else accept_keyword("desc");
        q.order_by.push_back(item);
      } while (accept(Tok::Comma));
    }
    if (accept_keyword("limit")) {
      const Token& t = peek();
      auto k = util::parse_int(t.text);
      if (t.kind != Tok::Number || !k || *k < 1)
        parse_error(t.line, t.column, "LIMIT expects a positive integer");
      q.limit = static_cast<std::size_t>(*k);
      ++pos_;
    }
    accept(Tok::Semicolon);
    if (peek().kind != Tok::End) unexpected("end of query");

    std::set<std::string> seen;
    for (const auto& c : q.projection)
      if (!seen.insert(util::to_lower(c)).second)
        parse_error(1, 1, "column '" + c + "' projected twice");
    return q;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool is_keyword(const Token& t, std::string_view kw) const {
    return t.kind == Tok::Ident && !t.quoted && util::iequals(t.text, kw);
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!is_keyword(peek(), kw)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void unexpected(std::string_view wanted) {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    parse_error(t.line, t.column, "expected " + std::string(wanted) + ", got " + got);
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) unexpected(util::to_lower(kw) == kw ? util::to_lower(kw) : kw);
  }
  std::string identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || (!t.quoted && kReserved.count(util::to_lower(t.text))))
      unexpected(what);
    ++pos_;
    return t.text;
  }
  std::string column_name() {
    std::string name = identifier("column name");
    if (accept(Tok::Dot)) name += "." + identifier("column name");
    return name;
  }
  Feature feature() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kReserved.count(util::to_lower(t.text))) unexpected("quality feature");
    auto f = feature_from_name(t.text);
    if (!f)
      fail(ErrorCode::UnknownFeature, "line " + std::to_string(t.line) + ", column " +
                                          std::to_string(t.column) + ": unknown quality feature '" +
                                          t.text + "'");
    ++pos_;
    return *f;
  }

  // --- WITH goal ---

  static GoalNode combine(GoalNode::Kind kind, std::vector<GoalNode> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    GoalNode node;
    node.kind = kind;
    for (auto& p : parts) {
      if (p.kind == kind) {
        for (auto& c : p.children) node.children.push_back(std::move(c));
      } else {
        node.children.push_back(std::move(p));
      }
    }
    return node;
  }

  GoalNode goal() {
    std::vector<GoalNode> parts{goal_and()};
    while (accept_keyword("or")) parts.push_back(goal_and());
    return combine(GoalNode::Kind::Or, std::move(parts));
  }
  GoalNode goal_and() {
    std::vector<GoalNode> parts{goal_atom()};
    while (accept_keyword("and")) parts.push_back(goal_atom());
    return combine(GoalNode::Kind::And, std::move(parts));
  }
  GoalNode goal_atom() {
    if (accept(Tok::LParen)) {
      GoalNode g = goal();
      if (!accept(Tok::RParen)) unexpected("')'");
      return g;
    }
    GoalNode leaf;
    leaf.leaf.feature = feature();
    const Token& t = peek();
    if (t.kind == Tok::Cmp) {
      ++pos_;
      if (t.cmp == Comparator::Ne) parse_error(t.line, t.column, "'<>' is not allowed in WITH");
      leaf.leaf.comparator = t.cmp;
      const Token& n = peek();
      if (n.kind != Tok::Number) unexpected("a number in [0,1]");
      double v = *util::parse_double(n.text);
      if (v < 0 || v > 1) parse_error(n.line, n.column, "quality bound must lie in [0,1]");
      leaf.leaf.bound = v;
      ++pos_;
      return leaf;
    }
    accept_keyword("is");
    leaf.leaf.comparator = Comparator::Ge;
    leaf.leaf.bound = util::to_lower(identifier("comparator or qualitative term"));
    return leaf;
  }

  // --- WHERE predicate ---

  static Predicate combine_pred(Predicate::Kind kind, std::vector<Predicate> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Predicate node;
    node.kind = kind;
    for (auto& p : parts) {
      if (p.kind == kind) {
        for (auto& c : p.children) node.children.push_back(std::move(c));
      } else {
        node.children.push_back(std::move(p));
      }
    }
    return node;
  }

  Predicate predicate() {
    std::vector<Predicate> parts{pred_and()};
    while (accept_keyword("or")) parts.push_back(pred_and());
    return combine_pred(Predicate::Kind::Or, std::move(parts));
  }
  Predicate pred_and() {
    std::vector<Predicate> parts{pred_not()};
    while (accept_keyword("and")) parts.push_back(pred_not());
    return combine_pred(Predicate::Kind::And, std::move(parts));
  }
  Predicate pred_not() {
    if (accept_keyword("not")) {
      Predicate p;
      p.kind = Predicate::Kind::Not;
      p.children.push_back(pred_not());
      return p;
    }
    if (accept(Tok::LParen)) {
      Predicate p = predicate();
      if (!accept(Tok::RParen)) unexpected("')'");
      return p;
    }
    Predicate p;
    p.column = column_name();
    if (accept_keyword("is")) {
      p.kind = accept_keyword("not") ? Predicate::Kind::IsNotNull : Predicate::Kind::IsNull;
      expect_keyword("null");
      return p;
    }
    const Token& t = peek();
    if (t.kind != Tok::Cmp) unexpected("comparison operator");
    p.comparator = t.cmp;
    ++pos_;
    const Token& v = peek();
    if (v.kind == Tok::Number) p.literal = Literal{v.text, true};
    else if (v.kind == Tok::String) p.literal = Literal{v.text, false};
    else unexpected("literal");
    ++pos_;
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void predicate_columns(const Predicate& p, std::vector<const std::string*>& out) {
  if (p.kind == Predicate::Kind::Compare || p.kind == Predicate::Kind::IsNull ||
      p.kind == Predicate::Kind::IsNotNull)
    out.push_back(&p.column);
  for (const auto& c : p.children) predicate_columns(c, out);
}

std::string quote_ident(const std::string& name) {
  bool plain = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) plain = false;
  if (plain && !kReserved.count(util::to_lower(name))) return name;
  return "\"" + name + "\"";
}

std::string quote_column(const std::string& name) {
  auto dot = name.find('.');
  if (dot == std::string::npos) return quote_ident(name);
  return quote_ident(name.substr(0, dot)) + "." + quote_ident(name.substr(dot + 1));
}

void unparse_goal(std::ostream& out, const GoalNode& g, bool nested) {
  if (g.kind == GoalNode::Kind::Leaf) {
    out << feature_title(g.leaf.feature);
    if (g.leaf.qualitative()) out << " IS " << std::get<std::string>(g.leaf.bound);
    else out << ' ' << comparator_symbol(g.leaf.comparator) << ' '
             << util::format_exact(std::get<double>(g.leaf.bound));
    return;
  }
  if (nested) out << '(';
  const char* sep = g.kind == GoalNode::Kind::And ? " AND " : " OR ";
  for (std::size_t i = 0; i < g.children.size(); ++i) {
    if (i) out << sep;
    unparse_goal(out, g.children[i], true);
  }
  if (nested) out << ')';
}

void unparse_predicate(std::ostream& out, const Predicate& p, bool nested) {
  switch (p.kind) {
    case Predicate::Kind::Compare:
      out << quote_column(p.column) << ' ' << comparator_symbol(p.comparator) << ' ';
      if (p.literal.is_number) {
        out << p.literal.text;
      } else {
        out << '\'';
        for (char c : p.literal.text) {
          if (c == '\'') out << '\'';
          out << c;
        }
        out << '\'';
      }
      return;
    case Predicate::Kind::IsNull:
      out << quote_column(p.column) << " IS NULL";
      return;
    case Predicate::Kind::IsNotNull:
      out << quote_column(p.column) << " IS NOT NULL";
      return;
    case Predicate::Kind::Not:
      out << "NOT ";
      unparse_predicate(out, p.children.front(), true);
      return;
    case Predicate::Kind::And:
    case Predicate::Kind::Or: {
      if (nested) out << '(';
      const char* sep = p.kind == Predicate::Kind::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        if (i) out << sep;
        unparse_predicate(out, p.children[i], true);
      }
      if (nested) out << ')';
      return;
    }
  }
}

}  // namespace

QualityQuery parse_query(std::string_view text) { return Parser(tokenize(text)).query(); }

void bind_query(QualityQuery& query, const Catalog& catalog) {
  if (!util::iequals(query.from, catalog.schema_name()))
    fail(ErrorCode::UnknownEntity, "FROM names '" + query.from + "', but the global schema is '" +
                                       catalog.schema_name() + "'");
  query.projection_ids.clear();
  for (const auto& name : query.projection) {
    auto id = catalog.find_global_column(name);
    if (!id) fail(ErrorCode::UnknownColumn, "unknown or ambiguous global column '" + name + "'");
    query.projection_ids.push_back(*id);
  }
  if (query.selection) {
    std::vector<const std::string*> names;
    predicate_columns(*query.selection, names);
    std::optional<Id> table;
    for (const auto* name : names) {
      auto id = catalog.find_global_column(*name);
      if (!id) fail(ErrorCode::UnknownColumn, "unknown or ambiguous global column '" + *name + "'");
      Id t = catalog.global_column(*id).gs_table_id;
      if (table && *table != t)
        fail(ErrorCode::UnsupportedPredicate, "WHERE may only reference one global table");
      table = t;
    }
  }
}

QualityQuery parse_query(std::string_view text, const Catalog& catalog) {
  QualityQuery q = parse_query(text);
  bind_query(q, catalog);
  return q;
}

std::string unparse(const QualityQuery& query) {
  std::ostringstream out;
  out << "SELECT ";
  for (std::size_t i = 0; i < query.projection.size(); ++i) {
    if (i) out << ", ";
    out << quote_column(query.projection[i]);
  }
  out << " FROM " << quote_ident(query.from);
  if (query.selection) {
    out << " WHERE ";
    unparse_predicate(out, *query.selection, false);
  }
  if (query.goal) {
    out << " WITH ";
    unparse_goal(out, *query.goal, false);
  }
  if (!query.order_by.empty()) {
    out << " ORDER BY ";
    for (std::size_t i = 0; i < query.order_by.size(); ++i) {
      if (i) out << ", ";
      out << feature_title(query.order_by[i].feature)
          << (query.order_by[i].descending ? " DESC" : " ASC");
    }
  }
  if (query.limit) out << " LIMIT " << *query.limit;
  return out.str();
}

// ---------------------------------------------------------------------------
// Terms

TermTable TermTable::defaults() {
  TermTable t;
  t.define("high", 0.65);
  t.define("medium", 0.40);
  t.define("low", 0.0);
  return t;
}

void TermTable::define(std::string_view term, double threshold) {
  if (threshold < 0 || threshold > 1)
    fail(ErrorCode::ConfigError, "term threshold must lie in [0,1]");
  any_feature_[util::to_lower(term)] = threshold;
}

void TermTable::define(Feature feature, std::string_view term, double threshold) {
  if (threshold < 0 || threshold > 1)
    fail(ErrorCode::ConfigError, "term threshold must lie in [0,1]");
  per_feature_[{feature, util::to_lower(term)}] = threshold;
}

std::optional<double> TermTable::lookup(Feature feature, std::string_view term) const {
  auto key = util::to_lower(term);
  if (auto it = per_feature_.find({feature, key}); it != per_feature_.end()) return it->second;
  if (auto it = any_feature_.find(key); it != any_feature_.end()) return it->second;
  return std::nullopt;
}

GoalNode resolve_qualitative(const GoalNode& goal, const TermTable& terms) {
  GoalNode out = goal;
  if (out.kind == GoalNode::Kind::Leaf) {
    if (out.leaf.qualitative()) {
      const auto& term = std::get<std::string>(out.leaf.bound);
      auto threshold = terms.lookup(out.leaf.feature, term);
      if (!threshold)
        fail(ErrorCode::UnresolvedTerm, "no threshold defined for '" + term + "' on " +
                                            std::string(feature_title(out.leaf.feature)) +
                                            " (use --define " + term + "=<value>)");
      out.leaf.comparator = Comparator::Ge;
      out.leaf.bound = *threshold;
    }
    return out;
  }
  for (auto& c : out.children) c = resolve_qualitative(c, terms);
  return out;
}

void resolve_qualitative(QualityQuery& query, const TermTable& terms) {
  if (query.goal) query.goal = resolve_qualitative(*query.goal, terms);
}

// ---------------------------------------------------------------------------
// Classification

std::string_view query_kind_name(QueryKind kind) noexcept {
  switch (kind) {
    case QueryKind::NoFeature: return "NoFeature";
    case QueryKind::SingleFeature: return "SingleFeature";
    case QueryKind::MultiFeature: return "MultiFeature";
  }
  return "";
}

std::string_view connective_name(Connective c) noexcept {
  switch (c) {
    case Connective::None: return "none";
    case Connective::And: return "AND";
    case Connective::Or: return "OR";
  }
  return "";
}

std::string_view value_style_name(ValueStyle v) noexcept {
  switch (v) {
    case ValueStyle::None: return "none";
    case ValueStyle::Quantitative: return "quantitative";
    case ValueStyle::Qualitative: return "qualitative";
    case ValueStyle::Mixed: return "mixed";
  }
  return "";
}

std::vector<FeatureConstraint> goal_leaves(const GoalNode& goal) {
  if (goal.kind == GoalNode::Kind::Leaf) return {goal.leaf};
  std::vector<FeatureConstraint> out;
  for (const auto& c : goal.children) {
    auto sub = goal_leaves(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<Feature> goal_features(const GoalNode& goal) {
  std::vector<Feature> out;
  for (const auto& leaf : goal_leaves(goal))
    if (std::find(out.begin(), out.end(), leaf.feature) == out.end()) out.push_back(leaf.feature);
  return out;
}

QueryClass classify(const QualityQuery& query) {
  QueryClass cls;
  if (!query.goal) return cls;
  const GoalNode& goal = *query.goal;
  if (goal.kind != GoalNode::Kind::Leaf) {
    for (const auto& c : goal.children)
      if (c.kind != GoalNode::Kind::Leaf)
        fail(ErrorCode::UnsupportedGoalShape,
             "quality goals mixing AND and OR are not supported");
    cls.connective = goal.kind == GoalNode::Kind::And ? Connective::And : Connective::Or;
  }
  auto leaves = goal_leaves(goal);
  cls.kind = leaves.size() == 1 ? QueryKind::SingleFeature : QueryKind::MultiFeature;
  bool quant = false, qual = false;
  for (const auto& l : leaves) (l.qualitative() ? qual : quant) = true;
  cls.value_style = quant && qual ? ValueStyle::Mixed
                    : qual        ? ValueStyle::Qualitative
                                  : ValueStyle::Quantitative;
  return cls;
}

bool satisfies(const GoalNode& goal, const QualityVector& vector) {
  switch (goal.kind) {
    case GoalNode::Kind::Leaf:
      if (goal.leaf.qualitative())
        fail(ErrorCode::UnresolvedTerm, "goal still holds qualitative term '" +
                                            std::get<std::string>(goal.leaf.bound) + "'");
      return compare(vector.get(goal.leaf.feature), goal.leaf.comparator,
                     std::get<double>(goal.leaf.bound));
    case GoalNode::Kind::And:
      return std::all_of(goal.children.begin(), goal.children.end(),
                         [&](const GoalNode& c) { return satisfies(c, vector); });
    case GoalNode::Kind::Or:
      return std::any_of(goal.children.begin(), goal.children.end(),
                         [&](const GoalNode& c) { return satisfies(c, vector); });
  }
  return false;
}

}  // namespace qualint
