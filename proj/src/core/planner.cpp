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

#include "qualint/planner.hpp"

#include <algorithm>
#include <map>

#include "qualint/assessor.hpp"
#include "qualint/error.hpp"

namespace qualint::plan {

namespace {

QualityVector maybe_quantize(const QualityVector& v, const PlanOptions& options) {
  return options.stored_digits ? quantize(v, *options.stored_digits) : v;
}

std::string_view negated_symbol(Comparator c) {
  switch (c) {
    case Comparator::Ge: return "<";
    case Comparator::Gt: return "<=";
    case Comparator::Eq: return "!=";
    case Comparator::Le: return ">";
    case Comparator::Lt: return ">=";
    case Comparator::Ne: return "=";
  }
  return "?";
}

// Failing leaves of a resolved goal, "fact 0.44 < 0.65; validity ...".
std::string failures(const GoalNode& goal, const QualityVector& v, int digits) {
  std::string out;
  for (const auto& leaf : goal_leaves(goal)) {
    double bound = std::get<double>(leaf.bound);
    double value = v.get(leaf.feature);
    if (compare(value, leaf.comparator, bound)) continue;
    if (!out.empty()) out += "; ";
    out += std::string(feature_short(leaf.feature)) + " " + util::format_fixed(value, digits) +
           " " + std::string(negated_symbol(leaf.comparator)) + " " +
           util::format_exact(bound);
  }
  return out;
}

}  // namespace

std::vector<QueriedSourceProfile> resolve_sources(const Catalog& catalog,
                                                  std::span<const Id> projection) {
  // source -> gs column -> first (lowest column id) participating column
  std::map<Id, std::map<Id, Participation>> by_source;
  for (const auto& [id, m] : catalog.mappings()) {
    if (std::find(projection.begin(), projection.end(), m.gs_column_id) == projection.end())
      continue;
    const auto& column = catalog.column(m.column_id);
    Id source = catalog.table(column.table_id).source_id;
    auto& slot = by_source[source];
    auto it = slot.find(m.gs_column_id);
    if (it == slot.end() || m.column_id < it->second.column_id)
      slot[m.gs_column_id] = Participation{m.gs_column_id, m.column_id, m.mapping_id,
                                           column.table_id};
  }
  if (by_source.empty()) {
    std::string names;
    for (Id gs : projection) {
      if (!names.empty()) names += ", ";
      names += catalog.global_column(gs).name;
    }
    fail(ErrorCode::NoCandidateSources, "no registered source maps any of: " + names);
  }
  std::vector<QueriedSourceProfile> out;
  for (const auto& [source, columns] : by_source) {
    QueriedSourceProfile p;
    p.source_id = source;
    p.name = catalog.source(source).name;
    for (Id gs : projection)
      if (auto it = columns.find(gs); it != columns.end()) p.participation.push_back(it->second);
    out.push_back(std::move(p));
  }
  return out;
}

QualityVector profile_queried_source(const Catalog& catalog, const QueriedSourceProfile& profile,
                                     std::size_t total_attributes, const PlanOptions& options) {
  std::vector<double> fact, validity, accuracy, timeliness;
  for (const auto& part : profile.participation) {
    const auto& mapping = catalog.mappings().at(part.mapping_id);
    if (mapping.stale())
      fail(ErrorCode::StaleAssessment,
           "mapping " + std::to_string(mapping.mapping_id) + " (" + profile.name + "." +
               catalog.column(part.column_id).name + " -> " +
               catalog.global_column(part.gs_column_id).name +
               ") has not been assessed since it last changed; run assess");
    const auto& p = *mapping.profile;
    fact.push_back(p.fact_completeness);
    validity.push_back(p.validity);
    accuracy.push_back(p.accuracy);
    timeliness.push_back(p.timeliness);
  }
  QualityVector v;
  v.fact_completeness = assess::scaled_aggregate(fact, total_attributes);
  v.validity = assess::scaled_aggregate(validity, total_attributes);
  v.accuracy = assess::scaled_aggregate(accuracy, total_attributes);
  v.timeliness = assess::max_aggregate(timeliness);
  return maybe_quantize(v, options);
}

std::vector<QueriedSourceProfile> profile_query(const Catalog& catalog,
                                                std::span<const Id> projection,
                                                const PlanOptions& options) {
  auto profiles = resolve_sources(catalog, projection);
  for (auto& p : profiles)
    p.vector = profile_queried_source(catalog, p, projection.size(), options);
  return profiles;
}

std::vector<std::vector<std::size_t>> form_alternatives(std::size_t n, const PlanOptions& options) {
  if (n == 0) fail(ErrorCode::NoCandidateSources, "no queried sources to combine");
  if (n > options.max_sources)
    fail(ErrorCode::TooManySources,
         std::to_string(n) + " queried sources would form 2^" + std::to_string(n) +
             " - 1 alternatives; the limit is " + std::to_string(options.max_sources) +
             " sources (raise max_sources in the configuration)");
  std::vector<std::vector<std::size_t>> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::size_t size = 1; size <= n; ++size) {
    // lexicographic k-combinations
    std::vector<std::size_t> c(size);
    for (std::size_t i = 0; i < size; ++i) c[i] = i;
    while (true) {
      out.push_back(c);
      std::size_t i = size;
      while (i > 0 && c[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < size; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return out;
}

QualityVector aggregate_alternative(std::span<const QualityVector> members,
                                    const PlanOptions& options) {
  if (members.empty()) fail(ErrorCode::EmptyInput, "alternative without members");
  if (members.size() == 1) return members.front();
  QualityVector v;
  double n = static_cast<double>(members.size());
  for (const auto& m : members) {
    v.fact_completeness += m.fact_completeness;
    v.validity += m.validity;
    v.accuracy += m.accuracy;
    v.timeliness = std::max(v.timeliness, m.timeliness);
  }
  v.fact_completeness /= n;
  v.validity /= n;
  v.accuracy /= n;
  return maybe_quantize(v, options);
}

std::vector<Alternative> build_alternatives(std::span<const QueriedSourceProfile> profiles,
                                            const PlanOptions& options) {
  std::vector<Alternative> out;
  std::size_t number = 0;
  for (const auto& subset : form_alternatives(profiles.size(), options)) {
    Alternative a;
    a.number = ++number;
    a.label = "Alternative" + std::to_string(a.number);
    std::vector<QualityVector> vectors;
    for (std::size_t i : subset) {
      a.members.push_back(profiles[i].source_id);
      vectors.push_back(profiles[i].vector);
    }
    a.vector = aggregate_alternative(vectors, options);
    out.push_back(std::move(a));
  }
  return out;
}

std::string unsatisfiable_message(const GoalNode& goal) {
  switch (goal.kind) {
    case GoalNode::Kind::Or:
      return "the required level of quality for query answering can't be satisfied by any of "
             "these data quality features";
    case GoalNode::Kind::And:
      return "the required level of quality for query answering can't be satisfied with these "
             "data quality features together";
    case GoalNode::Kind::Leaf:
      break;
  }
  return "the required level of quality for query answering can't be satisfied with this data "
         "quality feature";
}

std::vector<Alternative> prune(std::vector<Alternative>& alternatives,
                               const std::optional<GoalNode>& goal, const PlanOptions& options) {
  std::vector<Alternative> kept;
  // Both stages apply the same predicate; singletons (first pruning) are
  // judged before any combination (second pruning).
  for (int stage : {1, 2}) {
    for (auto& a : alternatives) {
      bool singleton = a.members.size() == 1;
      if (singleton != (stage == 1)) continue;
      if (!goal || satisfies(*goal, a.vector)) {
        a.qualified = true;
        a.pruning_stage = 0;
        a.verdict = "qualified";
      } else {
        a.qualified = false;
        a.pruning_stage = stage;
        a.verdict = "pruned (" + failures(*goal, a.vector, options.display_digits) + ")";
      }
    }
  }
  for (const auto& a : alternatives)
    if (a.qualified) kept.push_back(a);
  if (kept.empty() && goal) fail(ErrorCode::UnsatisfiableGoal, unsatisfiable_message(*goal));
  return kept;
}

}  // namespace qualint::plan
