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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qualint/catalog.hpp"
#include "qualint/query.hpp"

namespace qualint::plan {

struct PlanOptions {
  // Refuse to enumerate subsets of more queried sources than this.
  std::size_t max_sources = 16;
  // Per-query vectors are stored rounded to this many decimals, as the
  // metric tables are. std::nullopt keeps full precision.
  std::optional<int> stored_digits = 2;
  // Decimals shown in pruning verdicts.
  int display_digits = 2;
};

// A source column able to supply one projected global column.
struct Participation {
  Id gs_column_id = 0;
  Id column_id = 0;
  Id mapping_id = 0;
  Id table_id = 0;
  bool operator==(const Participation&) const = default;
};

struct QueriedSourceProfile {
  Id source_id = 0;
  std::string name;
  std::vector<Participation> participation;  // in projection order
  QualityVector vector;
  bool operator==(const QueriedSourceProfile&) const = default;
};

// One profile per source with at least one mapping onto the projection,
// ordered by source id. Vectors are left zero.
// Throws NoCandidateSources.
std::vector<QueriedSourceProfile> resolve_sources(const Catalog& catalog,
                                                  std::span<const Id> projection);

// fact/validity/accuracy: scaled_aggregate over the participating columns
// with divisor M; timeliness: max over them. Throws StaleAssessment when a
// participating mapping has no stored profile.
QualityVector profile_queried_source(const Catalog& catalog, const QueriedSourceProfile& profile,
                                     std::size_t total_attributes, const PlanOptions& options = {});

// resolve_sources + profile_queried_source for each.
std::vector<QueriedSourceProfile> profile_query(const Catalog& catalog,
                                                std::span<const Id> projection,
                                                const PlanOptions& options = {});

// All non-empty subsets of {0..n-1}, by size and then lexicographically.
// Throws TooManySources when n exceeds options.max_sources.
std::vector<std::vector<std::size_t>> form_alternatives(std::size_t n,
                                                        const PlanOptions& options = {});

// Mean of fact, validity and accuracy; max of timeliness.
QualityVector aggregate_alternative(std::span<const QualityVector> members,
                                    const PlanOptions& options = {});

struct Alternative {
  std::size_t number = 0;   // 1-based enumeration position
  std::string label;        // "Alternative{number}"
  std::vector<Id> members;  // source ids, ascending
  QualityVector vector;
  bool qualified = true;
  int pruning_stage = 0;    // 0 kept, 1 first pruning (singleton), 2 second pruning
  std::string verdict;      // "qualified" or "pruned (fact 0.44 < 0.65)"
  bool operator==(const Alternative&) const = default;
};

// form_alternatives + aggregate_alternative over the profiles (which must be
// ordered by source id).
std::vector<Alternative> build_alternatives(std::span<const QueriedSourceProfile> profiles,
                                            const PlanOptions& options = {});

// Marks every alternative qualified or pruned and returns the qualified ones
// in enumeration order. With no goal every alternative qualifies. The goal
// must be resolved. Throws UnsatisfiableGoal when nothing qualifies.
std::vector<Alternative> prune(std::vector<Alternative>& alternatives,
                               const std::optional<GoalNode>& goal,
                               const PlanOptions& options = {});

// Message carried by UnsatisfiableGoal for a goal.
std::string unsatisfiable_message(const GoalNode& goal);

}  // namespace qualint::plan
