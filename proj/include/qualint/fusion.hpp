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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qualint/assessor.hpp"
#include "qualint/catalog.hpp"
#include "qualint/planner.hpp"
#include "qualint/query.hpp"
#include "qualint/ranker.hpp"

namespace qualint::fuse {

// Rows one member source contributes to a global table. Cells are aligned
// with the fused column list; `supplies[j]` is false where the member has no
// column for position j (those cells are null).
struct MemberSet {
  Id source_id = 0;
  std::vector<Row> rows;
  std::vector<bool> supplies;
  // Field quality per position (the source column's profile vector).
  std::vector<std::optional<QualityVector>> quality;
};

struct RecordRef {
  std::size_t member = 0;  // index into the member sets
  std::size_t row = 0;
  bool operator==(const RecordRef&) const = default;
};

struct Cluster {
  std::vector<std::string> key;  // canonical key values; empty when unmatched
  bool unmatched = false;        // null key: kept as its own cluster
  std::vector<RecordRef> records;
  bool operator==(const Cluster&) const = default;
};

// Exact key equality over the union of member rows, clusters in order of
// first appearance. Throws MissingKey when a member lacks a key position.
std::vector<Cluster> match_duplicates(std::span<const MemberSet> members,
                                      std::span<const std::size_t> key_positions,
                                      std::span<const ValueType> key_types);

struct FusedTuple {
  Row values;
  std::vector<std::optional<Id>> provenance;  // source of each non-null value
  bool unmatched = false;
  bool operator==(const FusedTuple&) const = default;
};

// Per field, the non-null value from the member whose column quality is
// highest (fact, then validity, accuracy, timeliness; then lower source id,
// then earlier row).
FusedTuple fuse_cluster(const Cluster& cluster, std::span<const MemberSet> members,
                        std::size_t width);

struct FusedRelation {
  Id gs_table_id = 0;
  std::vector<Id> columns;     // key columns first, then the others, gs ids
  std::vector<bool> projected;  // per column: part of the query projection
  std::vector<FusedTuple> tuples;
  std::vector<Id> contributing_sources;  // sources named in the provenance
  bool operator==(const FusedRelation&) const = default;
};

struct FusedAlternative {
  std::string label;
  std::vector<Id> members;
  std::vector<FusedRelation> relations;  // one per global table, gs id order
  QualityVector vector;                  // re-assessed
  bool operator==(const FusedAlternative&) const = default;
};

struct FuseOptions {
  std::optional<int> stored_digits = 2;
};

// Retrieves member tuples for every global table of the projection, clusters,
// fuses, and re-assesses the fused relations with the assessor: column scores
// summed over the projection and divided by M; timeliness the maximum over
// the contributing source columns. A single member is "fused" trivially.
// `extra_columns` are fetched and fused (e.g. for WHERE) but not assessed.
FusedAlternative fuse_alternative(const Catalog& catalog, std::span<const Id> members,
                                  std::span<const Id> projection, std::string label = {},
                                  const FuseOptions& options = {},
                                  std::span<const Id> extra_columns = {});

// Re-assesses one fused relation's projected columns against the reference.
// Returns gs column id -> scores. Throws EmptyReference.
std::map<Id, assess::ColumnScores> reassess_relation(const Catalog& catalog,
                                                     const FusedRelation& relation);

struct Reranked {
  std::vector<rank::RankedAnswer> ranking;
  std::map<std::string, FusedAlternative> fused;  // by label, multi-member only
};

// Fuses every multi-member answer, keeps single-member vectors, then re-ranks
// the same answers by `scoring` over `features` with the shared tie rule.
Reranked reassess_and_rerank(const Catalog& catalog, std::span<const Id> projection,
                             std::span<const rank::RankedAnswer> top,
                             std::span<const Feature> features,
                             const rank::ScoringFunction& scoring,
                             const FuseOptions& options = {});

// Three-valued WHERE evaluation on one fused tuple; unknown counts as false.
// Column names resolve against the relation's columns.
bool matches(const Catalog& catalog, const Predicate& predicate, const FusedRelation& relation,
             const FusedTuple& tuple);

}  // namespace qualint::fuse
