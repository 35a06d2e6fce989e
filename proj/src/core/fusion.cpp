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

#include "qualint/fusion.hpp"

#include <algorithm>
#include <set>

#include "qualint/error.hpp"

namespace qualint::fuse {

std::vector<Cluster> match_duplicates(std::span<const MemberSet> members,
                                      std::span<const std::size_t> key_positions,
                                      std::span<const ValueType> key_types) {
  for (const auto& m : members)
    for (std::size_t p : key_positions)
      if (p >= m.supplies.size() || !m.supplies[p])
        fail(ErrorCode::MissingKey, "source " + std::to_string(m.source_id) +
                                        " does not supply key position " + std::to_string(p));
  std::vector<Cluster> clusters;
  std::map<std::vector<std::string>, std::size_t> index;
  for (std::size_t mi = 0; mi < members.size(); ++mi) {
    const auto& rows = members[mi].rows;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<std::string> key;
      bool null_key = false;
      for (std::size_t i = 0; i < key_positions.size(); ++i) {
        const auto& cell = rows[r][key_positions[i]];
        if (!cell) {
          null_key = true;
          break;
        }
        key.push_back(canonical_value(*cell, key_types[i]));
      }
      if (null_key) {
        clusters.push_back({{}, true, {{mi, r}}});
        continue;
      }
      auto [it, inserted] = index.emplace(key, clusters.size());
      if (inserted) clusters.push_back({std::move(key), false, {}});
      clusters[it->second].records.push_back({mi, r});
    }
  }
  return clusters;
}

namespace {

// True when quality a is preferred to quality b.
bool better_quality(const QualityVector& a, const QualityVector& b) {
  for (Feature f : kAllFeatures)
    if (a.get(f) != b.get(f)) return a.get(f) > b.get(f);
  return false;
}

}  // namespace

FusedTuple fuse_cluster(const Cluster& cluster, std::span<const MemberSet> members,
                        std::size_t width) {
  FusedTuple t;
  t.values.assign(width, std::nullopt);
  t.provenance.assign(width, std::nullopt);
  t.unmatched = cluster.unmatched;
  for (std::size_t j = 0; j < width; ++j) {
    const RecordRef* best = nullptr;
    for (const auto& ref : cluster.records) {
      const auto& m = members[ref.member];
      if (!m.supplies[j] || !m.rows[ref.row][j]) continue;
      if (!best) {
        best = &ref;
        continue;
      }
      const auto& b = members[best->member];
      QualityVector qa = m.quality[j].value_or(QualityVector{});
      QualityVector qb = b.quality[j].value_or(QualityVector{});
      bool take = better_quality(qa, qb) ||
                  (!better_quality(qb, qa) &&
                   std::tie(m.source_id, ref.row) < std::tie(b.source_id, best->row));
      if (take) best = &ref;
    }
    if (best) {
      t.values[j] = members[best->member].rows[best->row][j];
      t.provenance[j] = members[best->member].source_id;
    }
  }
  return t;
}

std::map<Id, assess::ColumnScores> reassess_relation(const Catalog& catalog,
                                                     const FusedRelation& relation) {
  const auto* reference = catalog.reference(relation.gs_table_id);
  if (!reference || reference->cardinality() == 0)
    fail(ErrorCode::EmptyReference, "no reference rows for global table '" +
                                        catalog.global_table(relation.gs_table_id).name + "'");
  auto reference_index = [&](Id gs_column_id) {
    const auto& name = catalog.global_column(gs_column_id).name;
    auto it = std::find(reference->columns.begin(), reference->columns.end(), name);
    return static_cast<std::size_t>(it - reference->columns.begin());
  };
  assess::KeySpec keys;
  for (std::size_t j = 0; j < relation.columns.size(); ++j) {
    const auto& gs = catalog.global_column(relation.columns[j]);
    if (!gs.is_key) continue;
    keys.source_columns.push_back(j);
    keys.reference_columns.push_back(reference_index(gs.gs_column_id));
    keys.types.push_back(gs.domain_rule.value_type());
  }
  std::vector<Row> rows;
  rows.reserve(relation.tuples.size());
  for (const auto& t : relation.tuples) rows.push_back(t.values);
  auto link = assess::link_by_key(rows, *reference, keys);

  std::map<Id, assess::ColumnScores> out;
  for (std::size_t j = 0; j < relation.columns.size(); ++j) {
    if (!relation.projected[j]) continue;
    const auto& gs = catalog.global_column(relation.columns[j]);
    out[gs.gs_column_id] = assess::assess_column(rows, j, link, *reference,
                                                 reference_index(gs.gs_column_id), gs.domain_rule);
  }
  return out;
}

FusedAlternative fuse_alternative(const Catalog& catalog, std::span<const Id> members,
                                  std::span<const Id> projection, std::string label,
                                  const FuseOptions& options, std::span<const Id> extra_columns) {
  FusedAlternative out;
  out.label = std::move(label);
  out.members.assign(members.begin(), members.end());
  std::sort(out.members.begin(), out.members.end());

  // gs table -> non-key columns wanted, in request order
  std::map<Id, std::vector<Id>> wanted;
  auto want = [&](Id gs) {
    const auto& col = catalog.global_column(gs);
    auto& list = wanted[col.gs_table_id];
    if (!col.is_key && std::find(list.begin(), list.end(), gs) == list.end()) list.push_back(gs);
  };
  for (Id gs : projection) want(gs);
  for (Id gs : extra_columns) want(gs);

  // (table, gs column) -> mapping
  std::map<std::pair<Id, Id>, const Mapping*> by_table;
  for (const auto& [id, m] : catalog.mappings())
    by_table[{catalog.column(m.column_id).table_id, m.gs_column_id}] = &m;

  double timeliness = 0;
  bool any_timeliness = false;
  std::map<Id, assess::ColumnScores> scores;

  for (const auto& [gs_table, others] : wanted) {
    FusedRelation rel;
    rel.gs_table_id = gs_table;
    std::vector<ValueType> key_types;
    std::vector<std::size_t> key_positions;
    for (Id key : catalog.global_columns_of(gs_table, true)) {
      key_positions.push_back(rel.columns.size());
      key_types.push_back(catalog.global_column(key).domain_rule.value_type());
      rel.columns.push_back(key);
    }
    for (Id gs : others) rel.columns.push_back(gs);
    for (Id gs : rel.columns)
      rel.projected.push_back(std::find(projection.begin(), projection.end(), gs) !=
                              projection.end());

    std::vector<MemberSet> sets;
    for (Id source : out.members) {
      for (const auto& [table_id, descriptor] : catalog.tables()) {
        if (descriptor.source_id != source) continue;
        // Only tables supplying a projected column of this global table.
        bool useful = false;
        for (std::size_t j = 0; j < rel.columns.size(); ++j)
          if (rel.projected[j] && by_table.count({table_id, rel.columns[j]})) useful = true;
        if (!useful) continue;

        MemberSet set;
        set.source_id = source;
        const auto& relation = catalog.relation(table_id);
        std::vector<std::optional<std::size_t>> position;
        for (Id gs : rel.columns) {
          auto it = by_table.find({table_id, gs});
          if (it == by_table.end()) {
            set.supplies.push_back(false);
            set.quality.push_back(std::nullopt);
            position.push_back(std::nullopt);
            continue;
          }
          const Mapping& m = *it->second;
          if (m.stale())
            fail(ErrorCode::StaleAssessment,
                 "mapping " + std::to_string(m.mapping_id) + " has not been assessed; run assess");
          const auto& name = catalog.column(m.column_id).name;
          auto col = std::find(relation.columns.begin(), relation.columns.end(), name);
          set.supplies.push_back(true);
          set.quality.push_back(m.profile->vector());
          position.push_back(static_cast<std::size_t>(col - relation.columns.begin()));
        }
        for (const auto& src : relation.rows) {
          Row row(rel.columns.size());
          for (std::size_t j = 0; j < row.size(); ++j)
            if (position[j]) row[j] = src[*position[j]];
          set.rows.push_back(std::move(row));
        }
        sets.push_back(std::move(set));
      }
    }
    if (sets.empty()) continue;  // no member supplies this table; its columns score 0

    for (const auto& cluster : match_duplicates(sets, key_positions, key_types))
      rel.tuples.push_back(fuse_cluster(cluster, sets, rel.columns.size()));

    std::set<Id> contributing;
    for (const auto& t : rel.tuples)
      for (std::size_t j = 0; j < t.provenance.size(); ++j)
        if (t.provenance[j] && rel.projected[j]) contributing.insert(*t.provenance[j]);
    rel.contributing_sources.assign(contributing.begin(), contributing.end());
    for (const auto& set : sets) {
      if (!contributing.count(set.source_id)) continue;
      for (std::size_t j = 0; j < set.quality.size(); ++j) {
        if (!set.quality[j] || !rel.projected[j]) continue;
        timeliness = std::max(timeliness, set.quality[j]->timeliness);
        any_timeliness = true;
      }
    }

    for (const auto& [gs, s] : reassess_relation(catalog, rel)) scores[gs] = s;
    out.relations.push_back(std::move(rel));
  }

  std::vector<double> fact, validity, accuracy;
  for (const auto& [gs, s] : scores) {
    fact.push_back(s.fact_completeness);
    validity.push_back(s.validity);
    accuracy.push_back(s.accuracy);
  }
  out.vector.fact_completeness = assess::scaled_aggregate(fact, projection.size());
  out.vector.validity = assess::scaled_aggregate(validity, projection.size());
  out.vector.accuracy = assess::scaled_aggregate(accuracy, projection.size());
  out.vector.timeliness = any_timeliness ? timeliness : 0.0;
  if (options.stored_digits) out.vector = quantize(out.vector, *options.stored_digits);
  return out;
}

Reranked reassess_and_rerank(const Catalog& catalog, std::span<const Id> projection,
                             std::span<const rank::RankedAnswer> top,
                             std::span<const Feature> features,
                             const rank::ScoringFunction& scoring, const FuseOptions& options) {
  Reranked out;
  std::vector<rank::RankedAnswer> answers(top.begin(), top.end());
  std::vector<rank::RankObject> objects;
  for (auto& a : answers) {
    if (a.members.size() > 1) {
      auto fused = fuse_alternative(catalog, a.members, projection, a.label, options);
      a.vector = fused.vector;
      out.fused.emplace(a.label, std::move(fused));
    }
    rank::RankObject o{a.label, a.members.size(), {}};
    for (Feature f : features) o.scores.push_back(a.vector.get(f));
    objects.push_back(std::move(o));
  }
  for (const auto& r : rank::brute_force_rank(objects, scoring, objects.size())) {
    auto a = answers[r.object];
    a.total_score = r.score;
    a.rank = out.ranking.size() + 1;
    out.ranking.push_back(std::move(a));
  }
  return out;
}

namespace {

std::optional<bool> evaluate(const Catalog& catalog, const Predicate& p,
                             const FusedRelation& relation, const FusedTuple& tuple) {
  using Kind = Predicate::Kind;
  switch (p.kind) {
    case Kind::Not: {
      auto v = evaluate(catalog, p.children.front(), relation, tuple);
      if (!v) return std::nullopt;
      return !*v;
    }
    case Kind::And:
    case Kind::Or: {
      bool is_and = p.kind == Kind::And;
      bool unknown = false;
      for (const auto& c : p.children) {
        auto v = evaluate(catalog, c, relation, tuple);
        if (!v) unknown = true;
        else if (*v != is_and) return !is_and;
      }
      if (unknown) return std::nullopt;
      return is_and;
    }
    default:
      break;
  }
  auto id = catalog.find_global_column(p.column);
  if (!id) fail(ErrorCode::UnknownColumn, "unknown global column '" + p.column + "'");
  auto pos = std::find(relation.columns.begin(), relation.columns.end(), *id);
  if (pos == relation.columns.end())
    fail(ErrorCode::UnsupportedPredicate,
         "column '" + p.column + "' is not part of global table '" +
             catalog.global_table(relation.gs_table_id).name + "'");
  const Cell& cell = tuple.values[static_cast<std::size_t>(pos - relation.columns.begin())];
  if (p.kind == Kind::IsNull) return !cell.has_value();
  if (p.kind == Kind::IsNotNull) return cell.has_value();
  if (!cell) return std::nullopt;

  auto type = catalog.global_column(*id).domain_rule.value_type();
  if (type == ValueType::Date) {
    auto a = util::parse_date(*cell);
    auto b = util::parse_date(p.literal.text);
    if (!a || !b) return std::nullopt;
    double d = static_cast<double>(util::days_between(*b, *a));
    return compare(d, p.comparator, 0.0);
  }
  if (p.literal.is_number || type == ValueType::Int || type == ValueType::Real) {
    auto a = util::parse_double(*cell);
    auto b = util::parse_double(p.literal.text);
    if (a && b) return compare(*a, p.comparator, *b);
    if (p.literal.is_number) return std::nullopt;
  }
  int c = cell->compare(p.literal.text);
  return compare(static_cast<double>(c), p.comparator, 0.0);
}

}  // namespace

bool matches(const Catalog& catalog, const Predicate& predicate, const FusedRelation& relation,
             const FusedTuple& tuple) {
  return evaluate(catalog, predicate, relation, tuple).value_or(false);
}

}  // namespace qualint::fuse
