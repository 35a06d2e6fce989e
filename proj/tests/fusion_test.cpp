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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "qualint/fusion.hpp"
#include "support.hpp"

namespace qualint::fuse {
namespace {

const util::Date kDelivery = *util::parse_date("21/1/2016");

// T(K int key, A text, B real in [0,4]) with a four-row reference.
Catalog small_catalog() {
  Catalog c;
  c.register_domain("D");
  c.load_schema_text(
      "table,column,key,rule\n"
      "T,K,key,type:int\n"
      "T,A,,type:text\n"
      "T,B,,\"type:real;range:[0,4]\"\n");
  c.load_reference_text("K,A,B\n1,a1,1.0\n2,a2,2.0\n3,a3,3.0\n4,a4,4.0\n",
                        *c.find_global_table("T"));
  return c;
}

Id add_source(Catalog& c, const std::string& name, const std::string& inserted,
              const std::string& csv) {
  Id s = c.register_source({0, name, 1});
  Id t = c.load_relation_text(csv, {0, "T", *util::parse_date(inserted), 100, s}, {});
  for (const auto& col : c.relation(t).columns)
    c.upsert_mapping(*c.find_column(t, col), *c.find_global_column(col));
  return s;
}

void assess(Catalog& c) { c.store_profiles(assess::assess_mapping_table(c, kDelivery)); }

std::vector<Id> projection(const Catalog& c) {
  return {*c.find_global_column("A"), *c.find_global_column("B")};
}

// S1 is older and weaker on A; S2 is better on both columns.
Catalog hand_fixture(Id* s1, Id* s2) {
  Catalog c = small_catalog();
  *s1 = add_source(c, "S1", "1/1/2016", "K,A,B\n1,a1,1.0\n2,,2.0\n3,a3,9.0\n");
  *s2 = add_source(c, "S2", "11/1/2016", "K,A,B\n2,a2,2.5\n4,x4,4.0\n3,a3,3.0\n");
  assess(c);
  return c;
}

TEST(Fusion, HandComputedFixture) {
  Id s1, s2;
  Catalog c = hand_fixture(&s1, &s2);
  auto fused = fuse_alternative(c, std::vector<Id>{s2, s1}, projection(c), "Alternative3");
  EXPECT_EQ(fused.label, "Alternative3");
  EXPECT_EQ(fused.members, (std::vector<Id>{s1, s2}));
  ASSERT_EQ(fused.relations.size(), 1u);
  const auto& rel = fused.relations[0];
  EXPECT_EQ(rel.columns, (std::vector<Id>{1, 2, 3}));
  EXPECT_EQ(rel.projected, (std::vector<bool>{false, true, true}));
  ASSERT_EQ(rel.tuples.size(), 4u);

  using P = std::vector<std::optional<Id>>;
  EXPECT_EQ(rel.tuples[0].values, (Row{"1", "a1", "1.0"}));
  EXPECT_EQ(rel.tuples[0].provenance, (P{s1, s1, s1}));
  EXPECT_EQ(rel.tuples[1].values, (Row{"2", "a2", "2.5"}));
  EXPECT_EQ(rel.tuples[1].provenance[1], s2);
  EXPECT_EQ(rel.tuples[1].provenance[2], s2);
  EXPECT_EQ(rel.tuples[2].values, (Row{"3", "a3", "3.0"}));
  EXPECT_EQ(rel.tuples[3].values, (Row{"4", "x4", "4.0"}));
  EXPECT_EQ(rel.contributing_sources, (std::vector<Id>{s1, s2}));

  // A: complete, valid, a1..a3 accurate. B: complete, valid, 2.5 wrong.
  EXPECT_DOUBLE_EQ(fused.vector.fact_completeness, 1.0);
  EXPECT_DOUBLE_EQ(fused.vector.validity, 1.0);
  EXPECT_DOUBLE_EQ(fused.vector.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(fused.vector.timeliness, 0.9);  // S2, 10 days of 100

  auto scores = reassess_relation(c, rel);
  EXPECT_DOUBLE_EQ(scores.at(2).accuracy, 0.75);
  EXPECT_DOUBLE_EQ(scores.at(3).accuracy, 0.75);
  EXPECT_EQ(scores.count(1), 0u);
}

TEST(Fusion, SingleMemberAndMissingColumn) {
  Catalog c = small_catalog();
  Id s = add_source(c, "S", "1/1/2016", "K,A\n1,a1\n2,a2\n");
  assess(c);
  auto fused = fuse_alternative(c, std::vector<Id>{s}, projection(c));
  // A covers half the reference; B is not supplied and scores 0.
  EXPECT_DOUBLE_EQ(fused.vector.fact_completeness, 0.25);
  EXPECT_DOUBLE_EQ(fused.vector.timeliness, 0.8);
}

TEST(Fusion, StaleMappingIsReported) {
  Catalog c = small_catalog();
  Id s = add_source(c, "S", "1/1/2016", "K,A\n1,a1\n");
  EXPECT_QI_ERROR(fuse_alternative(c, std::vector<Id>{s}, projection(c)),
                  ErrorCode::StaleAssessment);
}

TEST(Matching, WorkedExampleStudentsFormFourClusters) {
  Catalog c = testing::assessed_university_catalog();
  auto name = std::vector<Id>{*c.find_global_column("SName")};
  auto fused = fuse_alternative(c, std::vector<Id>{2, 3}, name);
  ASSERT_EQ(fused.relations.size(), 1u);
  const auto& rel = fused.relations[0];
  ASSERT_EQ(rel.tuples.size(), 4u);
  // DS3 names are complete, so every name comes from DS3.
  const char* names[] = {"Ahmed", "Karim", "Amr", "Ali"};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rel.tuples[i].values[1], names[i]);
    EXPECT_EQ(rel.tuples[i].provenance[1], Id{3});
  }
  EXPECT_DOUBLE_EQ(fused.vector.fact_completeness, 1.0);
}

TEST(Matching, ClustersByKeyInOrderOfFirstAppearance) {
  std::vector<MemberSet> members(2);
  members[0] = {1, {{"2", "x"}, {std::nullopt, "y"}, {"1", "z"}}, {true, true}, {}};
  members[1] = {2, {{"01", "p"}, {"3", "q"}, {std::nullopt, "r"}}, {true, true}, {}};
  for (auto& m : members) m.quality.assign(2, std::nullopt);
  std::vector<std::size_t> keys = {0};
  std::vector<ValueType> types = {ValueType::Int};
  auto clusters = match_duplicates(members, keys, types);
  ASSERT_EQ(clusters.size(), 5u);
  EXPECT_EQ(clusters[0].key, (std::vector<std::string>{"2"}));
  EXPECT_TRUE(clusters[1].unmatched);
  EXPECT_EQ(clusters[2].records, (std::vector<RecordRef>{{0, 2}, {1, 0}}));
  EXPECT_EQ(clusters[3].key, (std::vector<std::string>{"3"}));
  EXPECT_TRUE(clusters[4].unmatched);

  members[1].supplies[0] = false;
  EXPECT_QI_ERROR(match_duplicates(members, keys, types), ErrorCode::MissingKey);
}

TEST(FuseCluster, BestQualityThenSourceIdThenRow) {
  QualityVector good{0.9, 0.9, 0.9, 0.5}, better_time{0.9, 0.9, 0.9, 0.6};
  std::vector<MemberSet> members(2);
  members[0] = {5, {{"1", "a", std::nullopt}, {"1", "b", "x"}}, {true, true, true},
                {good, good, good}};
  members[1] = {3, {{"1", "c", "y"}}, {true, true, true}, {good, better_time, good}};
  Cluster cluster{{"1"}, false, {{0, 0}, {0, 1}, {1, 0}}};
  auto t = fuse_cluster(cluster, members, 3);
  // Position 1: timeliness breaks the tie. Position 2: equal quality, lower source id.
  EXPECT_EQ(t.values, (Row{"1", "c", "y"}));
  EXPECT_EQ(t.provenance, (std::vector<std::optional<Id>>{3, 3, 3}));

  members[1].supplies[1] = false;
  members[1].supplies[2] = false;
  t = fuse_cluster(cluster, members, 3);
  // Same source and quality: the earlier row wins; a null is skipped.
  EXPECT_EQ(t.values, (Row{"1", "a", "x"}));
  EXPECT_EQ(t.provenance, (std::vector<std::optional<Id>>{3, 5, 5}));

  Cluster empty_field{{"9"}, false, {{0, 0}}};
  members[1].supplies.assign(3, true);
  t = fuse_cluster(empty_field, members, 3);
  EXPECT_EQ(t.values[2], std::nullopt);
  EXPECT_EQ(t.provenance[2], std::nullopt);
}

TEST(Rerank, FusedVectorsReorderTheTop) {
  Catalog c = testing::assessed_university_catalog();
  auto proj = parse_query("Select SName, SAddress, DOB, SupName, DName From G", c).projection_ids;
  std::vector<rank::RankedAnswer> top = {
      {1, "Alternative2", {2}, {0.95, 0.95, 0.95, 0.92}, 0.95},
      {2, "Alternative6", {2, 3}, {0.82, 0.79, 0.79, 0.92}, 0.82},
      {3, "Alternative3", {3}, {0.68, 0.62, 0.62, 0.67}, 0.68}};
  std::vector<Feature> features = {Feature::FactCompleteness};
  auto out = reassess_and_rerank(c, proj, top, features, rank::ScoringFunction::sum());
  ASSERT_EQ(out.ranking.size(), 3u);
  EXPECT_EQ(out.ranking[0].label, "Alternative6");
  EXPECT_DOUBLE_EQ(out.ranking[0].total_score, 1.0);
  EXPECT_EQ(out.ranking[0].rank, 1u);
  EXPECT_EQ(out.ranking[1].label, "Alternative2");
  EXPECT_EQ(out.ranking[2].label, "Alternative3");
  EXPECT_EQ(out.fused.size(), 1u);
  EXPECT_EQ(out.fused.count("Alternative6"), 1u);
}

TEST(Where, ThreeValuedEvaluation) {
  Id s1, s2;
  Catalog c = hand_fixture(&s1, &s2);
  auto fused = fuse_alternative(c, std::vector<Id>{s1, s2}, projection(c));
  const auto& rel = fused.relations[0];
  auto count = [&](const std::string& where) {
    auto q = parse_query("Select A From G Where " + where, c);
    int n = 0;
    for (const auto& t : rel.tuples) n += matches(c, *q.selection, rel, t);
    return n;
  };
  EXPECT_EQ(count("B >= 3"), 2);
  EXPECT_EQ(count("B > 2.25 and A <> 'x4'"), 2);
  EXPECT_EQ(count("not B >= 3"), 2);
  EXPECT_EQ(count("K = 1 or A = 'x4'"), 2);
  EXPECT_EQ(count("A is null"), 0);
  EXPECT_EQ(count("A is not null"), 4);
  EXPECT_EQ(count("A < 'a3'"), 2);

  FusedTuple with_null = rel.tuples[0];
  with_null.values[2] = std::nullopt;
  auto q = parse_query("Select A From G Where B > 0 or not B > 0", c);
  EXPECT_FALSE(matches(c, *q.selection, rel, with_null));  // unknown counts as false
}

// --- properties on generated two-source instances -----------------------------------

std::string random_csv(std::mt19937_64& rng, int n, bool with_b) {
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  std::string csv = with_b ? "K,A,B\n" : "K,A\n";
  int rows = uni(0, n + 3);
  for (int r = 0; r < rows; ++r) {
    int k = uni(0, 9);
    csv += k == 0 ? "" : std::to_string(uni(1, n + 2));
    int a = uni(0, 4);
    csv += "," + (a == 0 ? std::string() : (a == 1 ? "w" : "a") + std::to_string(uni(1, n)));
    if (with_b) {
      int b = uni(0, 5);
      csv += "," + (b == 0 ? std::string() : std::to_string(uni(0, 5)) + ".0");
    }
    csv += "\n";
  }
  return csv;
}

Catalog random_pair(std::mt19937_64& rng, Id* s1, Id* s2) {
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  int n = uni(1, 12);
  Catalog c;
  c.register_domain("D");
  c.load_schema_text(
      "table,column,key,rule\nT,K,key,type:int\nT,A,,type:text\n"
      "T,B,,\"type:real;range:[0,4]\"\n");
  std::string ref = "K,A,B\n";
  for (int k = 1; k <= n; ++k)
    ref += std::to_string(k) + ",a" + std::to_string(k) + "," + std::to_string(uni(0, 4)) + ".0\n";
  c.load_reference_text(ref, *c.find_global_table("T"));
  auto day = [&] { return std::to_string(uni(1, 20)) + "/1/2016"; };
  *s1 = add_source(c, "S1", day(), random_csv(rng, n, uni(0, 3) != 0));
  *s2 = add_source(c, "S2", day(), random_csv(rng, n, uni(0, 3) != 0));
  assess(c);
  return c;
}

TEST(FusionProperty, CoverageProvenanceDeterminism) {
  std::mt19937_64 rng(77);
  FuseOptions exact;
  exact.stored_digits = std::nullopt;
  plan::PlanOptions plan_exact;
  plan_exact.stored_digits = std::nullopt;
  for (int instance = 0; instance < 300; ++instance) {
    Id s1, s2;
    Catalog c = random_pair(rng, &s1, &s2);
    auto proj = projection(c);
    SCOPED_TRACE("instance " + std::to_string(instance));

    auto fused = fuse_alternative(c, std::vector<Id>{s1, s2}, proj, "", exact);
    EXPECT_EQ(fuse_alternative(c, std::vector<Id>{s2, s1}, proj, "", exact), fused);

    // Coverage: the union is at least as complete as either source alone.
    for (const auto& p : plan::profile_query(c, proj, plan_exact))
      EXPECT_GE(fused.vector.fact_completeness, p.vector.fact_completeness - 1e-12);

    // Provenance: one member per non-null value, and the value is that
    // member's value for the cluster key.
    for (const auto& rel : fused.relations) {
      for (const auto& t : rel.tuples) {
        for (std::size_t j = 0; j < t.values.size(); ++j) {
          ASSERT_EQ(t.values[j].has_value(), t.provenance[j].has_value());
          if (!t.values[j]) continue;
          Id source = *t.provenance[j];
          ASSERT_TRUE(source == s1 || source == s2);
          const auto& table = *std::find_if(c.tables().begin(), c.tables().end(),
                                            [&](const auto& e) { return e.second.source_id == source; });
          const auto& relation = c.relation(table.first);
          auto col = std::find(relation.columns.begin(), relation.columns.end(),
                               c.global_column(rel.columns[j]).name);
          ASSERT_NE(col, relation.columns.end());
          std::size_t at = std::size_t(col - relation.columns.begin());
          bool found = std::any_of(relation.rows.begin(), relation.rows.end(), [&](const Row& r) {
            bool same_key = t.unmatched ? !r[0].has_value()
                                        : r[0] && canonical_value(*r[0], ValueType::Int) ==
                                                      canonical_value(*t.values[0], ValueType::Int);
            return same_key && r[at] == t.values[j];
          });
          EXPECT_TRUE(found);
        }
      }
    }
  }
}

}  // namespace
}  // namespace qualint::fuse
