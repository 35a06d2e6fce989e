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

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qualint/planner.hpp"
#include "support.hpp"

namespace qualint::plan {
namespace {

const char* kProjection = "Select SName, SAddress, DOB, SupName, DName From G";

std::vector<Id> projection_of(const Catalog& c, const std::string& text) {
  return parse_query(text, c).projection_ids;
}

void expect_vector(const QualityVector& v, double f, double va, double a, double t) {
  EXPECT_DOUBLE_EQ(v.fact_completeness, f);
  EXPECT_DOUBLE_EQ(v.validity, va);
  EXPECT_DOUBLE_EQ(v.accuracy, a);
  EXPECT_DOUBLE_EQ(v.timeliness, t);
}

TEST(QueriedSources, ParticipationMatchesWorkedExample) {
  Catalog c = testing::assessed_university_catalog();
  auto sources = resolve_sources(c, projection_of(c, kProjection));
  ASSERT_EQ(sources.size(), 3u);
  auto columns = [](const QueriedSourceProfile& p) {
    std::vector<std::pair<Id, Id>> out;
    for (const auto& x : p.participation) out.push_back({x.column_id, x.gs_column_id});
    return out;
  };
  using P = std::vector<std::pair<Id, Id>>;
  EXPECT_EQ(columns(sources[0]), (P{{2, 9}}));
  EXPECT_EQ(columns(sources[1]), (P{{4, 2}, {5, 3}, {7, 5}, {9, 7}, {11, 9}}));
  EXPECT_EQ(columns(sources[2]), (P{{13, 2}, {14, 3}, {16, 5}, {18, 9}}));
}

TEST(QueriedSources, VectorsMatchWorkedExample) {
  Catalog c = testing::assessed_university_catalog();
  auto profiles = profile_query(c, projection_of(c, kProjection));
  ASSERT_EQ(profiles.size(), 3u);
  EXPECT_EQ(profiles[0].name, "DS1");
  expect_vector(profiles[0].vector, 0.20, 0.13, 0.13, 0.84);
  expect_vector(profiles[1].vector, 0.95, 0.95, 0.95, 0.92);
  expect_vector(profiles[2].vector, 0.68, 0.62, 0.62, 0.67);
}

TEST(QueriedSources, Errors) {
  Catalog fresh = testing::university_catalog();
  auto projection = projection_of(fresh, kProjection);
  EXPECT_QI_ERROR(profile_query(fresh, projection), ErrorCode::StaleAssessment);

  Catalog c;
  c.register_domain("D");
  c.load_schema_text("table,column,key,rule\nT,K,key,type:int\nT,V,,type:text\n");
  EXPECT_QI_ERROR(resolve_sources(c, std::vector<Id>{2}), ErrorCode::NoCandidateSources);
}

TEST(Alternatives, SubsetCountsAndOrder) {
  EXPECT_EQ(form_alternatives(1).size(), 1u);
  EXPECT_EQ(form_alternatives(3).size(), 7u);
  EXPECT_EQ(form_alternatives(4).size(), 15u);
  using S = std::vector<std::vector<std::size_t>>;
  EXPECT_EQ(form_alternatives(3), (S{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}));
  EXPECT_QI_ERROR(form_alternatives(0), ErrorCode::NoCandidateSources);

  PlanOptions small;
  small.max_sources = 3;
  EXPECT_QI_ERROR(form_alternatives(4, small), ErrorCode::TooManySources);
  EXPECT_EQ(form_alternatives(16).size(), 65535u);
  EXPECT_QI_ERROR(form_alternatives(17), ErrorCode::TooManySources);
}

TEST(Alternatives, AggregatedMetricsBeforeSecondPruning) {
  Catalog c = testing::assessed_university_catalog();
  auto alternatives = build_alternatives(profile_query(c, projection_of(c, kProjection)));
  ASSERT_EQ(alternatives.size(), 7u);
  EXPECT_EQ(alternatives[3].label, "Alternative4");
  EXPECT_EQ(alternatives[3].members, (std::vector<Id>{1, 2}));
  EXPECT_EQ(alternatives[6].members, (std::vector<Id>{1, 2, 3}));
  expect_vector(alternatives[1].vector, 0.95, 0.95, 0.95, 0.92);
  expect_vector(alternatives[2].vector, 0.68, 0.62, 0.62, 0.67);
  // Means of the stored source vectors; timeliness is the member maximum.
  expect_vector(alternatives[3].vector, 0.58, 0.54, 0.54, 0.92);
  expect_vector(alternatives[4].vector, 0.44, 0.38, 0.38, 0.84);
  expect_vector(alternatives[5].vector, 0.82, 0.79, 0.79, 0.92);
  expect_vector(alternatives[6].vector, 0.61, 0.57, 0.57, 0.92);
}

TEST(Pruning, SingleFeatureGoalKeepsTwoThreeSix) {
  Catalog c = testing::assessed_university_catalog();
  auto alternatives = build_alternatives(profile_query(c, projection_of(c, kProjection)));
  auto goal = parse_query("Select SName From G With AlternativeFactCompleteness ≥ 0.65").goal;
  auto qualified = prune(alternatives, goal);
  std::vector<std::string> labels;
  for (const auto& a : qualified) labels.push_back(a.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"Alternative2", "Alternative3", "Alternative6"}));
  expect_vector(qualified[2].vector, 0.82, 0.79, 0.79, 0.92);

  EXPECT_EQ(alternatives[0].pruning_stage, 1);
  EXPECT_EQ(alternatives[0].verdict, "pruned (fact 0.20 < 0.65)");
  EXPECT_EQ(alternatives[4].pruning_stage, 2);
  EXPECT_EQ(alternatives[4].verdict, "pruned (fact 0.44 < 0.65)");
  EXPECT_EQ(alternatives[1].verdict, "qualified");
  EXPECT_EQ(alternatives[1].pruning_stage, 0);
}

TEST(Pruning, NoGoalQualifiesEverything) {
  Catalog c = testing::assessed_university_catalog();
  auto alternatives = build_alternatives(profile_query(c, projection_of(c, kProjection)));
  EXPECT_EQ(prune(alternatives, std::nullopt).size(), 7u);
}

TEST(Pruning, UnsatisfiableMessages) {
  Catalog c = testing::assessed_university_catalog();
  auto alternatives = build_alternatives(profile_query(c, projection_of(c, kProjection)));
  auto and_goal = parse_query(
                      "Select SName From G With FactCompleteness ≥ 0.99 and Validity ≥ 0.99 and "
                      "Accuracy ≥ 0.99")
                      .goal;
  try {
    prune(alternatives, and_goal);
    ADD_FAILURE() << "expected UnsatisfiableGoal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsatisfiableGoal);
    EXPECT_NE(std::string(e.what()).find("together"), std::string::npos) << e.what();
  }
  for (const auto& a : alternatives) EXPECT_FALSE(a.qualified);

  auto or_goal = parse_query("Select SName From G With Validity ≥ 0.99 or Accuracy ≥ 0.99").goal;
  EXPECT_NE(unsatisfiable_message(*or_goal).find("any of these"), std::string::npos);
  auto single = parse_query("Select SName From G With Validity ≥ 0.99").goal;
  EXPECT_NE(unsatisfiable_message(*single).find("this data quality feature"), std::string::npos);
  EXPECT_QI_ERROR(prune(alternatives, single), ErrorCode::UnsatisfiableGoal);
}

TEST(Aggregation, SingletonIdentityAndEmpty) {
  QualityVector v{0.123456, 0.1, 0.05, 0.9};
  EXPECT_EQ(aggregate_alternative(std::vector<QualityVector>{v}), v);
  EXPECT_QI_ERROR(aggregate_alternative(std::vector<QualityVector>{}), ErrorCode::EmptyInput);
}

// --- properties ------------------------------------------------------------------

QualityVector random_vector(std::mt19937_64& rng, std::optional<int> digits) {
  std::uniform_real_distribution<double> u(0, 1);
  double f = u(rng), v = f * u(rng), a = v * u(rng);
  QualityVector out{f, v, a, u(rng)};
  return digits ? quantize(out, *digits) : out;
}

GoalNode random_goal(std::mt19937_64& rng) {
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  auto leaf = [&] {
    GoalNode g;
    g.leaf.feature = kAllFeatures[std::size_t(uni(0, 3))];
    g.leaf.comparator = static_cast<Comparator>(uni(0, 4));
    g.leaf.bound = uni(0, 100) / 100.0;
    return g;
  };
  int n = uni(1, 3);
  if (n == 1) return leaf();
  GoalNode node;
  node.kind = uni(0, 1) ? GoalNode::Kind::And : GoalNode::Kind::Or;
  for (int i = 0; i < n; ++i) node.children.push_back(leaf());
  return node;
}

std::vector<QueriedSourceProfile> random_profiles(std::mt19937_64& rng, std::size_t n) {
  std::vector<QueriedSourceProfile> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({Id(i + 1), "S" + std::to_string(i + 1), {}, random_vector(rng, 2)});
  return out;
}

TEST(PlannerProperty, PruningIsSoundAndFirstStageIsRedundant) {
  std::mt19937_64 rng(3);
  int unsatisfiable = 0;
  for (int instance = 0; instance < 400; ++instance) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    auto profiles = random_profiles(rng, n);
    auto alternatives = build_alternatives(profiles);
    ASSERT_EQ(alternatives.size(), (std::size_t{1} << n) - 1);
    GoalNode goal = random_goal(rng);

    std::vector<Alternative> qualified;
    try {
      qualified = prune(alternatives, goal);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::UnsatisfiableGoal);
      ++unsatisfiable;
    }
    // Second-stage-only semantics: qualified iff the stored vector passes.
    std::vector<std::string> expected;
    for (const auto& a : alternatives) {
      bool passes = satisfies(goal, a.vector);
      ASSERT_EQ(a.qualified, passes) << a.label;
      ASSERT_EQ(a.pruning_stage, passes ? 0 : (a.members.size() == 1 ? 1 : 2));
      if (passes) expected.push_back(a.label);
    }
    std::vector<std::string> got;
    for (const auto& a : qualified) got.push_back(a.label);
    ASSERT_EQ(got, expected);
  }
  EXPECT_GT(unsatisfiable, 0);
  EXPECT_LT(unsatisfiable, 400);
}

TEST(PlannerProperty, AggregationBounds) {
  std::mt19937_64 rng(4);
  for (int instance = 0; instance < 2000; ++instance) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<QualityVector> members;
    for (int i = 0; i < n; ++i) members.push_back(random_vector(rng, 2));
    for (std::optional<int> digits : {std::optional<int>(2), std::optional<int>()}) {
      PlanOptions options;
      options.stored_digits = digits;
      auto agg = aggregate_alternative(members, options);
      for (Feature f : kAllFeatures) {
        double lo = 1, hi = 0;
        for (const auto& m : members) {
          lo = std::min(lo, m.get(f));
          hi = std::max(hi, m.get(f));
        }
        // Two-decimal members keep a two-decimal mean inside [lo, hi].
        EXPECT_GE(agg.get(f), lo);
        EXPECT_LE(agg.get(f), hi);
      }
      bool some_member = std::any_of(members.begin(), members.end(), [&](const QualityVector& m) {
        return m.timeliness == agg.timeliness;
      });
      EXPECT_TRUE(some_member);
    }
  }
}

TEST(PlannerProperty, AddingALowerMemberLowersTheMean) {
  std::mt19937_64 rng(5);
  PlanOptions exact;
  exact.stored_digits = std::nullopt;
  for (int instance = 0; instance < 2000; ++instance) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<QualityVector> members;
    for (int i = 0; i < n; ++i) members.push_back(random_vector(rng, std::nullopt));
    auto before = aggregate_alternative(members, exact);
    QualityVector lower = random_vector(rng, std::nullopt);
    members.push_back(lower);
    auto after = aggregate_alternative(members, exact);
    for (Feature f : {Feature::FactCompleteness, Feature::Validity, Feature::Accuracy}) {
      if (lower.get(f) < before.get(f)) EXPECT_LT(after.get(f), before.get(f));
      else EXPECT_GE(after.get(f), before.get(f));
    }
  }
}

TEST(PlannerProperty, SingletonIdentity) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    auto v = random_vector(rng, std::nullopt);
    EXPECT_EQ(aggregate_alternative(std::vector<QualityVector>{v}), v);
    auto alternatives = build_alternatives(std::vector<QueriedSourceProfile>{{1, "S", {}, v}});
    EXPECT_EQ(alternatives.front().vector, v);
  }
}

}  // namespace
}  // namespace qualint::plan
