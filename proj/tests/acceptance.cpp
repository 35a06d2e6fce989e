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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. The oracles here are written against the
// public API only and do not share code with the unit tests.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qualint/assessor.hpp"
#include "qualint/engine.hpp"
#include "qualint/fusion.hpp"
#include "qualint/planner.hpp"
#include "qualint/ranker.hpp"
#include "support.hpp"

namespace qualint {
namespace {

// Collects failures for one criterion; keeps the first few messages.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ < 3) messages_.push_back(what);
    ++failures_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want;
    expect(std::fabs(got - want) <= tol, s.str());
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string out;
    for (const auto& m : messages_) out += (out.empty() ? "" : "; ") + m;
    if (failures_ > messages_.size())
      out += " (+" + std::to_string(failures_ - messages_.size()) + " more)";
    return out;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

constexpr double kTol = 0.005;

Config example_config() {
  Config c;
  c.apply_file(testing::fixture("qualint.conf"));
  return c;
}

Catalog assessed(const Config& config) {
  Catalog c = testing::university_catalog();
  run_assess(c, config);
  return c;
}

void expect_vector(Check& check, const QualityVector& v, const QualityVector& want,
                   const std::string& what) {
  check.near(v.fact_completeness, want.fact_completeness, kTol, what + " fact");
  check.near(v.validity, want.validity, kTol, what + " validity");
  check.near(v.accuracy, want.accuracy, kTol, what + " accuracy");
  check.near(v.timeliness, want.timeliness, kTol, what + " timeliness");
}

std::string member_names(const Catalog& c, const std::vector<Id>& members) {
  std::string out;
  for (Id m : members) out += (out.empty() ? "" : "+") + c.source(m).name;
  return out;
}

const char* kQ1 = "Select SName, SAddress, DOB, SupName, DName From G";
const char* kQ2 =
    "Select SName, SAddress, DOB, SupName, DName From G "
    "With AlternativeFactCompleteness ≥ 0.65 Order by AlternativeFactCompleteness desc Limit 3";
const char* kQ3 = "Select SName, SAddress, DOB, SupName From G Limit 3";
const char* kCase2 =
    "Select SName, SAddress, DOB, SupName, DName From G With "
    "AlternativeFactCompleteness ≥ 0.99 and AlternativeValidity ≥ 0.99 and "
    "AlternativeAccuracy ≥ 0.99";

// --- golden checks on the worked example ------------------------------------------------

void column_profiles(Check& check) {
  struct Row {
    Id column, gs;
    double pop, inc, fact, validity, accuracy, timeliness;
  };
  const Row expected[] = {
      {3, 1, 1, 0, 1, 1, 1, 0.92},           {12, 1, 1, 0, 1, 1, 1, 0.67},
      {4, 2, 1, 0.25, 0.75, 0.75, 0.75, 0.92}, {13, 2, 1, 0, 1, 1, 1, 0.67},
      {5, 3, 1, 0, 1, 1, 1, 0.92},           {14, 3, 1, 0.25, 0.75, 0.75, 0.75, 0.67},
      {6, 4, 1, 0, 1, 1, 0.75, 0.92},        {15, 4, 1, 0, 1, 1, 1, 0.67},
      {7, 5, 1, 0, 1, 1, 1, 0.92},           {16, 5, 1, 0, 1, 1, 1, 0.67},
      {8, 6, 1, 0, 1, 1, 1, 0.92},           {9, 7, 1, 0, 1, 1, 1, 0.92},
      {1, 8, 1, 0, 1, 1, 1, 0.84},           {10, 8, 1, 0, 1, 1, 1, 0.92},
      {17, 8, 1, 0, 1, 1, 1, 0.67},          {2, 9, 1, 0, 1, 0.67, 0.67, 0.84},
      {11, 9, 1, 0, 1, 1, 1, 0.92},          {18, 9, 1, 0.33, 0.67, 0.33, 0.33, 0.67},
  };
  Catalog c = testing::university_catalog();
  auto outcome = run_assess(c, example_config());
  check.expect(outcome.profiles.size() == std::size(expected),
               "expected 18 profiles, got " + std::to_string(outcome.profiles.size()));
  for (const auto& e : expected) {
    auto p = std::find_if(outcome.profiles.begin(), outcome.profiles.end(),
                          [&](const ColumnProfile& x) { return x.column_id == e.column; });
    std::string what = "column " + std::to_string(e.column);
    if (p == outcome.profiles.end()) {
      check.expect(false, what + " missing");
      continue;
    }
    check.expect(p->gs_column_id == e.gs, what + " maps to the wrong global column");
    check.near(testing::round2(p->population_completeness), e.pop, kTol, what + " pop");
    check.near(testing::round2(p->incompleteness), e.inc, kTol, what + " inc");
    check.near(testing::round2(p->fact_completeness), e.fact, kTol, what + " fact");
    check.near(testing::round2(p->validity), e.validity, kTol, what + " validity");
    check.near(testing::round2(p->accuracy), e.accuracy, kTol, what + " accuracy");
    check.near(testing::round2(p->timeliness), e.timeliness, kTol, what + " timeliness");
  }
}

void per_query_vectors(Check& check) {
  Config config = example_config();
  Catalog c = assessed(config);
  auto out = run_query(c, kQ1, config);
  check.expect(out.sources.size() == 3, "expected three queried sources");
  if (out.sources.size() != 3) return;
  expect_vector(check, out.sources[0].vector, {0.20, 0.13, 0.13, 0.84}, "DS1");
  expect_vector(check, out.sources[1].vector, {0.95, 0.95, 0.95, 0.92}, "DS2");
  expect_vector(check, out.sources[2].vector, {0.68, 0.62, 0.62, 0.67}, "DS3");
}

void alternatives_and_pruning(Check& check) {
  Config config = example_config();
  Catalog c = assessed(config);
  auto out = run_query(c, kQ2, config);
  check.expect(out.alternatives.size() == 7, "expected seven alternatives");
  if (out.alternatives.size() != 7) return;
  check.near(out.alternatives[3].vector.fact_completeness, 0.58, kTol, "Alternative4 fact");
  check.near(out.alternatives[4].vector.fact_completeness, 0.44, kTol, "Alternative5 fact");
  expect_vector(check, out.alternatives[5].vector, {0.82, 0.79, 0.79, 0.92}, "Alternative6");
  check.near(out.alternatives[6].vector.fact_completeness, 0.61, kTol, "Alternative7 fact");

  std::set<std::string> qualified;
  for (const auto& a : out.qualified) qualified.insert(member_names(c, a.members));
  check.expect(qualified == std::set<std::string>{"DS2", "DS3", "DS2+DS3"},
               "qualified set is not {DS2, DS3, DS2+DS3}");
  check.expect(out.alternatives[0].pruning_stage == 1, "Alternative1 not pruned at stage one");
  for (std::size_t i : {3, 4, 6})
    check.expect(out.alternatives[i].pruning_stage == 2,
                 out.alternatives[i].label + " not pruned at stage two");
}

void no_feature_rankings(Check& check) {
  Config config = example_config();
  Catalog c = assessed(config);
  auto out = run_query(c, kQ3, config);
  check.expect(out.cls.kind == QueryKind::NoFeature, "not classified as no-feature");
  check.expect(out.rankings.size() == 4, "expected four rankings");
  if (out.rankings.size() != 4) return;
  const std::vector<std::string> order = {"Alternative1", "Alternative3", "Alternative2"};
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<std::string> got;
    for (const auto& r : out.rankings[i].ranking) got.push_back(r.label);
    check.expect(got == order, "ranking " + std::to_string(i + 1) + " has the wrong order");
  }
  const auto& t = out.rankings[3].ranking;
  if (t.size() == 3)
    check.expect(t[0].vector.timeliness == t[1].vector.timeliness,
                 "timeliness tie between Alternative1 and Alternative3 not present");
}

void single_feature_and_ta(Check& check) {
  Config config = example_config();
  Catalog c = assessed(config);
  auto out = run_query(c, kQ2, config);
  check.expect(out.rankings.size() == 1, "expected one ranking");
  if (out.rankings.size() != 1) return;
  const auto& r = out.rankings[0].ranking;
  const double facts[] = {0.95, 0.82, 0.68};
  check.expect(r.size() == 3, "single-feature ranking has " + std::to_string(r.size()) + " rows");
  for (std::size_t i = 0; i < std::min<std::size_t>(3, r.size()); ++i)
    check.near(r[i].vector.fact_completeness, facts[i], kTol, "rank " + std::to_string(i + 1));

  // TA over the qualified alternatives with F = sum of fact, validity, accuracy.
  const std::vector<Feature> features = {Feature::FactCompleteness, Feature::Validity,
                                         Feature::Accuracy};
  auto ta = rank::rank_multi_feature(out.qualified, features, rank::ScoringFunction::sum(), 3);
  const double totals[] = {2.85, 2.40, 1.92};
  check.expect(ta.ranking.size() == 3, "TA returned " + std::to_string(ta.ranking.size()));
  for (std::size_t i = 0; i < std::min<std::size_t>(3, ta.ranking.size()); ++i)
    check.near(ta.ranking[i].total_score, totals[i], kTol, "TA rank " + std::to_string(i + 1));
  check.expect(ta.trace.size() >= 2, "TA trace shorter than two checks");
  if (ta.trace.size() < 2) return;
  check.expect(ta.trace[0].top.size() == 1, "A_k after the first check is not a singleton");
  check.expect(ta.trace[1].top.size() == 2, "A_k after the second check does not hold two");
  if (ta.trace[0].top.size() == 1) check.near(ta.trace[0].top[0].score, 2.85, kTol, "A_1");
  if (ta.trace[1].top.size() == 2) {
    check.near(ta.trace[1].top[0].score, 2.85, kTol, "A_2 first");
    check.near(ta.trace[1].top[1].score, 2.40, kTol, "A_2 second");
  }
}

int run_shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void unsatisfiable_goal(Check& check) {
  const std::string message =
      "the required level of quality for query answering can't be satisfied with these data "
      "quality features together";
  Config config = example_config();
  Catalog c = assessed(config);
  auto out = run_query(c, kCase2, config);
  check.expect(out.unsatisfiable && *out.unsatisfiable == message,
               "engine did not report the unsatisfiable-goal message");
  check.expect(out.rankings.empty() && !out.answer, "rankings produced for an unsatisfiable goal");

  // The same query through the command line exits with 3.
  testing::TempDir dir("acceptance");
  c.save((dir.path() / "cat.qic").string());
  auto err = dir.path() / "stderr.txt";
  std::string cmd = std::string("'") + QUALINT_CLI + "' query -c '" +
                    (dir.path() / "cat.qic").string() + "' --config '" +
                    testing::fixture("qualint.conf") + "' -q \"" + kCase2 + "\" >/dev/null 2>'" +
                    err.string() + "'";
  int code = run_shell(cmd);
  check.expect(code == 3, "CLI exit code " + std::to_string(code) + ", want 3");
  std::ifstream in(err);
  std::string line;
  std::getline(in, line);
  check.expect(line == "error: UnsatisfiableGoal: " + message, "CLI stderr was '" + line + "'");
}

// --- property checks ---------------------------------------------------------------------

// Reference top-k: score everything and sort by the documented tie rule.
std::vector<std::pair<std::size_t, double>> oracle_top_k(const std::vector<rank::RankObject>& objects,
                                                         const rank::ScoringFunction& f,
                                                         std::size_t k) {
  std::vector<std::pair<std::size_t, double>> all;
  for (std::size_t i = 0; i < objects.size(); ++i) all.push_back({i, f(objects[i].scores)});
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (objects[a.first].member_count != objects[b.first].member_count)
      return objects[a.first].member_count < objects[b.first].member_count;
    return objects[a.first].label < objects[b.first].label;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

void ta_matches_oracle(Check& check) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::size_t> size(1, 1000), lists(1, 4), kk(1, 25), members(1, 5);
  int instances = 0;
  for (int instance = 0; instance < 210; ++instance) {
    std::size_t n = instance < 20 ? 1000 : size(rng);
    std::size_t m = instance < 20 ? 4 : lists(rng);
    std::vector<rank::RankObject> objects;
    for (std::size_t i = 0; i < n; ++i) {
      rank::RankObject o{"Alternative" + std::to_string(i + 1), members(rng), {}};
      for (std::size_t j = 0; j < m; ++j) o.scores.push_back(std::round(u(rng) * 1e6) / 1e6);
      objects.push_back(std::move(o));
    }
    std::vector<rank::FeatureList> feature_lists;
    for (std::size_t j = 0; j < m; ++j) feature_lists.push_back(rank::make_list(objects, j));
    std::vector<double> w;
    for (std::size_t j = 0; j < m; ++j) w.push_back(0.25 + double(j));
    std::size_t k = std::min(kk(rng), n);
    for (const auto& f : {rank::ScoringFunction::sum(), rank::ScoringFunction::min(),
                          rank::ScoringFunction::weighted(w)}) {
      auto ta = rank::ta_rank(objects, feature_lists, f, k);
      auto want = oracle_top_k(objects, f, k);
      bool same = ta.ranking.size() == want.size();
      for (std::size_t i = 0; same && i < want.size(); ++i)
        same = ta.ranking[i].object == want[i].first && ta.ranking[i].score == want[i].second;
      check.expect(same, "instance " + std::to_string(instance) + " " + f.name() + " differs");
    }
    ++instances;
  }
  check.expect(instances >= 200, "fewer than 200 instances");
}

void metric_invariants(Check& check) {
  std::mt19937_64 rng(8080);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  auto rule = DomainRule::parse("type:int;range:[0,9]");
  assess::KeySpec keys{{0}, {0}, {ValueType::Int}};
  int columns = 0;
  for (int instance = 0; instance < 1200; ++instance) {
    int n = uni(1, 30);
    ReferenceRelation reference{1, {"K", "V"}, {}};
    for (int k = 0; k < n; ++k)
      reference.rows.push_back({std::to_string(k), Cell{std::to_string(uni(-1, 10))}});
    std::vector<Row> rows;
    for (int r = uni(0, 40); r > 0; --r) {
      Cell key = uni(0, 19) ? Cell{std::to_string(uni(0, n + 5))} : Cell{};
      int kind = uni(0, 6);
      Cell value = kind == 0 ? Cell{} : kind == 1 ? Cell{"x"} : Cell{std::to_string(uni(-3, 12))};
      rows.push_back({key, value});
    }
    auto link = assess::link_by_key(rows, reference, keys);
    auto s = assess::assess_column(rows, 1, link, reference, 1, rule);
    std::string what = "column " + std::to_string(instance);
    for (double v : {s.population_completeness, s.incompleteness, s.fact_completeness, s.validity,
                     s.accuracy})
      check.expect(v >= 0 && v <= 1, what + " out of [0,1]");
    std::vector<Cell> represented;
    for (const auto& idx : link.source_row)
      if (idx) represented.push_back(rows[*idx][1]);
    if (!represented.empty())
      check.near(assess::null_completeness(represented) + assess::null_ratio(represented), 1.0,
                 1e-12, what + " complement");
    check.expect(s.fact_completeness == s.population_completeness - s.incompleteness,
                 what + " fact != pop - inc");
    check.expect(s.fact_completeness >= s.validity && s.validity >= s.accuracy,
                 what + " ordering fact >= validity >= accuracy broken");
    ++columns;
  }
  check.expect(columns >= 1000, "fewer than 1000 columns");

  using namespace std::chrono;
  for (int i = 0; i < 1000; ++i) {
    sys_days input{days(uni(12000, 19000))};
    sys_days delivery = input + days(uni(0, 700));
    sys_days later = delivery + days(uni(1, 300));
    double vol = uni(1, 800);
    for (auto mode : {assess::AgeMode::ExactDays, assess::AgeMode::Months30}) {
      double a = assess::timeliness({year_month_day(input), year_month_day(delivery), vol, mode});
      double b = assess::timeliness({year_month_day(input), year_month_day(later), vol, mode});
      check.expect(a >= 0 && a <= 1 && b <= a, "timeliness not bounded and non-increasing");
    }
  }
}

bool oracle_satisfies(const GoalNode& g, const QualityVector& v) {
  if (g.kind == GoalNode::Kind::Leaf) {
    double x = v.get(g.leaf.feature), b = std::get<double>(g.leaf.bound);
    switch (g.leaf.comparator) {
      case Comparator::Ge: return x >= b;
      case Comparator::Gt: return x > b;
      case Comparator::Eq: return x == b;
      case Comparator::Le: return x <= b;
      case Comparator::Lt: return x < b;
      case Comparator::Ne: return x != b;
    }
    return false;
  }
  bool all = true, any = false;
  for (const auto& c : g.children) {
    bool s = oracle_satisfies(c, v);
    all = all && s;
    any = any || s;
  }
  return g.kind == GoalNode::Kind::And ? all : any;
}

void pruning_soundness(Check& check) {
  std::mt19937_64 rng(4242);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  auto draw = [&] { return uni(0, 100) / 100.0; };
  int checked = 0;
  for (int instance = 0; instance < 300; ++instance) {
    std::size_t n = std::size_t(uni(1, 10));
    std::vector<plan::QueriedSourceProfile> profiles;
    for (std::size_t i = 0; i < n; ++i) {
      double f = draw(), v = f * uni(0, 100) / 100.0, a = v * uni(0, 100) / 100.0;
      profiles.push_back({Id(i + 1), "S" + std::to_string(i + 1), {},
                          quantize({f, v, a, draw()}, 2)});
    }
    GoalNode goal;
    int leaves = uni(1, 3);
    auto leaf = [&] {
      GoalNode g;
      g.leaf.feature = kAllFeatures[std::size_t(uni(0, 3))];
      g.leaf.comparator = static_cast<Comparator>(uni(0, 5));
      g.leaf.bound = draw();
      return g;
    };
    if (leaves == 1) {
      goal = leaf();
    } else {
      goal.kind = uni(0, 1) ? GoalNode::Kind::And : GoalNode::Kind::Or;
      for (int i = 0; i < leaves; ++i) goal.children.push_back(leaf());
    }

    auto alternatives = plan::build_alternatives(profiles);
    std::vector<plan::Alternative> qualified;
    bool unsatisfiable = false;
    try {
      qualified = plan::prune(alternatives, goal);
    } catch (const Error& e) {
      unsatisfiable = e.code() == ErrorCode::UnsatisfiableGoal;
      check.expect(unsatisfiable, "prune threw " + std::string(e.what()));
    }

    // Every nonempty subset appears once; recompute its vector independently.
    std::string what = "instance " + std::to_string(instance);
    check.expect(alternatives.size() == (std::size_t{1} << n) - 1, what + " lattice incomplete");
    std::set<std::vector<Id>> seen;
    std::set<std::vector<Id>> second_only;
    for (const auto& a : alternatives) {
      seen.insert(a.members);
      double f = 0, v = 0, acc = 0, t = 0;
      for (Id m : a.members) {
        const auto& p = profiles[std::size_t(m - 1)].vector;
        f += p.fact_completeness;
        v += p.validity;
        acc += p.accuracy;
        t = std::max(t, p.timeliness);
      }
      double k = double(a.members.size());
      QualityVector mean{f / k, v / k, acc / k, t};
      check.near(a.vector.fact_completeness, mean.fact_completeness, kTol + 1e-9, what + " mean");
      check.near(a.vector.validity, mean.validity, kTol + 1e-9, what + " mean");
      check.near(a.vector.accuracy, mean.accuracy, kTol + 1e-9, what + " mean");
      check.expect(a.vector.timeliness == mean.timeliness, what + " timeliness is not the max");

      bool passes = oracle_satisfies(goal, a.vector);
      if (passes) second_only.insert(a.members);
      // Stage one only ever removes singletons; stage two the rest.
      int stage = passes ? 0 : (a.members.size() == 1 ? 1 : 2);
      check.expect(a.pruning_stage == stage, what + " " + a.label + " pruned at the wrong stage");
      check.expect(a.qualified == passes, what + " " + a.label + " verdict disagrees");
    }
    check.expect(seen.size() == alternatives.size(), what + " duplicate subsets");
    std::set<std::vector<Id>> got, failed_singletons;
    for (const auto& a : qualified) got.insert(a.members);
    for (const auto& a : alternatives)
      if (a.pruning_stage == 1) failed_singletons.insert(a.members);
    // Staged result: drop failing singletons, then apply the goal to every
    // remaining subset, including supersets of dropped singletons.
    std::set<std::vector<Id>> staged;
    for (const auto& a : alternatives)
      if (!failed_singletons.count(a.members) && oracle_satisfies(goal, a.vector))
        staged.insert(a.members);
    check.expect(got == second_only, what + " qualified set differs from second-only pruning");
    check.expect(staged == second_only, what + " staged pruning differs from second-only");
    check.expect(unsatisfiable == second_only.empty(), what + " unsatisfiable flag wrong");
    ++checked;
  }
  check.expect(checked >= 200, "fewer than 200 instances");
}

// Two-source catalog over T(K key, A text, B real in [0,4]).
Catalog two_source_catalog(const std::string& reference, const std::string& s1_csv,
                           const std::string& s1_date, const std::string& s2_csv,
                           const std::string& s2_date, const util::Date& delivery) {
  Catalog c;
  c.register_domain("D");
  c.load_schema_text(
      "table,column,key,rule\nT,K,key,type:int\nT,A,,type:text\n"
      "T,B,,\"type:real;range:[0,4]\"\n");
  c.load_reference_text(reference, *c.find_global_table("T"));
  auto add = [&](const std::string& name, const std::string& date, const std::string& csv) {
    Id s = c.register_source({0, name, 1});
    Id t = c.load_relation_text(csv, {0, "T", *util::parse_date(date), 100, s}, {});
    for (const auto& col : c.relation(t).columns)
      c.upsert_mapping(*c.find_column(t, col), *c.find_global_column(col));
  };
  add("S1", s1_date, s1_csv);
  add("S2", s2_date, s2_csv);
  c.store_profiles(assess::assess_mapping_table(c, delivery));
  return c;
}

void fusion_properties(Check& check) {
  // Hand-fused fixture. Tuples after fusion: (1,a1,1.0) (2,a2,2.5) (3,a3,3.0)
  // (4,x4,4.0). A: 4 of 4 filled, valid; a1..a3 accurate, x4 not. B: all
  // filled and valid; 2.5 is wrong. Fact (1+1)/2, validity 1, accuracy
  // (0.75+0.75)/2. Timeliness from S2: 10 days of 100.
  const auto delivery = *util::parse_date("21/1/2016");
  Catalog hand = two_source_catalog("K,A,B\n1,a1,1.0\n2,a2,2.0\n3,a3,3.0\n4,a4,4.0\n",
                                    "K,A,B\n1,a1,1.0\n2,,2.0\n3,a3,9.0\n", "1/1/2016",
                                    "K,A,B\n2,a2,2.5\n4,x4,4.0\n3,a3,3.0\n", "11/1/2016", delivery);
  std::vector<Id> proj = {*hand.find_global_column("A"), *hand.find_global_column("B")};
  auto fused = fuse::fuse_alternative(hand, std::vector<Id>{1, 2}, proj, "Alternative3");
  expect_vector(check, fused.vector, {1.0, 1.0, 0.75, 0.9}, "hand fixture");

  std::mt19937_64 rng(31337);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  auto csv = [&](int n) {
    std::string out = "K,A,B\n";
    for (int r = uni(0, n + 2); r > 0; --r) {
      out += uni(0, 8) ? std::to_string(uni(1, n + 2)) : "";
      int a = uni(0, 3);
      out += "," + (a == 0 ? std::string() : (a == 1 ? "z" : "a") + std::to_string(uni(1, n)));
      int b = uni(0, 4);
      out += "," + (b == 0 ? std::string() : std::to_string(uni(0, 5)) + ".0") + "\n";
    }
    return out;
  };
  fuse::FuseOptions exact;
  exact.stored_digits = std::nullopt;
  plan::PlanOptions plan_exact;
  plan_exact.stored_digits = std::nullopt;
  int instances = 0;
  for (int instance = 0; instance < 250; ++instance) {
    int n = uni(1, 10);
    std::string ref = "K,A,B\n";
    for (int k = 1; k <= n; ++k)
      ref += std::to_string(k) + ",a" + std::to_string(k) + "," + std::to_string(uni(0, 4)) + ".0\n";
    Catalog c = two_source_catalog(ref, csv(n), std::to_string(uni(1, 20)) + "/1/2016", csv(n),
                                   std::to_string(uni(1, 20)) + "/1/2016", delivery);
    std::vector<Id> p = {*c.find_global_column("A"), *c.find_global_column("B")};
    std::string what = "instance " + std::to_string(instance);
    auto f = fuse::fuse_alternative(c, std::vector<Id>{1, 2}, p, "", exact);
    for (const auto& s : plan::profile_query(c, p, plan_exact))
      check.expect(f.vector.fact_completeness >= s.vector.fact_completeness - 1e-12,
                   what + " fused fact below " + s.name);
    for (const auto& rel : f.relations)
      for (const auto& t : rel.tuples)
        for (std::size_t j = 0; j < t.values.size(); ++j) {
          bool total = t.values[j].has_value() == t.provenance[j].has_value();
          bool member = !t.provenance[j] || *t.provenance[j] == 1 || *t.provenance[j] == 2;
          check.expect(total && member, what + " provenance missing or foreign");
        }
    ++instances;
  }
  check.expect(instances >= 200, "fewer than 200 instances");
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Check&)> run;
  double budget_seconds;
};

}  // namespace
}  // namespace qualint

int main() {
  using qualint::Check;
  const std::vector<qualint::Criterion> criteria = {
      {1, "column profiles of the worked example", qualint::column_profiles, 1},
      {2, "per-query source vectors", qualint::per_query_vectors, 1},
      {3, "alternative vectors and qualified set", qualint::alternatives_and_pruning, 1},
      {4, "no-feature rankings", qualint::no_feature_rankings, 1},
      {5, "single-feature ranking and TA trace", qualint::single_feature_and_ta, 1},
      {6, "unsatisfiable AND goal exits with 3", qualint::unsatisfiable_goal, 1},
      {7, "TA agrees with brute force", qualint::ta_matches_oracle, 60},
      {8, "metric invariants", qualint::metric_invariants, 60},
      {9, "pruning soundness", qualint::pruning_soundness, 60},
      {10, "fusion coverage and provenance", qualint::fusion_properties, 60},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    check.expect(secs < c.budget_seconds,
                 std::string("took ") + timing + ", budget " + std::to_string(int(c.budget_seconds)) + "s");
    std::printf("%s %d %s (%s)%s%s\n", check.ok() ? "PASS" : "FAIL", c.number, c.name, timing,
                check.ok() ? "" : ": ", check.summary().c_str());
    failed += !check.ok();
  }
  return failed ? 1 : 0;
}
