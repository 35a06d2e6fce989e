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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qualint/planner.hpp"

namespace qualint::rank {

// An object to rank: one score per list.
struct RankObject {
  std::string label;
  std::size_t member_count = 1;
  std::vector<double> scores;
};

// Tie rule shared by every ranking: higher score, then fewer members, then
// lexicographically smaller label.
bool ranks_before(double score_a, const RankObject& a, double score_b, const RankObject& b);

struct ListEntry {
  std::size_t object = 0;  // index into the object vector
  double score = 0;
};

// L_i: entries sorted descending by score under the tie rule.
struct FeatureList {
  std::string name;
  std::vector<ListEntry> entries;
};

FeatureList make_list(std::span<const RankObject> objects, std::size_t list_index,
                      std::string name = {});

class ScoringFunction {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  static ScoringFunction sum();
  static ScoringFunction min();
  // Weights must be finite, non-negative and not all zero.
  static ScoringFunction weighted(std::vector<double> weights);
  // Throws RejectedScoringFunction unless declared monotone.
  static ScoringFunction custom(std::string name, Fn fn, bool monotone);

  double operator()(std::span<const double> scores) const;
  const std::string& name() const { return name_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  ScoringFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string name_;
  Fn fn_;
  std::vector<double> weights_;
};

struct Ranked {
  std::size_t object = 0;
  double score = 0;
  bool operator==(const Ranked&) const = default;
};

struct TaStats {
  std::size_t depth = 0;
  std::size_t sorted_accesses = 0;
  std::size_t random_accesses = 0;
};

// State after one halting check (one round of sorted access).
struct TaCheck {
  std::size_t depth = 0;
  double threshold = 0;
  std::vector<Ranked> top;  // A_k so far, best first
  bool halted = false;
};

struct TaResult {
  std::vector<Ranked> ranking;
  TaStats stats;
  std::vector<TaCheck> trace;
};

// Threshold Algorithm: sorted access in parallel (round robin by depth),
// random access for every newly seen object, top-k buffer, halt once k
// buffered objects score at least T = F(last seen score of each list).
// Every object must appear in every list.
TaResult ta_rank(std::span<const RankObject> objects, std::span<const FeatureList> lists,
                 const ScoringFunction& scoring, std::size_t k);

// Scores everything, sorts by the tie rule, keeps k.
std::vector<Ranked> brute_force_rank(std::span<const RankObject> objects,
                                     const ScoringFunction& scoring, std::size_t k);

// --- alternatives -------------------------------------------------------------

struct RankedAnswer {
  std::size_t rank = 0;  // 1-based
  std::string label;
  std::vector<Id> members;
  QualityVector vector;
  double total_score = 0;
  bool operator==(const RankedAnswer&) const = default;
};

std::vector<RankObject> to_objects(std::span<const plan::Alternative> alternatives,
                                   std::span<const Feature> features);

// k = std::nullopt ranks everything. Throws EmptyRanking on empty input.
std::vector<RankedAnswer> rank_single_feature(std::span<const plan::Alternative> alternatives,
                                              Feature feature, std::optional<std::size_t> k);

std::array<std::vector<RankedAnswer>, 4> rank_all_features(
    std::span<const plan::Alternative> alternatives, std::optional<std::size_t> k);

struct MultiFeatureRanking {
  std::vector<Feature> features;
  std::vector<FeatureList> lists;
  std::vector<RankedAnswer> ranking;
  TaStats stats;
  std::vector<TaCheck> trace;
};

// TA over one list per feature. Throws EmptyRanking on empty input.
MultiFeatureRanking rank_multi_feature(std::span<const plan::Alternative> alternatives,
                                       std::span<const Feature> features,
                                       const ScoringFunction& scoring,
                                       std::optional<std::size_t> k);

}  // namespace qualint::rank
