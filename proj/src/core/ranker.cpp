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

#include "qualint/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qualint/error.hpp"

namespace qualint::rank {

bool ranks_before(double score_a, const RankObject& a, double score_b, const RankObject& b) {
  if (score_a != score_b) return score_a > score_b;
  if (a.member_count != b.member_count) return a.member_count < b.member_count;
  return a.label < b.label;
}

FeatureList make_list(std::span<const RankObject> objects, std::size_t list_index,
                      std::string name) {
  FeatureList list;
  list.name = std::move(name);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (list_index >= objects[i].scores.size())
      fail(ErrorCode::InvalidArgument, "object '" + objects[i].label + "' has no score for list " +
                                           std::to_string(list_index));
    list.entries.push_back({i, objects[i].scores[list_index]});
  }
  std::sort(list.entries.begin(), list.entries.end(), [&](const ListEntry& x, const ListEntry& y) {
    return ranks_before(x.score, objects[x.object], y.score, objects[y.object]);
  });
  return list;
}

// --- scoring ------------------------------------------------------------------

ScoringFunction ScoringFunction::sum() {
  return {"sum", [](std::span<const double> s) { return std::accumulate(s.begin(), s.end(), 0.0); }};
}

ScoringFunction ScoringFunction::min() {
  return {"min", [](std::span<const double> s) {
            return s.empty() ? 0.0 : *std::min_element(s.begin(), s.end());
          }};
}

ScoringFunction ScoringFunction::weighted(std::vector<double> weights) {
  bool any = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0)
      fail(ErrorCode::RejectedScoringFunction,
           "weighted sum needs finite non-negative weights (a negative weight is not monotone)");
    any = any || w > 0;
  }
  if (!any) fail(ErrorCode::RejectedScoringFunction, "weighted sum needs a positive weight");
  ScoringFunction f("weighted", [weights](std::span<const double> s) {
    if (s.size() != weights.size())
      fail(ErrorCode::InvalidArgument, "weighted sum has " + std::to_string(weights.size()) +
                                           " weights for " + std::to_string(s.size()) + " scores");
    double total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) total += weights[i] * s[i];
    return total;
  });
  f.weights_ = std::move(weights);
  return f;
}

ScoringFunction ScoringFunction::custom(std::string name, Fn fn, bool monotone) {
  if (!monotone)
    fail(ErrorCode::RejectedScoringFunction,
         "scoring function '" + name + "' is not monotone; the threshold algorithm needs one");
  return {std::move(name), std::move(fn)};
}

double ScoringFunction::operator()(std::span<const double> scores) const { return fn_(scores); }

// --- TA -----------------------------------------------------------------------

TaResult ta_rank(std::span<const RankObject> objects, std::span<const FeatureList> lists,
                 const ScoringFunction& scoring, std::size_t k) {
  TaResult result;
  if (k == 0 || objects.empty() || lists.empty()) return result;
  const std::size_t m = lists.size();
  const std::size_t n = objects.size();
  constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  // Random-access index: score of every object in every list.
  std::vector<std::vector<double>> lookup(m, std::vector<double>(n, kUnset));
  for (std::size_t i = 0; i < m; ++i) {
    if (lists[i].entries.size() != n)
      fail(ErrorCode::InvalidArgument, "list '" + lists[i].name + "' does not hold every object");
    for (const auto& e : lists[i].entries) lookup[i][e.object] = e.score;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t o = 0; o < n; ++o)
      if (std::isnan(lookup[i][o]))
        fail(ErrorCode::InvalidArgument,
             "object '" + objects[o].label + "' is missing from list '" + lists[i].name + "'");

  auto better = [&](const Ranked& a, const Ranked& b) {
    return ranks_before(a.score, objects[a.object], b.score, objects[b.object]);
  };

  std::vector<char> seen(n, 0);
  std::vector<Ranked> top;  // best first, at most k
  std::vector<double> last(m), scores(m);
  for (std::size_t depth = 0; depth < n; ++depth) {
    for (std::size_t i = 0; i < m; ++i) {
      const ListEntry& e = lists[i].entries[depth];
      ++result.stats.sorted_accesses;
      last[i] = e.score;
      if (seen[e.object]) continue;
      seen[e.object] = 1;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) {
          scores[j] = e.score;
        } else {
          scores[j] = lookup[j][e.object];
          ++result.stats.random_accesses;
        }
      }
      Ranked r{e.object, scoring(scores)};
      auto pos = std::lower_bound(top.begin(), top.end(), r, better);
      if (static_cast<std::size_t>(pos - top.begin()) < k) {
        top.insert(pos, r);
        if (top.size() > k) top.pop_back();
      }
    }
    result.stats.depth = depth + 1;
    double threshold = scoring(last);
    bool halted = top.size() >= k && top.back().score >= threshold;
    result.trace.push_back({depth + 1, threshold, top, halted});
    if (halted) break;
  }
  result.ranking = std::move(top);
  return result;
}

std::vector<Ranked> brute_force_rank(std::span<const RankObject> objects,
                                     const ScoringFunction& scoring, std::size_t k) {
  std::vector<Ranked> all;
  all.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) all.push_back({i, scoring(objects[i].scores)});
  std::sort(all.begin(), all.end(), [&](const Ranked& a, const Ranked& b) {
    return ranks_before(a.score, objects[a.object], b.score, objects[b.object]);
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// --- alternatives -------------------------------------------------------------

std::vector<RankObject> to_objects(std::span<const plan::Alternative> alternatives,
                                   std::span<const Feature> features) {
  std::vector<RankObject> out;
  out.reserve(alternatives.size());
  for (const auto& a : alternatives) {
    RankObject o{a.label, a.members.size(), {}};
    for (Feature f : features) o.scores.push_back(a.vector.get(f));
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

void require_nonempty(std::span<const plan::Alternative> alternatives) {
  if (alternatives.empty()) fail(ErrorCode::EmptyRanking, "nothing to rank");
}

std::vector<RankedAnswer> answers(std::span<const plan::Alternative> alternatives,
                                  const std::vector<Ranked>& ranked) {
  std::vector<RankedAnswer> out;
  for (const auto& r : ranked) {
    const auto& a = alternatives[r.object];
    out.push_back({out.size() + 1, a.label, a.members, a.vector, r.score});
  }
  return out;
}

}  // namespace

std::vector<RankedAnswer> rank_single_feature(std::span<const plan::Alternative> alternatives,
                                              Feature feature, std::optional<std::size_t> k) {
  require_nonempty(alternatives);
  Feature f[] = {feature};
  auto objects = to_objects(alternatives, f);
  return answers(alternatives,
                 brute_force_rank(objects, ScoringFunction::sum(), k.value_or(objects.size())));
}

std::array<std::vector<RankedAnswer>, 4> rank_all_features(
    std::span<const plan::Alternative> alternatives, std::optional<std::size_t> k) {
  require_nonempty(alternatives);
  std::array<std::vector<RankedAnswer>, 4> out;
  for (std::size_t i = 0; i < kAllFeatures.size(); ++i)
    out[i] = rank_single_feature(alternatives, kAllFeatures[i], k);
  return out;
}

MultiFeatureRanking rank_multi_feature(std::span<const plan::Alternative> alternatives,
                                       std::span<const Feature> features,
                                       const ScoringFunction& scoring,
                                       std::optional<std::size_t> k) {
  require_nonempty(alternatives);
  if (features.empty()) fail(ErrorCode::InvalidArgument, "no features to rank by");
  MultiFeatureRanking out;
  out.features.assign(features.begin(), features.end());
  auto objects = to_objects(alternatives, features);
  for (std::size_t i = 0; i < features.size(); ++i)
    out.lists.push_back(make_list(objects, i, std::string(feature_title(features[i]))));
  auto ta = ta_rank(objects, out.lists, scoring, k.value_or(objects.size()));
  out.ranking = answers(alternatives, ta.ranking);
  out.stats = ta.stats;
  out.trace = std::move(ta.trace);
  return out;
}

}  // namespace qualint::rank
