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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qualint/assessor.hpp"
#include "qualint/catalog.hpp"
#include "qualint/fusion.hpp"
#include "qualint/planner.hpp"
#include "qualint/query.hpp"
#include "qualint/ranker.hpp"

namespace qualint {

enum class OutputFormat { Table, Records };

// Run configuration. Text form is one `key = value` per line, `#` comments:
//
//   as_of = 2/2/2016              delivery date (default: today)
//   age_mode = months30           or exact-days
//   stored_digits = 2             or "full"
//   rounding_digits = 2           decimals in reports
//   term.high = 0.65              qualitative term, every feature
//   term.validity.high = 0.7      qualitative term, one feature
//   scoring = sum                 sum | min | weighted
//   weight.fact = 2               weights for `weighted` (default 1)
//   format = table                table | records
//   null_tokens = NULL,n/a        extra cell values read as null
//   max_sources = 16              combination cap
struct Config {
  std::optional<util::Date> as_of;
  assess::AgeMode age_mode = assess::AgeMode::ExactDays;
  std::optional<int> stored_digits = 2;
  int rounding_digits = 2;
  TermTable terms = TermTable::defaults();
  std::string scoring = "sum";
  std::map<Feature, double> weights;
  OutputFormat format = OutputFormat::Table;
  std::vector<std::string> null_tokens;
  std::size_t max_sources = 16;

  // Applies one setting. Throws ConfigError.
  void set(std::string_view key, std::string_view value);
  // Applies every line of a config text. Throws ConfigError naming the line.
  void apply_text(std::string_view text);
  void apply_file(const std::string& path);

  util::Date delivery_date() const { return as_of.value_or(util::today()); }
  plan::PlanOptions plan_options() const;
  IngestOptions ingest_options() const;
  // Scoring function over `features`. Throws RejectedScoringFunction.
  rank::ScoringFunction scoring_for(const std::vector<Feature>& features) const;
};

// --- assess -------------------------------------------------------------------

struct AssessOutcome {
  util::Date delivery_date;
  assess::AgeMode age_mode = assess::AgeMode::ExactDays;
  std::vector<ColumnProfile> profiles;
  std::vector<assess::TableDiagnostics> diagnostics;
};

// Scores every mapping and stores the profiles in the catalog.
// Throws NoSources when nothing is registered.
AssessOutcome run_assess(Catalog& catalog, const Config& config);

std::string render_assess(const Catalog& catalog, const AssessOutcome& outcome,
                          const Config& config);

// --- query --------------------------------------------------------------------

struct NamedRanking {
  std::string name;  // feature key, or "score" for multi-feature
  std::vector<rank::RankedAnswer> ranking;
};

struct QueryOutcome {
  QualityQuery query;  // bound, goal resolved
  QueryClass cls;
  std::vector<Feature> features;  // lists ranked over (empty for NoFeature)
  std::string scoring = "sum";
  std::vector<plan::QueriedSourceProfile> sources;
  std::vector<plan::Alternative> alternatives;  // every formed alternative with verdicts
  std::vector<plan::Alternative> qualified;
  std::optional<std::string> unsatisfiable;      // set instead of rankings

  std::vector<NamedRanking> rankings;  // before fusion (four for NoFeature)
  std::vector<rank::FeatureList> lists;
  std::optional<rank::TaStats> ta_stats;
  std::vector<rank::TaCheck> ta_trace;

  std::vector<NamedRanking> final_rankings;                // after fusion, same shape
  std::map<std::string, fuse::FusedAlternative> fused;     // multi-member answers
  std::optional<fuse::FusedAlternative> answer;            // rank-1 final tuples, WHERE applied
};

// Parses, plans, prunes, ranks, fuses and re-ranks. An unsatisfiable goal is
// reported through `unsatisfiable` rather than thrown.
QueryOutcome run_query(const Catalog& catalog, std::string_view text, const Config& config);

// Query-scoped entities of an outcome, ready for Catalog::record_query.
QueryRecord to_record(const QueryOutcome& outcome);

// Rankings, final ranking, fused tuples and provenance.
std::string render_query(const Catalog& catalog, const QueryOutcome& outcome,
                         const Config& config, bool with_stats);

// Queried sources, per-source vectors, alternatives with verdicts, lists.
std::string render_explain(const Catalog& catalog, const QueryOutcome& outcome,
                           const Config& config);

}  // namespace qualint
