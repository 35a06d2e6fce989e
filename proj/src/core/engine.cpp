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

#include "qualint/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qualint/error.hpp"

namespace qualint {

// ---------------------------------------------------------------------------
// Config

void Config::set(std::string_view raw_key, std::string_view raw_value) {
  auto key = util::to_lower(util::trim(raw_key));
  auto value = std::string(util::trim(raw_value));
  auto bad = [&](const std::string& why) -> void {
    fail(ErrorCode::ConfigError, "setting '" + key + "': " + why);
  };
  auto number = [&]() {
    auto v = util::parse_double(value);
    if (!v) bad("expected a number, got '" + value + "'");
    return *v;
  };
  auto count = [&]() {
    auto v = util::parse_int(value);
    if (!v || *v < 0) bad("expected a non-negative integer, got '" + value + "'");
    return *v;
  };

  if (key == "as_of") {
    auto d = util::parse_date(value);
    if (!d) bad("expected a day/month/year date, got '" + value + "'");
    as_of = *d;
  } else if (key == "age_mode") {
    auto m = assess::age_mode_from_name(value);
    if (!m) bad("expected months30 or exact-days, got '" + value + "'");
    age_mode = *m;
  } else if (key == "stored_digits") {
    if (util::iequals(value, "full")) stored_digits.reset();
    else stored_digits = static_cast<int>(count());
  } else if (key == "rounding_digits") {
    rounding_digits = static_cast<int>(count());
  } else if (key.starts_with("term.")) {
    auto rest = key.substr(5);
    auto dot = rest.find('.');
    double threshold = number();
    if (dot == std::string::npos) {
      if (rest.empty()) bad("term name missing");
      terms.define(rest, threshold);
    } else {
      auto feature = feature_from_name(rest.substr(0, dot));
      if (!feature) bad("unknown quality feature '" + rest.substr(0, dot) + "'");
      terms.define(*feature, rest.substr(dot + 1), threshold);
    }
  } else if (key == "scoring") {
    auto s = util::to_lower(value);
    if (s != "sum" && s != "min" && s != "weighted") bad("expected sum, min or weighted");
    scoring = s;
  } else if (key.starts_with("weight.")) {
    auto feature = feature_from_name(key.substr(7));
    if (!feature) bad("unknown quality feature '" + key.substr(7) + "'");
    weights[*feature] = number();
  } else if (key == "format") {
    auto f = util::to_lower(value);
    if (f == "table") format = OutputFormat::Table;
    else if (f == "records") format = OutputFormat::Records;
    else bad("expected table or records");
  } else if (key == "null_tokens") {
    null_tokens.clear();
    for (const auto& t : util::split(value, ','))
      if (!util::trim(t).empty()) null_tokens.emplace_back(util::trim(t));
  } else if (key == "max_sources") {
    auto n = count();
    if (n < 1 || n > 30) bad("expected 1..30");
    max_sources = static_cast<std::size_t>(n);
  } else {
    bad("unknown setting");
  }
}

void Config::apply_text(std::string_view text) {
  std::size_t line_no = 0;
  for (const auto& raw : util::split(text, '\n')) {
    ++line_no;
    auto line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    try {
      set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void Config::apply_file(const std::string& path) {
  std::string text;
  try {
    text = util::read_file(path);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  try {
    apply_text(text);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

plan::PlanOptions Config::plan_options() const {
  plan::PlanOptions o;
  o.max_sources = max_sources;
  o.stored_digits = stored_digits;
  o.display_digits = rounding_digits;
  return o;
}

IngestOptions Config::ingest_options() const { return IngestOptions{null_tokens}; }

rank::ScoringFunction Config::scoring_for(const std::vector<Feature>& features) const {
  if (scoring == "min") return rank::ScoringFunction::min();
  if (scoring == "weighted") {
    std::vector<double> w;
    for (Feature f : features) {
      auto it = weights.find(f);
      w.push_back(it == weights.end() ? 1.0 : it->second);
    }
    return rank::ScoringFunction::weighted(std::move(w));
  }
  return rank::ScoringFunction::sum();
}

// ---------------------------------------------------------------------------
// Report writer

namespace {

struct Section {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string record_value(const std::string& v) {
  bool plain = !v.empty();
  for (char c : v)
    if (c == ' ' || c == '"' || c == '=' || c == '\\' || c == '\n' || c == '\t') plain = false;
  if (plain) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string render(const std::vector<Section>& sections, OutputFormat format) {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : sections) {
    if (format == OutputFormat::Table) {
      if (!first) out << '\n';
      out << "# " << s.name << '\n';
      util::write_csv_row(out, s.header);
      for (const auto& r : s.rows) util::write_csv_row(out, r);
    } else {
      for (const auto& r : s.rows) {
        out << s.name;
        for (std::size_t i = 0; i < s.header.size(); ++i)
          out << ' ' << s.header[i] << '=' << record_value(i < r.size() ? r[i] : "");
        out << '\n';
      }
    }
    first = false;
  }
  return out.str();
}

std::string fixed(double v, const Config& c) { return util::format_fixed(v, c.rounding_digits); }

std::string member_names(const Catalog& catalog, const std::vector<Id>& members) {
  std::string out;
  for (Id m : members) {
    if (!out.empty()) out += "+";
    out += catalog.source(m).name;
  }
  return out;
}

std::vector<std::string> vector_cells(const QualityVector& v, const Config& c) {
  return {fixed(v.fact_completeness, c), fixed(v.validity, c), fixed(v.accuracy, c),
          fixed(v.timeliness, c)};
}

const std::vector<std::string> kVectorHeader = {"fact_completeness", "validity", "accuracy",
                                                "timeliness"};

Section ranking_section(const Catalog& catalog, const std::string& name,
                        const std::vector<rank::RankedAnswer>& ranking, const Config& c) {
  Section s{name, {"rank", "alternative", "members"}, {}};
  s.header.insert(s.header.end(), kVectorHeader.begin(), kVectorHeader.end());
  s.header.push_back("score");
  for (const auto& a : ranking) {
    std::vector<std::string> row = {std::to_string(a.rank), a.label,
                                    member_names(catalog, a.members)};
    auto v = vector_cells(a.vector, c);
    row.insert(row.end(), v.begin(), v.end());
    row.push_back(fixed(a.total_score, c));
    s.rows.push_back(std::move(row));
  }
  return s;
}

std::string cell_text(const Cell& cell) { return cell ? *cell : ""; }

}  // namespace

// ---------------------------------------------------------------------------
// assess

AssessOutcome run_assess(Catalog& catalog, const Config& config) {
  if (catalog.sources().empty())
    fail(ErrorCode::NoSources, "no data sources registered; run register first");
  AssessOutcome out;
  out.delivery_date = config.delivery_date();
  out.age_mode = config.age_mode;
  out.profiles = assess::assess_mapping_table(catalog, out.delivery_date, {config.age_mode},
                                              &out.diagnostics);
  catalog.store_profiles(out.profiles);
  return out;
}

std::string render_assess(const Catalog& catalog, const AssessOutcome& outcome,
                          const Config& config) {
  std::vector<Section> sections;
  sections.push_back({"assessment",
                      {"as_of", "age_mode", "mappings"},
                      {{util::format_date(outcome.delivery_date),
                        std::string(assess::age_mode_name(outcome.age_mode)),
                        std::to_string(outcome.profiles.size())}}});
  Section p{"column_profiles",
            {"mapping_id", "column_id", "gs_column_id", "source", "column", "global_column",
             "population_completeness", "incompleteness"},
            {}};
  p.header.insert(p.header.end(), kVectorHeader.begin(), kVectorHeader.end());
  for (const auto& cp : outcome.profiles) {
    const auto& column = catalog.column(cp.column_id);
    const auto& gs = catalog.global_column(cp.gs_column_id);
    std::vector<std::string> row = {std::to_string(cp.mapping_id),
                                    std::to_string(cp.column_id),
                                    std::to_string(cp.gs_column_id),
                                    catalog.source(catalog.table(column.table_id).source_id).name,
                                    column.name,
                                    catalog.global_table(gs.gs_table_id).name + "." + gs.name,
                                    fixed(cp.population_completeness, config),
                                    fixed(cp.incompleteness, config)};
    auto v = vector_cells(cp.vector(), config);
    row.insert(row.end(), v.begin(), v.end());
    p.rows.push_back(std::move(row));
  }
  sections.push_back(std::move(p));
  Section d{"diagnostics",
            {"source", "table", "global_table", "rows", "matched", "unmatched", "duplicates"},
            {}};
  for (const auto& diag : outcome.diagnostics) {
    const auto& t = catalog.table(diag.table_id);
    d.rows.push_back({catalog.source(t.source_id).name, t.name,
                      catalog.global_table(diag.gs_table_id).name, std::to_string(diag.rows),
                      std::to_string(diag.matched), std::to_string(diag.unmatched_rows),
                      std::to_string(diag.duplicate_rows)});
  }
  sections.push_back(std::move(d));
  return render(sections, config.format);
}

// ---------------------------------------------------------------------------
// query

namespace {

std::vector<Id> where_columns(const Catalog& catalog, const QualityQuery& q) {
  std::vector<Id> out;
  if (!q.selection) return out;
  std::vector<const Predicate*> stack{&*q.selection};
  while (!stack.empty()) {
    const Predicate* p = stack.back();
    stack.pop_back();
    if (!p->column.empty()) {
      auto id = catalog.find_global_column(p->column);
      if (id && std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    }
    for (const auto& c : p->children) stack.push_back(&c);
  }
  return out;
}

}  // namespace

QueryOutcome run_query(const Catalog& catalog, std::string_view text, const Config& config) {
  QueryOutcome out;
  out.query = parse_query(text, catalog);
  out.cls = classify(out.query);  // shape check before term lookup
  resolve_qualitative(out.query, config.terms);

  auto options = config.plan_options();
  out.sources = plan::profile_query(catalog, out.query.projection_ids, options);
  out.alternatives = plan::build_alternatives(out.sources, options);
  try {
    out.qualified = plan::prune(out.alternatives, out.query.goal, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsatisfiableGoal) throw;
    out.unsatisfiable = e.what();
    return out;
  }

  const auto& k = out.query.limit;
  fuse::FuseOptions fopt{config.stored_digits};
  const auto& projection = out.query.projection_ids;
  auto rerank = [&](const NamedRanking& before, const std::vector<Feature>& features,
                    const rank::ScoringFunction& scoring) {
    auto r = fuse::reassess_and_rerank(catalog, projection, before.ranking, features, scoring,
                                       fopt);
    for (auto& [label, f] : r.fused) out.fused.insert_or_assign(label, std::move(f));
    out.final_rankings.push_back({before.name, std::move(r.ranking)});
  };

  switch (out.cls.kind) {
    case QueryKind::NoFeature: {
      auto all = rank::rank_all_features(out.qualified, k);
      for (std::size_t i = 0; i < kAllFeatures.size(); ++i) {
        Feature f = kAllFeatures[i];
        out.rankings.push_back({std::string(feature_key(f)), all[i]});
        auto objects = rank::to_objects(out.qualified, std::vector<Feature>{f});
        out.lists.push_back(rank::make_list(objects, 0, std::string(feature_title(f))));
      }
      for (std::size_t i = 0; i < kAllFeatures.size(); ++i)
        rerank(out.rankings[i], {kAllFeatures[i]}, rank::ScoringFunction::sum());
      break;
    }
    case QueryKind::SingleFeature: {
      Feature f = goal_leaves(*out.query.goal).front().feature;
      out.features = {f};
      out.rankings.push_back(
          {std::string(feature_key(f)), rank::rank_single_feature(out.qualified, f, k)});
      auto objects = rank::to_objects(out.qualified, out.features);
      out.lists.push_back(rank::make_list(objects, 0, std::string(feature_title(f))));
      rerank(out.rankings.front(), out.features, rank::ScoringFunction::sum());
      break;
    }
    case QueryKind::MultiFeature: {
      out.features = goal_features(*out.query.goal);
      auto scoring = config.scoring_for(out.features);
      out.scoring = scoring.name();
      auto multi = rank::rank_multi_feature(out.qualified, out.features, scoring, k);
      out.lists = std::move(multi.lists);
      out.ta_stats = multi.stats;
      out.ta_trace = std::move(multi.trace);
      out.rankings.push_back({"score", std::move(multi.ranking)});
      rerank(out.rankings.front(), out.features, scoring);
      break;
    }
  }

  const auto& best = out.final_rankings.front().ranking.front();
  auto extra = where_columns(catalog, out.query);
  auto answer = fuse::fuse_alternative(catalog, best.members, projection, best.label, fopt, extra);
  answer.vector = best.vector;
  if (out.query.selection) {
    for (auto& rel : answer.relations) {
      if (std::find_if(extra.begin(), extra.end(), [&](Id gs) {
            return catalog.global_column(gs).gs_table_id == rel.gs_table_id;
          }) == extra.end())
        continue;
      std::vector<fuse::FusedTuple> kept;
      for (auto& t : rel.tuples)
        if (fuse::matches(catalog, *out.query.selection, rel, t)) kept.push_back(std::move(t));
      rel.tuples = std::move(kept);
    }
  }
  out.answer = std::move(answer);
  return out;
}

QueryRecord to_record(const QueryOutcome& outcome) {
  QueryRecord r;
  r.text = unparse(outcome.query);
  Id qs = 0, metric = 0;
  std::map<Id, Id> metric_of_source;
  for (const auto& s : outcome.sources) {
    for (const auto& p : s.participation)
      r.queried_sources.push_back({++qs, s.source_id, p.column_id, p.gs_column_id});
    r.source_metrics.push_back({++metric, s.source_id, s.vector});
    metric_of_source[s.source_id] = metric;
  }
  for (const auto& a : outcome.alternatives) {
    Id id = static_cast<Id>(a.number);
    r.alternatives.push_back({id, a.label, a.qualified, a.vector});
    for (Id m : a.members) r.members.push_back({metric_of_source.at(m), id});
  }
  return r;
}

namespace {

std::vector<Section> tuple_sections(const Catalog& catalog, const fuse::FusedAlternative& fused) {
  std::vector<Section> out;
  for (const auto& rel : fused.relations) {
    const auto& table = catalog.global_table(rel.gs_table_id).name;
    Section values{"tuples:" + table, {}, {}};
    Section prov{"provenance:" + table, {"row"}, {}};
    for (Id gs : rel.columns) {
      values.header.push_back(catalog.global_column(gs).name);
      prov.header.push_back(catalog.global_column(gs).name);
    }
    std::size_t n = 0;
    for (const auto& t : rel.tuples) {
      std::vector<std::string> v, p{std::to_string(++n)};
      for (std::size_t j = 0; j < t.values.size(); ++j) {
        v.push_back(cell_text(t.values[j]));
        p.push_back(t.provenance[j] ? catalog.source(*t.provenance[j]).name : "");
      }
      values.rows.push_back(std::move(v));
      prov.rows.push_back(std::move(p));
    }
    out.push_back(std::move(values));
    out.push_back(std::move(prov));
  }
  return out;
}

Section query_section(const QueryOutcome& o) {
  std::string features;
  for (Feature f : o.features) {
    if (!features.empty()) features += "+";
    features += feature_key(f);
  }
  return {"query",
          {"text", "kind", "connective", "value_style", "features", "scoring", "limit"},
          {{unparse(o.query), std::string(query_kind_name(o.cls.kind)),
            std::string(connective_name(o.cls.connective)),
            std::string(value_style_name(o.cls.value_style)), features,
            o.cls.kind == QueryKind::MultiFeature ? o.scoring : "",
            o.query.limit ? std::to_string(*o.query.limit) : "all"}}};
}

}  // namespace

std::string render_query(const Catalog& catalog, const QueryOutcome& outcome,
                         const Config& config, bool with_stats) {
  std::vector<Section> sections;
  sections.push_back(query_section(outcome));
  if (outcome.unsatisfiable) {
    sections.push_back({"unsatisfiable", {"message"}, {{*outcome.unsatisfiable}}});
    return render(sections, config.format);
  }
  for (const auto& r : outcome.rankings)
    sections.push_back(ranking_section(catalog, "ranking:" + r.name, r.ranking, config));
  for (const auto& r : outcome.final_rankings)
    sections.push_back(ranking_section(catalog, "final_ranking:" + r.name, r.ranking, config));
  if (outcome.answer) {
    sections.push_back({"answer",
                        {"alternative", "members"},
                        {{outcome.answer->label, member_names(catalog, outcome.answer->members)}}});
    for (auto& s : tuple_sections(catalog, *outcome.answer)) sections.push_back(std::move(s));
  }
  if (with_stats && outcome.ta_stats) {
    sections.push_back({"stats",
                        {"depth", "sorted_accesses", "random_accesses"},
                        {{std::to_string(outcome.ta_stats->depth),
                          std::to_string(outcome.ta_stats->sorted_accesses),
                          std::to_string(outcome.ta_stats->random_accesses)}}});
  }
  return render(sections, config.format);
}

std::string render_explain(const Catalog& catalog, const QueryOutcome& outcome,
                           const Config& config) {
  std::vector<Section> sections;
  sections.push_back(query_section(outcome));

  Section qs{"queried_sources", {"source", "column", "global_column", "mapping_id"}, {}};
  for (const auto& s : outcome.sources)
    for (const auto& p : s.participation) {
      const auto& gs = catalog.global_column(p.gs_column_id);
      qs.rows.push_back({s.name, catalog.column(p.column_id).name,
                         catalog.global_table(gs.gs_table_id).name + "." + gs.name,
                         std::to_string(p.mapping_id)});
    }
  sections.push_back(std::move(qs));

  Section sm{"source_metrics", {"source", "attributes"}, {}};
  sm.header.insert(sm.header.end(), kVectorHeader.begin(), kVectorHeader.end());
  for (const auto& s : outcome.sources) {
    std::vector<std::string> row = {s.name, std::to_string(s.participation.size()) + "/" +
                                                std::to_string(outcome.query.projection_ids.size())};
    auto v = vector_cells(s.vector, config);
    row.insert(row.end(), v.begin(), v.end());
    sm.rows.push_back(std::move(row));
  }
  sections.push_back(std::move(sm));

  Section alts{"alternatives", {"alternative", "members"}, {}};
  alts.header.insert(alts.header.end(), kVectorHeader.begin(), kVectorHeader.end());
  alts.header.push_back("pruning");
  alts.header.push_back("verdict");
  for (const auto& a : outcome.alternatives) {
    std::vector<std::string> row = {a.label, member_names(catalog, a.members)};
    auto v = vector_cells(a.vector, config);
    row.insert(row.end(), v.begin(), v.end());
    row.push_back(a.pruning_stage == 1 ? "first" : a.pruning_stage == 2 ? "second" : "");
    row.push_back(a.verdict);
    alts.rows.push_back(std::move(row));
  }
  sections.push_back(std::move(alts));

  if (outcome.unsatisfiable) {
    sections.push_back({"unsatisfiable", {"message"}, {{*outcome.unsatisfiable}}});
    return render(sections, config.format);
  }

  for (const auto& list : outcome.lists) {
    Section l{"list:" + list.name, {"position", "alternative", "score"}, {}};
    std::size_t pos = 0;
    for (const auto& e : list.entries)
      l.rows.push_back({std::to_string(++pos), outcome.qualified[e.object].label,
                        fixed(e.score, config)});
    sections.push_back(std::move(l));
  }
  if (!outcome.ta_trace.empty()) {
    Section t{"ta_trace", {"depth", "threshold", "top_k", "halted"}, {}};
    for (const auto& check : outcome.ta_trace) {
      std::string top;
      for (const auto& r : check.top) {
        if (!top.empty()) top += " ";
        top += outcome.qualified[r.object].label + ":" + fixed(r.score, config);
      }
      t.rows.push_back({std::to_string(check.depth), fixed(check.threshold, config), top,
                        check.halted ? "yes" : "no"});
    }
    sections.push_back(std::move(t));
  }
  for (const auto& r : outcome.rankings)
    sections.push_back(ranking_section(catalog, "ranking:" + r.name, r.ranking, config));
  return render(sections, config.format);
}

}  // namespace qualint
