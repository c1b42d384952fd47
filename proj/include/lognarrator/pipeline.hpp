#pragma once

// End-to-end wiring: ingest -> discover -> analyze -> summarize -> realize.
// The CLI is a thin shell over run_describe / run_discover / run_stats.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lognarrator/config.hpp"
#include "lognarrator/csv.hpp"
#include "lognarrator/dot.hpp"
#include "lognarrator/indicators.hpp"
#include "lognarrator/log_json.hpp"
#include "lognarrator/model.hpp"
#include "lognarrator/protoforms.hpp"
#include "lognarrator/realize.hpp"
#include "lognarrator/validate.hpp"
#include "lognarrator/variants.hpp"
#include "lognarrator/xes.hpp"

namespace lognar {

struct CompareRequest {
  PeriodMetric metric = PeriodMetric::activity_count;
  std::vector<std::string> subject;
  std::optional<TimeWindow> window_a, window_b;  // absent: whole-log totals
};

// Grammar: "metric:subject:startA..endA:startB..endB". Subjects with a comma
// are (a,b) pairs; the two-part form "activity_count:A,B" compares whole-log
// totals of two activities.
inline CompareRequest parse_compare_request(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 2 && parts.size() != 4)
    throw ConfigError("--compare: expected 'metric:subject:startA..endA:startB..endB' or "
                      "'metric:subjectA,subjectB', got '" + spec + "'");
  CompareRequest req;
  if (parts[0] == "activity_count") req.metric = PeriodMetric::activity_count;
  else if (parts[0] == "activity_mean_duration") req.metric = PeriodMetric::activity_mean_duration;
  else if (parts[0] == "arc_mean_waiting") req.metric = PeriodMetric::arc_mean_waiting;
  else throw ConfigError("--compare: unknown metric '" + parts[0] + "'");

  for (auto& s : config_detail::split_list(parts[1], ','))
    if (!s.empty()) req.subject.push_back(s);
  if (req.subject.empty()) throw ConfigError("--compare: empty subject in '" + spec + "'");

  if (parts.size() == 4) {
    auto wa = try_parse_window(parts[2]);
    auto wb = try_parse_window(parts[3]);
    if (!wa) throw ConfigError("--compare: bad window '" + parts[2] + "'");
    if (!wb) throw ConfigError("--compare: bad window '" + parts[3] + "'");
    req.window_a = wa;
    req.window_b = wb;
  } else if (req.metric != PeriodMetric::activity_count || req.subject.size() != 2) {
    throw ConfigError("--compare: the windowless form needs 'activity_count:A,B'");
  }
  return req;
}

struct RunConfig {
  std::string log_path;
  std::string format = "csv";  // csv | xes
  std::string case_col = "case";
  std::string activity_col = "activity";
  std::string timestamp_col = "timestamp";
  std::string timestamp_format = std::string(kDefaultTimestampPattern);
  std::optional<std::string> lifecycle_col;
  std::string abstraction = "complete_only";  // complete_only | collapse_pairs
  double min_dependency = 0.0;
  std::int64_t min_arc_count = 1;
  std::int64_t min_activity_count = 1;
  std::vector<CompareRequest> compares;
  double min_truth = 0.6;
  std::int64_t per_category_cap = 5;
  std::int64_t top_variants = 20;
  std::string out = "text";  // text | json
  std::optional<std::string> dot_path;
  std::string language = "en";
  std::optional<std::string> config_path;
  ErrorPolicy error_policy = ErrorPolicy::skip;
  SummaryConfig summary = default_summary_config();
};

// Total validation before any input is read; errors name the field.
inline void validate_run_config(const RunConfig& cfg) {
  if (cfg.log_path.empty()) throw ConfigError("--log: an input path is required");
  if (cfg.format != "csv" && cfg.format != "xes")
    throw ConfigError("--format: must be 'csv' or 'xes', got '" + cfg.format + "'");
  if (cfg.abstraction != "complete_only" && cfg.abstraction != "collapse_pairs")
    throw ConfigError("--abstraction: must be 'complete_only' or 'collapse_pairs', got '" +
                      cfg.abstraction + "'");
  validate_timestamp_pattern(cfg.timestamp_format);
  if (cfg.min_dependency < -1.0 || cfg.min_dependency > 1.0)
    throw ConfigError("--min-dependency: must be in [-1,1]");
  if (cfg.min_arc_count < 0) throw ConfigError("--min-arc-count: must be >= 0");
  if (cfg.min_activity_count < 0) throw ConfigError("--min-activity-count: must be >= 0");
  if (cfg.min_truth < 0.0 || cfg.min_truth > 1.0)
    throw ConfigError("--min-truth: must be in [0,1]");
  if (cfg.per_category_cap < 1) throw ConfigError("--cap: must be >= 1");
  if (cfg.top_variants < 1) throw ConfigError("--top-variants: must be >= 1");
  if (cfg.out != "text" && cfg.out != "json")
    throw ConfigError("--out: must be 'text' or 'json', got '" + cfg.out + "'");
  if (cfg.language.empty()) throw ConfigError("--lang: must not be empty");
  for (const auto& c : cfg.compares)
    if (c.subject.empty()) throw ConfigError("--compare: subject must not be empty");
  try {
    find_quantifier(cfg.summary, cfg.summary.default_quantifier);
  } catch (const Error& e) {
    throw ConfigError(std::string("default-quantifier: ") + e.what());
  }
}

inline LifecycleAbstraction abstraction_of(const RunConfig& cfg) {
  return cfg.abstraction == "collapse_pairs" ? LifecycleAbstraction::collapse_pairs
                                             : LifecycleAbstraction::complete_only;
}

inline std::pair<EventLog, IngestDiagnostics> ingest(const RunConfig& cfg) {
  std::ifstream in(cfg.log_path, std::ios::binary);
  if (!in) throw StructuralError("cannot open input '" + cfg.log_path + "'");
  if (cfg.format == "xes") return parse_xes(in, cfg.error_policy);
  ColumnMapping mapping;
  mapping.case_col = cfg.case_col;
  mapping.activity_col = cfg.activity_col;
  mapping.timestamp_col = cfg.timestamp_col;
  mapping.timestamp_format = cfg.timestamp_format;
  mapping.lifecycle_col = cfg.lifecycle_col;
  return parse_csv(in, mapping, cfg.error_policy);
}

struct PipelineResult {
  EventLog log;
  IngestDiagnostics ingest_diag;
  ProcessModel model;           // filtered
  ProcessModel unfiltered_model;
  IndicatorSet indicators;
  std::vector<ProtoformInstance> instances;  // post-selection
  Report report;
  std::string report_text;
  nlohmann::json report_json;
  std::string dot;
};

inline IndicatorSet analyze(const EventLog& log, const ProcessModel& model,
                            const RunConfig& cfg) {
  auto abstraction = abstraction_of(cfg);
  IndicatorSet ind = replay(log, model, abstraction);
  for (const auto& req : cfg.compares) {
    if (req.window_a && req.window_b)
      ind.period_comparisons.push_back(compare_periods(log, req.metric, req.subject,
                                                       *req.window_a, *req.window_b,
                                                       abstraction));
    else
      ind.period_comparisons.push_back(
          compare_activity_totals(log, req.subject[0], req.subject[1], abstraction));
  }
  for (const auto& m : cfg.summary.milestones)
    ind.milestones.push_back(
        milestone_cycle_stats(log, m.path, m.subsequence, abstraction, ind.stats_bin));
  return ind;
}

inline PipelineResult run_describe(const RunConfig& cfg) {
  validate_run_config(cfg);
  PipelineResult result;
  auto [log, diag] = ingest(cfg);
  result.log = std::move(log);
  result.ingest_diag = std::move(diag);

  auto abstraction = abstraction_of(cfg);
  result.unfiltered_model = build_dfg(result.log, abstraction);
  result.model = filter_model(result.unfiltered_model,
                              {cfg.min_dependency, cfg.min_arc_count, cfg.min_activity_count});
  result.indicators = analyze(result.log, result.model, cfg);

  auto instances = instantiate(default_schemas(), result.indicators, cfg.summary);
  result.instances = rank_and_select(std::move(instances), cfg.min_truth, cfg.per_category_cap);

  RealizationContext ctx;
  ctx.templates = default_templates();
  for (const auto& t : cfg.summary.templates) {
    bool replaced = false;
    for (auto& existing : ctx.templates)
      if (existing.form == t.form && existing.language == t.language) {
        existing = t;
        replaced = true;
      }
    if (!replaced) ctx.templates.push_back(t);
  }
  ctx.lexicon = cfg.summary.lexicon;
  ctx.followup_arcs = cfg.summary.followup_arcs;
  ctx.language = cfg.language;

  ReportHeader header;
  header.log_name = std::filesystem::path(cfg.log_path).filename().string();
  header.time_span = {result.log.span_begin, result.log.span_end};
  header.trace_count = static_cast<std::int64_t>(result.log.traces.size());
  header.variant_count = static_cast<std::int64_t>(result.indicators.variants.size());

  result.report = plan_document(result.instances, ctx, header);
  result.report_text = report_to_text(result.report);
  result.report_json = report_to_json(result.report, result.instances);
  result.dot = to_dot(result.model);
  return result;
}

struct DiscoverResult {
  ProcessModel model;
  std::string dot;
  nlohmann::json model_json;
};

inline nlohmann::json model_to_json(const ProcessModel& model) {
  nlohmann::json activities;
  for (const auto& [label, node] : model.activities)
    activities[label] = {{"total_count", node.total_count}};
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [key, edge] : model.arcs)
    arcs.push_back({{"from", key.first}, {"to", key.second}, {"count", edge.count}});
  nlohmann::json starts, ends;
  for (const auto& [label, n] : model.start_counts) starts[label] = n;
  for (const auto& [label, n] : model.end_counts) ends[label] = n;
  return {{"schema", "lognarrator-model-v1"},
          {"activities", std::move(activities)},
          {"arcs", std::move(arcs)},
          {"start_counts", std::move(starts)},
          {"end_counts", std::move(ends)}};
}

inline DiscoverResult run_discover(const RunConfig& cfg) {
  validate_run_config(cfg);
  auto [log, diag] = ingest(cfg);
  (void)diag;
  DiscoverResult result;
  auto unfiltered = build_dfg(log, abstraction_of(cfg));
  result.model = filter_model(unfiltered,
                              {cfg.min_dependency, cfg.min_arc_count, cfg.min_activity_count});
  result.dot = to_dot(result.model);
  result.model_json = model_to_json(result.model);
  return result;
}

inline IndicatorSet run_stats(const RunConfig& cfg) {
  validate_run_config(cfg);
  auto [log, diag] = ingest(cfg);
  (void)diag;
  auto unfiltered = build_dfg(log, abstraction_of(cfg));
  auto model = filter_model(unfiltered,
                            {cfg.min_dependency, cfg.min_arc_count, cfg.min_activity_count});
  return analyze(log, model, cfg);
}

inline void write_file_or_throw(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw OutputError("failed while writing '" + path + "'");
}

}  // namespace lognar
