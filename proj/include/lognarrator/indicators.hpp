#pragma once

// Replay of the log over the discovered model: activity, arc, variant and
// period indicators. Everything downstream (protoform binding, realization)
// reads from the IndicatorSet produced here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lognarrator/duration_stats.hpp"
#include "lognarrator/event_log.hpp"
#include "lognarrator/lifecycle.hpp"
#include "lognarrator/model.hpp"
#include "lognarrator/variants.hpp"

namespace lognar {

struct ActivityStats {
  std::string activity;
  std::int64_t execution_count = 0;
  std::optional<DurationStats> duration;  // present only with lifecycle pairs
  std::vector<double> duration_samples;   // sorted, seconds
  std::map<std::pair<int, int>, std::int64_t> monthly_counts;  // (year, month) -> n
};

struct ArcStats {
  std::string from;
  std::string to;
  std::int64_t traversal_count = 0;
  DurationStats waiting;                // gap from `from` completion to `to` start
  std::vector<double> waiting_samples;  // sorted, seconds
};

struct VariantStats {
  Variant variant;
  double relative_frequency = 0.0;  // in (0, 1]
  DurationStats cycle_time;         // last event minus first event per trace
  std::vector<double> cycle_samples;
};

enum class PeriodMetric { activity_count, activity_mean_duration, arc_mean_waiting };

inline std::string to_string(PeriodMetric m) {
  switch (m) {
    case PeriodMetric::activity_count: return "activity_count";
    case PeriodMetric::activity_mean_duration: return "activity_mean_duration";
    case PeriodMetric::arc_mean_waiting: return "arc_mean_waiting";
  }
  return "?";
}

struct PeriodComparison {
  PeriodMetric metric = PeriodMetric::activity_count;
  // One label; or two labels: (a, b) for whole-log totals, (from, to) for arcs.
  std::vector<std::string> subject;
  TimeWindow window_a, window_b;
  double value_a = 0.0;
  double value_b = 0.0;
  double relative_change = 0.0;  // value_a / value_b - 1
  std::int64_t samples_a = 0;
  std::int64_t samples_b = 0;
  bool whole_log_totals = false;
  std::vector<Diagnostic> warnings;
};

struct MilestoneStats {
  std::vector<std::string> path;
  bool subsequence_mode = true;  // false: exact variant match
  std::int64_t trace_count = 0;
  std::optional<DurationStats> cycle;
  std::vector<double> cycle_samples;
};

struct IndicatorSet {
  std::map<std::string, ActivityStats> activities;
  std::map<ArcKey, ArcStats> arcs;
  std::vector<VariantStats> variants;
  std::vector<PeriodComparison> period_comparisons;
  std::vector<MilestoneStats> milestones;
  TimeWindow log_time_span;
  std::int64_t trace_count = 0;
  std::int64_t stats_bin = kDay;
};

// ---------------------------------------------------------------------------

// Replays each trace over the model. Activities/arcs missing from the
// (possibly filtered) model are skipped for arc and activity statistics;
// trace cycle times always use the raw first/last event. In strict mode a
// log activity absent from the model's build-time alphabet is an error.
inline IndicatorSet replay(const EventLog& log, const ProcessModel& model,
                           LifecycleAbstraction abstraction, bool strict = true) {
  if (log.traces.empty()) throw EmptyLogError("cannot replay an empty log");
  if (strict) {
    for (const auto& act : log.activity_alphabet)
      if (!model.full_alphabet.count(act))
        throw ReplayMismatchError("log activity '" + act +
                                  "' is not in the model's alphabet; was the model "
                                  "discovered from this log?");
  }

  IndicatorSet ind;
  ind.log_time_span = {log.span_begin, log.span_end + 1};  // half-open, inclusive of last
  ind.trace_count = static_cast<std::int64_t>(log.traces.size());
  ind.stats_bin = stats_bin_for_span(log.span_end - log.span_begin);

  std::map<std::string, DurationAccumulator> act_durations;
  std::map<ArcKey, DurationAccumulator> arc_waits;
  std::map<ArcKey, std::int64_t> arc_traversals;
  for (const auto& [label, node] : model.activities) {
    auto& as = ind.activities[label];
    as.activity = label;
  }

  struct VariantAccum {
    Variant variant;
    DurationAccumulator cycle;
  };
  std::map<std::vector<std::string>, VariantAccum> variant_groups;

  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    const auto& ex = te.executions;

    std::vector<std::string> path;
    path.reserve(ex.size());
    for (const auto& e : ex) path.push_back(e.activity);
    auto& vg = variant_groups[path];
    if (vg.variant.trace_count == 0) vg.variant.path = path;
    ++vg.variant.trace_count;
    vg.variant.case_ids.push_back(trace.case_id);
    vg.cycle.add(trace.events.back().timestamp - trace.events.front().timestamp);

    for (const auto& e : ex) {
      auto it = ind.activities.find(e.activity);
      if (it == ind.activities.end()) continue;  // filtered out of the model
      ++it->second.execution_count;
      CivilTime c = civil_from_instant(e.start);
      ++it->second.monthly_counts[{c.year, c.month}];
      if (e.paired) act_durations[e.activity].add(e.duration());
    }
    for (std::size_t i = 0; i + 1 < ex.size(); ++i) {
      ArcKey key{ex[i].activity, ex[i + 1].activity};
      if (!model.arcs.count(key)) continue;
      ++arc_traversals[key];
      // Overlapping executions would yield a negative gap; waiting is >= 0.
      arc_waits[key].add(std::max<Seconds>(0, ex[i + 1].start - ex[i].complete));
    }
  }

  for (auto& [label, as] : ind.activities) {
    auto it = act_durations.find(label);
    if (it != act_durations.end() && !it->second.empty()) {
      as.duration = it->second.finalize(ind.stats_bin);
      as.duration_samples = it->second.sorted_samples();
    }
  }
  for (const auto& [key, edge] : model.arcs) {
    auto wit = arc_waits.find(key);
    if (wit == arc_waits.end() || wit->second.empty()) continue;
    ArcStats as;
    as.from = key.first;
    as.to = key.second;
    as.traversal_count = arc_traversals[key];
    as.waiting = wit->second.finalize(ind.stats_bin);
    as.waiting_samples = wit->second.sorted_samples();
    ind.arcs.emplace(key, std::move(as));
  }

  for (auto& [path, vg] : variant_groups) {
    VariantStats vs;
    vs.variant = std::move(vg.variant);
    vs.relative_frequency =
        static_cast<double>(vs.variant.trace_count) / static_cast<double>(ind.trace_count);
    vs.cycle_time = vg.cycle.finalize(ind.stats_bin);
    vs.cycle_samples = vg.cycle.sorted_samples();
    ind.variants.push_back(std::move(vs));
  }
  std::sort(ind.variants.begin(), ind.variants.end(),
            [](const VariantStats& a, const VariantStats& b) {
              if (a.variant.trace_count != b.variant.trace_count)
                return a.variant.trace_count > b.variant.trace_count;
              return a.variant.path < b.variant.path;
            });
  return ind;
}

// ---------------------------------------------------------------------------
// Period comparisons.

namespace period_detail {

inline void count_metric(const EventLog& log, const std::string& label,
                         LifecycleAbstraction abstraction, const TimeWindow& w,
                         double& value, std::int64_t& samples) {
  std::int64_t n = 0;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    for (const auto& e : te.executions)
      if (e.activity == label && w.contains(e.start)) ++n;
  }
  value = static_cast<double>(n);
  samples = n;
}

inline bool mean_duration_metric(const EventLog& log, const std::string& label,
                                 const TimeWindow& w, double& value, std::int64_t& samples) {
  DurationAccumulator acc;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, LifecycleAbstraction::collapse_pairs);
    for (const auto& e : te.executions)
      if (e.paired && e.activity == label && w.contains(e.start)) acc.add(e.duration());
  }
  if (acc.empty()) return false;
  samples = acc.count();
  double sum = 0;
  for (auto s : acc.samples()) sum += static_cast<double>(s);
  value = sum / static_cast<double>(acc.count());
  return true;
}

inline bool mean_waiting_metric(const EventLog& log, const std::string& from,
                                const std::string& to, LifecycleAbstraction abstraction,
                                const TimeWindow& w, double& value, std::int64_t& samples) {
  DurationAccumulator acc;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    const auto& ex = te.executions;
    for (std::size_t i = 0; i + 1 < ex.size(); ++i)
      if (ex[i].activity == from && ex[i + 1].activity == to && w.contains(ex[i].complete))
        acc.add(std::max<Seconds>(0, ex[i + 1].start - ex[i].complete));
  }
  if (acc.empty()) return false;
  samples = acc.count();
  double sum = 0;
  for (auto s : acc.samples()) sum += static_cast<double>(s);
  value = sum / static_cast<double>(acc.count());
  return true;
}

}  // namespace period_detail

// Compares one indicator between two half-open windows. For activity_count a
// two-label subject counts subject[0] in window_a against subject[1] in
// window_b (whole-log totals use this with both windows spanning the log).
inline PeriodComparison compare_periods(const EventLog& log, PeriodMetric metric,
                                        const std::vector<std::string>& subject,
                                        const TimeWindow& window_a, const TimeWindow& window_b,
                                        LifecycleAbstraction abstraction =
                                            LifecycleAbstraction::complete_only) {
  if (!window_a.valid() || !window_b.valid())
    throw InvalidArgumentError("period comparison windows must satisfy begin < end");
  if (subject.empty()) throw InvalidArgumentError("period comparison needs a subject");

  PeriodComparison pc;
  pc.metric = metric;
  pc.subject = subject;
  pc.window_a = window_a;
  pc.window_b = window_b;
  if (window_a.overlaps(window_b) && !(window_a == window_b))
    pc.warnings.push_back({"compare", "comparison windows overlap"});

  switch (metric) {
    case PeriodMetric::activity_count: {
      const std::string& a = subject[0];
      const std::string& b = subject.size() > 1 ? subject[1] : subject[0];
      if (!log.activity_alphabet.count(a))
        throw UnknownActivityError("unknown activity '" + a + "'");
      if (!log.activity_alphabet.count(b))
        throw UnknownActivityError("unknown activity '" + b + "'");
      period_detail::count_metric(log, a, abstraction, window_a, pc.value_a, pc.samples_a);
      period_detail::count_metric(log, b, abstraction, window_b, pc.value_b, pc.samples_b);
      break;
    }
    case PeriodMetric::activity_mean_duration: {
      const std::string& label = subject[0];
      if (!log.activity_alphabet.count(label))
        throw UnknownActivityError("unknown activity '" + label + "'");
      if (!period_detail::mean_duration_metric(log, label, window_a, pc.value_a, pc.samples_a) ||
          !period_detail::mean_duration_metric(log, label, window_b, pc.value_b, pc.samples_b))
        throw UndefinedComparisonError("no duration samples for '" + label +
                                       "' in one of the compared windows");
      break;
    }
    case PeriodMetric::arc_mean_waiting: {
      if (subject.size() < 2)
        throw InvalidArgumentError("arc_mean_waiting needs a (from,to) subject");
      if (!period_detail::mean_waiting_metric(log, subject[0], subject[1], abstraction,
                                              window_a, pc.value_a, pc.samples_a) ||
          !period_detail::mean_waiting_metric(log, subject[0], subject[1], abstraction,
                                              window_b, pc.value_b, pc.samples_b))
        throw UndefinedComparisonError("no arc traversals for '" + subject[0] + " -> " +
                                       subject[1] + "' in one of the compared windows");
      break;
    }
  }
  if (pc.value_b == 0.0)
    throw UndefinedComparisonError("comparison base value is zero for subject '" +
                                   subject[0] + "'");
  pc.relative_change = pc.value_a / pc.value_b - 1.0;
  return pc;
}

// Whole-log comparison of two activity totals: count(a) / count(b) - 1.
inline PeriodComparison compare_activity_totals(const EventLog& log, const std::string& a,
                                                const std::string& b,
                                                LifecycleAbstraction abstraction =
                                                    LifecycleAbstraction::complete_only) {
  TimeWindow whole{log.span_begin, log.span_end + 1};
  PeriodComparison pc = compare_periods(log, PeriodMetric::activity_count, {a, b}, whole,
                                        whole, abstraction);
  pc.whole_log_totals = true;
  pc.warnings.clear();  // identical windows are intentional here
  return pc;
}

// ---------------------------------------------------------------------------
// Milestone (containment) cycle statistics.

namespace milestone_detail {
inline bool contains_subsequence(const std::vector<std::string>& seq,
                                 const std::vector<std::string>& sub) {
  std::size_t j = 0;
  for (const auto& s : seq) {
    if (j < sub.size() && s == sub[j]) ++j;
    if (j == sub.size()) return true;
  }
  return j == sub.size();
}
}  // namespace milestone_detail

// Cycle-time statistics over traces that contain `path` (as an in-order
// subsequence, or as the exact variant when subsequence_mode is false).
inline MilestoneStats milestone_cycle_stats(const EventLog& log,
                                            const std::vector<std::string>& path,
                                            bool subsequence_mode,
                                            LifecycleAbstraction abstraction,
                                            std::int64_t stats_bin = kDay) {
  if (path.empty()) throw InvalidArgumentError("milestone path must not be empty");
  MilestoneStats ms;
  ms.path = path;
  ms.subsequence_mode = subsequence_mode;
  DurationAccumulator acc;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    std::vector<std::string> seq;
    seq.reserve(te.executions.size());
    for (const auto& e : te.executions) seq.push_back(e.activity);
    bool match = subsequence_mode ? milestone_detail::contains_subsequence(seq, path)
                                  : seq == path;
    if (!match) continue;
    ++ms.trace_count;
    acc.add(trace.events.back().timestamp - trace.events.front().timestamp);
  }
  if (!acc.empty()) {
    ms.cycle = acc.finalize(stats_bin);
    ms.cycle_samples = acc.sorted_samples();
  }
  return ms;
}

// ---------------------------------------------------------------------------
// IndicatorSet JSON dump (aggregates only; sample arrays are in-memory data
// for protoform evaluation and are not serialized).

inline nlohmann::json duration_stats_to_json(const DurationStats& st) {
  return {{"count", st.count},   {"mean", st.mean},       {"median", st.median},
          {"mode", st.mode},     {"std_dev", st.std_dev}, {"min", st.min},
          {"max", st.max}};
}

inline nlohmann::json window_to_json(const TimeWindow& w) {
  return {{"begin", format_iso_utc(w.begin)}, {"end", format_iso_utc(w.end)}};
}

inline nlohmann::json indicator_set_to_json(const IndicatorSet& ind) {
  nlohmann::json activities;
  for (const auto& [label, as] : ind.activities) {
    nlohmann::json a;
    a["execution_count"] = as.execution_count;
    if (as.duration) a["duration"] = duration_stats_to_json(*as.duration);
    nlohmann::json monthly;
    for (const auto& [ym, n] : as.monthly_counts) {
      char key[8];
      std::snprintf(key, sizeof(key), "%04d-%02d", ym.first, ym.second);
      monthly[key] = n;
    }
    a["monthly_counts"] = std::move(monthly);
    activities[label] = std::move(a);
  }

  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [key, as] : ind.arcs)
    arcs.push_back({{"from", as.from},
                    {"to", as.to},
                    {"traversal_count", as.traversal_count},
                    {"waiting", duration_stats_to_json(as.waiting)}});

  nlohmann::json variants = nlohmann::json::array();
  for (const auto& vs : ind.variants)
    variants.push_back({{"path", vs.variant.path},
                        {"trace_count", vs.variant.trace_count},
                        {"relative_frequency", vs.relative_frequency},
                        {"cycle_time", duration_stats_to_json(vs.cycle_time)}});

  nlohmann::json comparisons = nlohmann::json::array();
  for (const auto& pc : ind.period_comparisons) {
    nlohmann::json c;
    c["metric"] = to_string(pc.metric);
    c["subject"] = pc.subject;
    c["window_a"] = window_to_json(pc.window_a);
    c["window_b"] = window_to_json(pc.window_b);
    c["value_a"] = pc.value_a;
    c["value_b"] = pc.value_b;
    c["relative_change"] = pc.relative_change;
    c["whole_log_totals"] = pc.whole_log_totals;
    comparisons.push_back(std::move(c));
  }

  nlohmann::json milestones = nlohmann::json::array();
  for (const auto& ms : ind.milestones) {
    nlohmann::json m;
    m["path"] = ms.path;
    m["mode"] = ms.subsequence_mode ? "subsequence" : "exact";
    m["trace_count"] = ms.trace_count;
    if (ms.cycle) m["cycle_time"] = duration_stats_to_json(*ms.cycle);
    milestones.push_back(std::move(m));
  }

  return {{"schema", "lognarrator-indicators-v1"},
          {"log_time_span", window_to_json(ind.log_time_span)},
          {"trace_count", ind.trace_count},
          {"activities", std::move(activities)},
          {"arcs", std::move(arcs)},
          {"variants", std::move(variants)},
          {"period_comparisons", std::move(comparisons)},
          {"milestones", std::move(milestones)}};
}

inline std::string indicator_set_to_json_text(const IndicatorSet& ind) {
  return indicator_set_to_json(ind).dump(2) + "\n";
}

}  // namespace lognar
