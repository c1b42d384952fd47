#pragma once

// Directly-follows process model with heuristics-style filtering.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "lognarrator/event_log.hpp"
#include "lognarrator/lifecycle.hpp"

namespace lognar {

struct ActivityNode {
  std::int64_t total_count = 0;
  bool operator==(const ActivityNode&) const = default;
};

struct ArcEdge {
  std::int64_t count = 0;
  bool operator==(const ArcEdge&) const = default;
};

using ArcKey = std::pair<std::string, std::string>;

struct ProcessModel {
  std::map<std::string, ActivityNode> activities;
  std::map<ArcKey, ArcEdge> arcs;
  std::map<std::string, std::int64_t> start_counts;
  std::map<std::string, std::int64_t> end_counts;
  // Alphabet of the log the model was built from; survives filtering so
  // replay can distinguish "filtered out" from "never seen".
  std::set<std::string> full_alphabet;

  std::int64_t arc_count(const std::string& from, const std::string& to) const {
    auto it = arcs.find({from, to});
    return it == arcs.end() ? 0 : it->second.count;
  }
  bool operator==(const ProcessModel&) const = default;
};

// Counts one node per execution and one arc per directly-following execution
// pair within a trace. Traces that yield no executions under the abstraction
// (e.g. start-only traces under complete_only) contribute nothing.
inline ProcessModel build_dfg(const EventLog& log, LifecycleAbstraction abstraction) {
  if (log.traces.empty()) throw EmptyLogError("cannot discover a model from an empty log");
  ProcessModel model;
  model.full_alphabet = log.activity_alphabet;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    const auto& ex = te.executions;
    if (ex.empty()) continue;
    for (const auto& e : ex) ++model.activities[e.activity].total_count;
    for (std::size_t i = 0; i + 1 < ex.size(); ++i)
      ++model.arcs[{ex[i].activity, ex[i + 1].activity}].count;
    ++model.start_counts[ex.front().activity];
    ++model.end_counts[ex.back().activity];
  }
  return model;
}

// Classic heuristics dependency: (|a->b| - |b->a|) / (|a->b| + |b->a| + 1).
inline double dependency(const std::string& a, const std::string& b, const ProcessModel& model) {
  if (!model.activities.count(a))
    throw UnknownActivityError("unknown activity '" + a + "'");
  if (!model.activities.count(b))
    throw UnknownActivityError("unknown activity '" + b + "'");
  const double forward = static_cast<double>(model.arc_count(a, b));
  const double backward = static_cast<double>(model.arc_count(b, a));
  return (forward - backward) / (forward + backward + 1.0);
}

struct DependencyThresholds {
  double min_dependency = 0.0;
  std::int64_t min_arc_count = 1;
  std::int64_t min_activity_count = 1;
};

// Keeps activities above the count floor, then arcs that clear both the count
// and the dependency floors (dependency measured on the input model) and whose
// endpoints survived. Start/end counts are restricted to surviving activities.
inline ProcessModel filter_model(const ProcessModel& model, const DependencyThresholds& t) {
  ProcessModel out;
  out.full_alphabet = model.full_alphabet;
  for (const auto& [label, node] : model.activities)
    if (node.total_count >= t.min_activity_count) out.activities[label] = node;
  for (const auto& [key, edge] : model.arcs) {
    if (!out.activities.count(key.first) || !out.activities.count(key.second)) continue;
    if (edge.count < t.min_arc_count) continue;
    if (dependency(key.first, key.second, model) < t.min_dependency) continue;
    out.arcs[key] = edge;
  }
  for (const auto& [label, n] : model.start_counts)
    if (out.activities.count(label)) out.start_counts[label] = n;
  for (const auto& [label, n] : model.end_counts)
    if (out.activities.count(label)) out.end_counts[label] = n;
  return out;
}

}  // namespace lognar
